use super::{Digraph, Vertex};
use crate::group::{Elem, FiniteGroup, GroupAutomorphism, Subset};
use crate::perm::Perm;

/// `Cay(G,R)`: vertices `G`, arcs `(g, rg)`.
pub fn cayley_digraph(g: &FiniteGroup, r: &Subset) -> Digraph {
    let arcs = g.elements().flat_map(|x| r.iter().map(move |s| (x, g.mul(s, x))));
    Digraph::new(g.order(), arcs).expect("indices are in range")
}

/// Which copy of `G` a Haar vertex lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Zero,
    One,
}

/// `Haar(G,S,T)` on `G₀ ∪ G₁`, with `g₀ = g` and `g₁ = n + g`.
///
/// Arcs are `(g₀, (sg)₁)` for `s ∈ S` and `(g₁, (tg)₀)` for `t ∈ T`. The
/// digraph carries the bipartition coloring (0 on `G₀`, 1 on `G₁`).
#[derive(Clone, Debug)]
pub struct HaarDigraph<'g> {
    pub group: &'g FiniteGroup,
    pub s: Subset,
    pub t: Subset,
    pub digraph: Digraph,
}

pub fn haar_digraph<'g>(g: &'g FiniteGroup, s: &Subset, t: &Subset) -> HaarDigraph<'g> {
    let n = g.order() as Vertex;
    let arcs = g.elements().flat_map(|x| {
        let zero = s.iter().map(move |a| (x, n + g.mul(a, x)));
        let one = t.iter().map(move |b| (n + x, g.mul(b, x)));
        zero.chain(one)
    });
    let colors = (0..2 * n).map(|v| u32::from(v >= n)).collect();
    let digraph = Digraph::new(2 * n as usize, arcs)
        .and_then(|d| d.with_colors(colors))
        .expect("indices are in range");
    HaarDigraph { group: g, s: s.clone(), t: t.clone(), digraph }
}

impl HaarDigraph<'_> {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn vertex(&self, x: Elem, side: Side) -> Vertex {
        match side {
            Side::Zero => x,
            Side::One => self.group.order() as Vertex + x,
        }
    }

    pub fn locate(&self, v: Vertex) -> (Elem, Side) {
        let n = self.group.order() as Vertex;
        if v < n {
            (v, Side::Zero)
        } else {
            (v - n, Side::One)
        }
    }

    /// The vertex `g_{1−i}` paired with `g_i`.
    pub fn partner(&self, v: Vertex) -> Vertex {
        let n = self.group.order() as Vertex;
        if v < n {
            v + n
        } else {
            v - n
        }
    }

    /// `ρ_h` for each named generator `h` of `G`.
    pub fn translation_generators(&self) -> Vec<Perm> {
        self.group.generators().iter().map(|&h| right_translation(self.group, h)).collect()
    }
}

/// `ρ_h : g_i ↦ (gh)_i` on the Haar vertex set.
pub fn right_translation(g: &FiniteGroup, h: Elem) -> Perm {
    let n = g.order() as Vertex;
    let half: Vec<Vertex> = g.elements().map(|x| g.mul(x, h)).collect();
    let images = half.iter().copied().chain(half.iter().map(|&x| x + n)).collect();
    Perm::from_images_unchecked(images)
}

/// `φ′ : g_i ↦ (g^φ)_i` for a permutation `φ` of the elements of `G`.
pub fn lift_permutation(g: &FiniteGroup, phi: &Perm) -> Perm {
    let n = g.order();
    assert_eq!(phi.degree(), n, "φ must permute the group elements");
    let images = phi
        .images()
        .iter()
        .copied()
        .chain(phi.images().iter().map(|&x| x + n as Vertex))
        .collect();
    Perm::from_images_unchecked(images)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    /// `δ_{α,x}`: `g₀ ↦ (gᵅ)₀`, `g₁ ↦ (x gᵅ)₁`.
    Delta,
    /// `σ_{α,y}`: `g₀ ↦ (gᵅ)₁`, `g₁ ↦ (y gᵅ)₀`.
    Sigma,
}

/// A `δ_{α,c}` or `σ_{α,c}` map together with its parameters.
#[derive(Clone, Debug)]
pub struct SpecialMap {
    pub kind: MapKind,
    pub alpha: GroupAutomorphism,
    pub c: Elem,
    pub perm: Perm,
}

pub fn special_map(g: &FiniteGroup, alpha: &GroupAutomorphism, kind: MapKind, c: Elem) -> SpecialMap {
    let n = g.order() as Vertex;
    let (shift0, shift1) = match kind {
        MapKind::Delta => (0, n),
        MapKind::Sigma => (n, 0),
    };
    let zero = g.elements().map(|x| alpha.apply(x) + shift0);
    let one = g.elements().map(|x| g.mul(c, alpha.apply(x)) + shift1);
    let perm = Perm::from_images_unchecked(zero.chain(one).collect());
    SpecialMap { kind, alpha: alpha.clone(), c, perm }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{automorphisms, build_group};

    #[test]
    fn directed_triangle() {
        let g = build_group("cyclic:3").unwrap();
        let a = g.parse_element("a").unwrap();
        let d = cayley_digraph(&g, &Subset::from_elems(3, [a]));
        let a2 = g.mul(a, a);
        let arcs: Vec<_> = d.arcs().collect();
        let mut expected = vec![(0, a), (a, a2), (a2, 0)];
        expected.sort();
        assert_eq!(arcs, expected);
    }

    #[test]
    fn empty_connection_set_is_arcless() {
        let g = build_group("sym:3").unwrap();
        assert_eq!(cayley_digraph(&g, &Subset::empty(6)).arc_count(), 0);
    }

    #[test]
    fn inverse_closed_set_gives_symmetric_digraph() {
        let g = build_group("cyclic:4").unwrap();
        let d = cayley_digraph(&g, &g.parse_subset("a,a^3").unwrap());
        assert_eq!(d.arc_count(), 8);
        assert!(d.arcs().all(|(u, v)| d.has_arc(v, u)));
    }

    #[test]
    fn haar_over_z2() {
        let g = build_group("cyclic:2").unwrap();
        let one = Subset::from_elems(2, [0]);
        let h = haar_digraph(&g, &one, &one);
        // 1₀=0, a₀=1, 1₁=2, a₁=3
        assert_eq!(h.digraph.arcs().collect::<Vec<_>>(), vec![(0, 2), (1, 3), (2, 0), (3, 1)]);
        assert_eq!(h.digraph.neighborhoods(0).unwrap(), (vec![2], vec![2]));
        assert_eq!(h.digraph.colors().unwrap(), [0, 0, 1, 1]);
    }

    #[test]
    fn haar_over_z3_out_neighbors() {
        let g = build_group("cyclic:3").unwrap();
        let a = g.parse_element("a").unwrap();
        let h = haar_digraph(&g, &g.parse_subset("1,a").unwrap(), &g.parse_subset("a").unwrap());
        for x in g.elements() {
            let mut want = vec![h.vertex(x, Side::One), h.vertex(g.mul(a, x), Side::One)];
            want.sort();
            assert_eq!(h.digraph.out_neighbors(x), want.as_slice());
            assert_eq!(h.digraph.out_neighbors(h.vertex(x, Side::One)), [g.mul(a, x)]);
        }
    }

    #[test]
    fn quaternion_example_is_3_regular() {
        let g = build_group("q:8").unwrap();
        let h = haar_digraph(&g, &g.parse_subset("1,a,b").unwrap(), &g.parse_subset("a^2,b^3,ab").unwrap());
        assert_eq!(h.digraph.n_vertices(), 16);
        for v in 0..16 {
            assert_eq!(h.digraph.out_neighbors(v).len(), 3);
            assert_eq!(h.digraph.in_neighbors(v).len(), 3);
        }
    }

    #[test]
    fn translations_are_semiregular_automorphisms() {
        let g = build_group("dihedral:10").unwrap();
        let h = haar_digraph(&g, &g.parse_subset("1,a,b").unwrap(), &g.parse_subset("a^2,ab").unwrap());
        for x in g.elements() {
            let rho = right_translation(&g, x);
            assert!(h.digraph.is_automorphism(&rho, true));
            if x != 0 {
                assert!((0..20).all(|v| !rho.fixes(v)));
            }
        }
    }

    #[test]
    fn haar_zero_side_doubles_cayley() {
        let g = build_group("alt:4").unwrap();
        let s = g.parse_subset("a,b,ab").unwrap();
        let t = g.parse_subset("b").unwrap();
        let h = haar_digraph(&g, &s, &t);
        let c = cayley_digraph(&g, &s);
        let n = g.order() as u32;
        for x in 0..n {
            for y in 0..n {
                assert_eq!(h.digraph.has_arc(x, n + y), c.has_arc(x, y));
            }
        }
    }

    #[test]
    fn lifts_and_special_maps() {
        let g = build_group("cyclic:5").unwrap();
        assert!(lift_permutation(&g, &Perm::identity(5)).is_identity());
        let h = g.parse_element("a^2").unwrap();
        let rho: Vec<u32> = g.elements().map(|x| g.mul(x, h)).collect();
        assert_eq!(lift_permutation(&g, &Perm::from_images(rho).unwrap()), right_translation(&g, h));
        let id = GroupAutomorphism::identity(5);
        assert!(special_map(&g, &id, MapKind::Delta, 0).perm.is_identity());
        let swap = special_map(&g, &id, MapKind::Sigma, 0).perm;
        assert!((0..5).all(|v| swap.apply(v) == v + 5 && swap.apply(v + 5) == v));
    }

    #[test]
    fn sigma_swap_preserves_haar_s_s() {
        let g = build_group("sym:3").unwrap();
        let s = g.parse_subset("1,a,b").unwrap();
        let h = haar_digraph(&g, &s, &s);
        let swap = special_map(&g, &GroupAutomorphism::identity(6), MapKind::Sigma, 0);
        assert!(h.digraph.is_automorphism(&swap.perm, false));
        assert!(!h.digraph.is_automorphism(&swap.perm, true));
    }

    #[test]
    fn sigma_condition_gives_automorphism() {
        // whenever Sᵅ = y⁻¹T and Tᵅ = Sy the map σ_{α,y} is an automorphism
        let g = build_group("dihedral:8").unwrap();
        let auts = automorphisms(&g).unwrap();
        let s = g.parse_subset("1,a").unwrap();
        let mut hits = 0;
        for y in g.elements() {
            for alpha in &auts {
                // T := y·Sᵅ makes Sᵅ = y⁻¹T hold; keep pairs where Tᵅ = Sy too
                let t = s.image(alpha).left_mul(&g, y);
                if t.image(alpha) != s.right_mul(&g, y) {
                    continue;
                }
                hits += 1;
                let h = haar_digraph(&g, &s, &t);
                assert!(h.digraph.is_automorphism(&special_map(&g, alpha, MapKind::Sigma, y).perm, false));
            }
        }
        assert!(hits > 0);
    }

    #[test]
    fn delta_normalizes_translations() {
        let g = build_group("q:8").unwrap();
        let auts = automorphisms(&g).unwrap();
        let translations: Vec<Perm> = g.elements().map(|h| right_translation(&g, h)).collect();
        for alpha in auts.iter().step_by(5) {
            for x in g.elements() {
                let d = special_map(&g, alpha, MapKind::Delta, x).perm;
                let dinv = d.inverse();
                for rho in &translations {
                    let conj = dinv.then(rho).then(&d);
                    assert!(translations.contains(&conj));
                }
            }
        }
    }
}
