//! Digraph automorphism groups.
//!
//! The solver returns a base and strong generating set directly from the
//! search tree, so order and membership come without a separate sifting pass.

mod partition;
mod permgroup;
mod search;

pub use partition::{refine, Partition, PartitionError};
pub use permgroup::{orbits_of, GuardExceeded, PermutationGroup};
pub use search::{Solution, SolveOptions, Solver, SolverConfig, SolverError};

use num_bigint::BigUint;

use crate::digraph::{Digraph, HaarDigraph};
use crate::perm::Perm;

/// Default cap on the number of elements enumerated from a group.
pub const ENUMERATION_GUARD: u64 = 200_000;

/// Automorphisms preserving arcs, and colors when present.
pub fn automorphism_group(d: &Digraph) -> Result<PermutationGroup, SolverError> {
    let opts = SolveOptions { respect_colors: true, known: &[] };
    Ok(Solver::default().solve(d, &opts)?.group)
}

/// Whether the arc-preserving automorphisms (colors ignored) act transitively.
pub fn is_vertex_transitive(d: &Digraph) -> Result<bool, SolverError> {
    let opts = SolveOptions { respect_colors: false, known: &[] };
    Ok(Solver::default().solve(d, &opts)?.group.is_transitive())
}

/// `A⁺` together with the full group it sits in.
#[derive(Clone, Debug)]
pub struct ColorStabilizer {
    /// Automorphisms fixing each part setwise.
    pub aplus: PermutationGroup,
    /// All arc-preserving automorphisms.
    pub full: PermutationGroup,
    /// `|full : aplus|`.
    pub index: BigUint,
}

/// Solves the Haar digraph with and without the bipartition coloring.
pub fn color_stabilizer(h: &HaarDigraph<'_>) -> Result<ColorStabilizer, SolverError> {
    color_stabilizer_with(h, &Solver::default())
}

pub fn color_stabilizer_with(h: &HaarDigraph<'_>, solver: &Solver) -> Result<ColorStabilizer, SolverError> {
    let rho = h.translation_generators();
    let aplus = solver.solve(&h.digraph, &SolveOptions { respect_colors: true, known: &rho })?.group;
    let full = solver.solve(&h.digraph, &SolveOptions { respect_colors: false, known: &rho })?.group;
    let index = full.order() / aplus.order();
    Ok(ColorStabilizer { aplus, full, index })
}

/// `{a ∈ A | a⁻¹ρ_h a ∈ ρ(G) for every listed ρ_h}`, by enumerating `A`.
///
/// `g_image` must generate the regular copy `ρ(G)`.
pub fn normalizer_of_regular_image(
    a: &PermutationGroup,
    g_image: &[Perm],
    guard: u64,
) -> Result<PermutationGroup, GuardExceeded> {
    let regular = PermutationGroup::from_generators(a.degree(), g_image.to_vec());
    let mut normalizer = PermutationGroup::from_generators(a.degree(), Vec::new());
    a.for_each_element(guard, |x| {
        if normalizer.contains(x) {
            return;
        }
        let inv = x.inverse();
        if g_image.iter().all(|r| regular.contains(&inv.then(r).then(x))) {
            normalizer.push_generator(x.clone());
        }
    })?;
    Ok(normalizer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{haar_digraph, right_translation};
    use crate::group::{build_group, Subset};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn checked() -> Solver {
        Solver::new(SolverConfig { cross_check: true, ..SolverConfig::default() })
    }

    fn order(d: &Digraph) -> u64 {
        let s = checked().solve(d, &SolveOptions { respect_colors: true, known: &[] }).unwrap();
        for g in s.group.generators() {
            assert!(d.is_automorphism(g, true));
        }
        s.group.order_u64().unwrap()
    }

    /// Independent oracle: every permutation tested against the arc set.
    fn brute_force_order(d: &Digraph) -> u64 {
        fn rec(d: &Digraph, img: &mut Vec<u32>, used: &mut [bool], k: usize) -> u64 {
            let n = d.n_vertices();
            if k == n {
                return u64::from(d.is_automorphism(&Perm::from_images(img.clone()).unwrap(), true));
            }
            let mut total = 0;
            for v in 0..n {
                if !used[v] {
                    // partial check: arcs among already-mapped vertices
                    let ok = (0..=k).all(|u| {
                        let (iu, ik) = (if u == k { v as u32 } else { img[u] }, v as u32);
                        d.has_arc(u as u32, k as u32) == d.has_arc(iu, ik)
                            && d.has_arc(k as u32, u as u32) == d.has_arc(ik, iu)
                    });
                    if ok {
                        used[v] = true;
                        img.push(v as u32);
                        total += rec(d, img, used, k + 1);
                        img.pop();
                        used[v] = false;
                    }
                }
            }
            total
        }
        rec(d, &mut Vec::new(), &mut vec![false; d.n_vertices()], 0)
    }

    #[test]
    fn directed_cycles() {
        for n in 1..12 {
            let d = Digraph::new(n, (0..n as u32).map(|i| (i, (i + 1) % n as u32))).unwrap();
            assert_eq!(order(&d), n as u64);
            assert!(is_vertex_transitive(&d).unwrap());
        }
    }

    #[test]
    fn complete_digraph_k4() {
        let arcs = (0..4).flat_map(|u| (0..4).filter(move |&v| v != u).map(move |v| (u, v)));
        assert_eq!(order(&Digraph::new(4, arcs).unwrap()), 24);
    }

    #[test]
    fn arcless_digraph_is_symmetric_group() {
        let d = Digraph::new(7, []).unwrap();
        assert_eq!(order(&d), 5040);
    }

    #[test]
    fn quaternion_haar_is_regular() {
        let g = build_group("q:8").unwrap();
        let h = haar_digraph(&g, &g.parse_subset("1,a,b").unwrap(), &g.parse_subset("a^2,b^3,ab").unwrap());
        let plain = h.digraph.without_colors();
        assert_eq!(order(&plain), 8);
        assert_eq!(order(&h.digraph), 8);
    }

    #[test]
    fn random_digraphs_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..120 {
            let n = rng.gen_range(1..=7);
            let p = rng.gen_range(0.1..0.9);
            let arcs: Vec<(u32, u32)> = (0..n as u32)
                .flat_map(|u| (0..n as u32).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let d = Digraph::new(n, arcs).unwrap();
            assert_eq!(order(&d), brute_force_order(&d), "{}", d.to_edge_list());
        }
    }

    #[test]
    fn vertex_transitivity_of_haar() {
        let g = build_group("sym:3").unwrap();
        let s = g.parse_subset("1,a").unwrap();
        assert!(is_vertex_transitive(&haar_digraph(&g, &s, &s).digraph).unwrap());
        let t = g.parse_subset("b").unwrap();
        assert!(!is_vertex_transitive(&haar_digraph(&g, &s, &t).digraph).unwrap());
    }

    #[test]
    fn color_stabilizer_index() {
        let g = build_group("cyclic:5").unwrap();
        let s = g.parse_subset("1,a").unwrap();
        let cs = color_stabilizer(&haar_digraph(&g, &s, &s)).unwrap();
        assert_eq!(cs.index, BigUint::from(2u32));
        let empty = Subset::empty(3);
        let g3 = build_group("cyclic:3").unwrap();
        let cs = color_stabilizer(&haar_digraph(&g3, &empty, &empty)).unwrap();
        assert_eq!(cs.aplus.order_u64(), Some(36));
        assert_eq!(cs.full.order_u64(), Some(720));
    }

    #[test]
    fn normalizer_of_self_and_hdr() {
        let g = build_group("q:8").unwrap();
        let h = haar_digraph(&g, &g.parse_subset("1,a,b").unwrap(), &g.parse_subset("a^2,b^3,ab").unwrap());
        let rho = h.translation_generators();
        let regular = PermutationGroup::from_generators(16, rho.clone());
        let n = normalizer_of_regular_image(&regular, &rho, ENUMERATION_GUARD).unwrap();
        assert_eq!(n.order_u64(), Some(8));
        let aut = automorphism_group(&h.digraph.without_colors()).unwrap();
        let n = normalizer_of_regular_image(&aut, &rho, ENUMERATION_GUARD).unwrap();
        assert_eq!(n.order_u64(), Some(8));
        assert!(normalizer_of_regular_image(&aut, &rho, 4).is_err());
    }

    #[test]
    fn translations_lie_in_aut() {
        let g = build_group("dihedral:12").unwrap();
        let h = haar_digraph(&g, &g.parse_subset("1,a,b").unwrap(), &g.parse_subset("a^3,ab").unwrap());
        let aut = automorphism_group(&h.digraph.without_colors()).unwrap();
        for x in g.elements() {
            assert!(aut.contains(&right_translation(&g, x)));
        }
        assert_eq!(aut.order_u64().unwrap() % 12, 0);
    }

    #[test]
    fn deterministic_generators() {
        let g = build_group("alt:4").unwrap();
        let s = g.parse_subset("1,a").unwrap();
        let d = haar_digraph(&g, &s, &s).digraph.without_colors();
        let a = automorphism_group(&d).unwrap();
        let b = automorphism_group(&d).unwrap();
        assert_eq!(a.generators(), b.generators());
    }

    #[test]
    fn known_automorphisms_are_validated() {
        let d = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let bad = Perm::from_cycles(3, &[&[0, 2]]).unwrap();
        let r = Solver::default().solve(&d, &SolveOptions { respect_colors: true, known: &[bad] });
        assert_eq!(r.unwrap_err(), SolverError::BadKnown(0));
    }

    #[test]
    fn caps_are_reported() {
        let d = Digraph::new(600, []).unwrap();
        assert!(matches!(automorphism_group(&d), Err(SolverError::VertexCap { .. })));
        let tiny = Solver::new(SolverConfig { node_budget: 3, ..SolverConfig::default() });
        let d = Digraph::new(8, []).unwrap();
        let r = tiny.solve(&d, &SolveOptions::default());
        assert!(matches!(r, Err(SolverError::Budget { .. })));
    }
}
