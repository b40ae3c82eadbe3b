//! Recognizing the groups that need special handling, and locating the
//! named generators of the hardcoded connection sets inside a given table.

use crate::group::{Elem, FiniteGroup, Subset};

/// `m` when `G ≅ ℤ₂^m`.
pub fn elementary_abelian_rank(g: &FiniteGroup) -> Option<u32> {
    let n = g.order();
    (n.is_power_of_two() && g.is_elementary_abelian_2()).then(|| n.trailing_zeros())
}

/// Order 8 with a single involution and no element of order 8.
pub fn is_quaternion8(g: &FiniteGroup) -> bool {
    g.order() == 8
        && g.elements().filter(|&x| g.element_order(x) == 2).count() == 1
        && g.elements().all(|x| g.element_order(x) != 8)
}

/// Order 9 with every non-identity element of order 3.
pub fn is_z3_squared(g: &FiniteGroup) -> bool {
    g.order() == 9 && g.elements().skip(1).all(|x| g.element_order(x) == 3)
}

/// `ℤ₂²` and `ℤ₂³`, the groups whose every `(S,T)` pair fails.
///
/// `ℤ₁`, `ℤ₂` and `ℤ₃` are not listed: they do have HDRs, for instance
/// `Haar(ℤ₃, {1}, {1,a})`, and synthesis finds them by search.
pub fn admits_no_hdr(g: &FiniteGroup) -> bool {
    matches!(elementary_abelian_rank(g), Some(2 | 3))
}

/// `Q₈, ℤ₂², ℤ₂³, ℤ₂⁴, ℤ₃²`.
pub fn admits_no_drr(g: &FiniteGroup) -> bool {
    matches!(elementary_abelian_rank(g), Some(2..=4)) || is_quaternion8(g) || is_z3_squared(g)
}

/// A basis of `G ≅ ℤ₂^m`, preferring the named generators.
pub fn elementary_basis(g: &FiniteGroup) -> Vec<Elem> {
    let mut basis = Vec::new();
    let mut span = vec![0];
    for x in g.generators().iter().copied().chain(g.elements()) {
        if !span.contains(&x) {
            basis.push(x);
            span = g.generated_subgroup(&basis);
        }
    }
    basis
}

/// `a, b` with `o(a) = 4`, `b² = a²`, `b⁻¹ab = a⁻¹`, preferring the named generators.
fn quaternion_pair(g: &FiniteGroup) -> Option<(Elem, Elem)> {
    let ok = |a: Elem, b: Elem| {
        g.element_order(a) == 4
            && g.element_order(b) == 4
            && g.mul(b, b) == g.mul(a, a)
            && g.mul(g.mul(g.inv(b), a), b) == g.inv(a)
            && g.generated_subgroup(&[a, b]).len() == g.order()
    };
    if let [a, b] = *g.generators() {
        if ok(a, b) {
            return Some((a, b));
        }
    }
    g.elements().flat_map(|a| g.elements().map(move |b| (a, b))).find(|&(a, b)| ok(a, b))
}

/// `a, b` of order 3 generating `ℤ₃²`, preferring the named generators.
fn z3_pair(g: &FiniteGroup) -> Option<(Elem, Elem)> {
    let ok = |a: Elem, b: Elem| a != 0 && g.generated_subgroup(&[a, b]).len() == 9;
    if let [a, b] = *g.generators() {
        if ok(a, b) {
            return Some((a, b));
        }
    }
    g.elements().flat_map(|a| g.elements().map(move |b| (a, b))).find(|&(a, b)| ok(a, b))
}

/// The product of `basis[i]` over the listed indices, left to right.
fn word(g: &FiniteGroup, basis: &[Elem], letters: &[u8]) -> Elem {
    letters.iter().fold(g.identity(), |acc, &i| g.mul(acc, basis[i as usize]))
}

fn set(g: &FiniteGroup, basis: &[Elem], words: &[&[u8]]) -> Subset {
    Subset::from_elems(g.order(), words.iter().map(|w| word(g, basis, w)))
}

/// The fixed `(S,T)` for `Q₈`, `ℤ₃²`, `ℤ₂⁴` and `ℤ₂⁵`, written over generators
/// located in `g`.
pub fn hardcoded_sets(g: &FiniteGroup) -> Option<(Subset, Subset)> {
    if is_quaternion8(g) {
        let (a, b) = quaternion_pair(g)?;
        let basis = [a, b];
        // {1,a,b}, {a²,b³,ab}
        return Some((set(g, &basis, &[&[], &[0], &[1]]), set(g, &basis, &[&[0, 0], &[1, 1, 1], &[0, 1]])));
    }
    if is_z3_squared(g) {
        let (a, b) = z3_pair(g)?;
        let basis = [a, b];
        // {1,a,b}, {a,b²,ab}
        return Some((set(g, &basis, &[&[], &[0], &[1]]), set(g, &basis, &[&[0], &[1, 1], &[0, 1]])));
    }
    match elementary_abelian_rank(g) {
        Some(4) => {
            let basis = elementary_basis(g);
            // {1,a,b,c,d,ab}, {1,a,c,bd,abc,bcd}
            let s = set(g, &basis, &[&[], &[0], &[1], &[2], &[3], &[0, 1]]);
            let t = set(g, &basis, &[&[], &[0], &[2], &[1, 3], &[0, 1, 2], &[1, 2, 3]]);
            Some((s, t))
        }
        Some(5) => {
            let basis = elementary_basis(g);
            // {1,a1,a2,a3,a4,a1a2,a5}, {1,a1,a3,a2a4,a1a2a3,a2a3a4,a5}
            let s = set(g, &basis, &[&[], &[0], &[1], &[2], &[3], &[0, 1], &[4]]);
            let t = set(g, &basis, &[&[], &[0], &[2], &[1, 3], &[0, 1, 2], &[1, 2, 3], &[4]]);
            Some((s, t))
        }
        _ => None,
    }
}

/// `R` and `L` for `ℤ₂^m`, `m ≥ 6`: `R` is the basis, the consecutive
/// products `aᵢaᵢ₊₁`, and `a₁a₂a_{m−2}a_{m−1}`, `a₁a₂a_{m−1}a_m`; `L` is the
/// least `(2m+1)`-subset of `⟨a₂,…,a_m⟩∖(R∪{1})`.
pub fn elementary_abelian_sets(g: &FiniteGroup) -> Option<(Subset, Subset)> {
    let m = elementary_abelian_rank(g)? as usize;
    if m < 6 {
        return None;
    }
    let basis = elementary_basis(g);
    let mut words: Vec<Vec<u8>> = (0..m as u8).map(|i| vec![i]).collect();
    words.extend((0..m as u8 - 1).map(|i| vec![i, i + 1]));
    let m8 = m as u8;
    words.push(vec![0, 1, m8 - 3, m8 - 2]);
    words.push(vec![0, 1, m8 - 2, m8 - 1]);
    let refs: Vec<&[u8]> = words.iter().map(Vec::as_slice).collect();
    let r = set(g, &basis, &refs);
    let h = g.generated_subgroup(&basis[1..]);
    let mut pool: Vec<Elem> = h.into_iter().filter(|&x| x != 0 && !r.contains(x)).collect();
    pool.sort_unstable();
    let size = 2 * m + 1;
    (pool.len() >= size).then(|| (r, Subset::from_elems(g.order(), pool[..size].iter().copied())))
}

/// `|⟨a₂,…,a_m⟩ ∖ R| = 2^{m−1} − (2m − 2)`, the count that makes `L` exist.
pub fn elementary_abelian_pool_size(m: u32) -> u64 {
    (1u64 << (m - 1)) - (2 * u64::from(m) - 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    #[test]
    fn recognizes_special_groups() {
        assert!(is_quaternion8(&build_group("q:8").unwrap()));
        assert!(!is_quaternion8(&build_group("dihedral:8").unwrap()));
        assert!(!is_quaternion8(&build_group("product:cyclic:2,cyclic:4").unwrap()));
        assert!(is_z3_squared(&build_group("product:cyclic:3,cyclic:3").unwrap()));
        assert!(!is_z3_squared(&build_group("cyclic:9").unwrap()));
        assert_eq!(elementary_abelian_rank(&build_group("product:cyclic:2,cyclic:2,cyclic:2").unwrap()), Some(3));
        assert_eq!(elementary_abelian_rank(&build_group("cyclic:4").unwrap()), None);
        assert_eq!(elementary_abelian_rank(&build_group("cyclic:1").unwrap()), Some(0));
        for spec in ["ea2:2", "ea2:3"] {
            assert!(admits_no_hdr(&build_group(spec).unwrap()), "{spec}");
        }
        for spec in ["cyclic:1", "cyclic:2", "cyclic:3"] {
            assert!(!admits_no_hdr(&build_group(spec).unwrap()), "{spec}");
        }
        assert!(!admits_no_hdr(&build_group("ea2:4").unwrap()));
        assert!(admits_no_drr(&build_group("ea2:4").unwrap()));
        assert!(!admits_no_drr(&build_group("ea2:5").unwrap()));
    }

    #[test]
    fn hardcoded_sets_use_given_generators() {
        let q = build_group("q:8").unwrap();
        let (s, t) = hardcoded_sets(&q).unwrap();
        assert_eq!(s, q.parse_subset("1,a,b").unwrap());
        assert_eq!(t, q.parse_subset("a^2,b^3,ab").unwrap());
        let e = build_group("ea2:5").unwrap();
        let (s, t) = hardcoded_sets(&e).unwrap();
        assert_eq!(s, e.parse_subset("1,a1,a2,a3,a4,a1a2,a5").unwrap());
        assert_eq!(t, e.parse_subset("1,a1,a3,a2a4,a1a2a3,a2a3a4,a5").unwrap());
    }

    #[test]
    fn elementary_abelian_sets_shape() {
        for m in 6..=8 {
            let g = build_group(&format!("ea2:{m}")).unwrap();
            let (r, l) = elementary_abelian_sets(&g).unwrap();
            assert_eq!(r.len(), 2 * m + 1);
            assert_eq!(l.len(), 2 * m + 1);
            assert!(l.is_disjoint(&r) && !l.contains(0));
            let gens: Vec<Elem> = l.iter().collect();
            assert!(g.generated_subgroup(&gens).len() < g.order());
            let gens: Vec<Elem> = r.iter().collect();
            assert_eq!(g.generated_subgroup(&gens).len(), g.order());
        }
    }

    #[test]
    fn pool_exceeds_needed_size() {
        for m in 6..=12u32 {
            assert!(elementary_abelian_pool_size(m) > u64::from(2 * m + 1), "m = {m}");
        }
        assert!(elementary_abelian_pool_size(5) < 11);
    }
}
