//! Small DRR and TRR connection sets.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::identify::{admits_no_drr, is_z3_squared};
use super::lchoice::next_colex;
use super::search::{check_deadline, MaskImager};
use super::{SynthesisConfig, SynthesisError};
use crate::aut::Solver;
use crate::group::{automorphisms, Elem, FiniteGroup, Subset};
use crate::representations::is_drr_with;

/// Candidates generated between parallel evaluations and deadline checks.
const CHUNK: usize = 1 << 12;

/// How [`find_small_drr`] obtained its set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DrrMethod {
    Cyclic,
    Exhaustive,
    Sampled,
    SubgroupTrr,
}

#[derive(Clone, Debug)]
pub struct SmallDrr {
    pub r: Subset,
    pub method: DrrMethod,
    /// Sizes searched, in order.
    pub sizes: Vec<usize>,
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

fn generates(g: &FiniteGroup, r: &Subset) -> bool {
    let gens: Vec<Elem> = r.iter().collect();
    g.generated_subgroup(&gens).len() == g.order()
}

fn first_drr(solver: &Solver, g: &FiniteGroup, batch: &[Subset]) -> Result<Option<Subset>, SynthesisError> {
    batch
        .par_iter()
        .filter(|r| generates(g, r))
        .map(|r| is_drr_with(solver, g, r).map(|ok| ok.then(|| r.clone())))
        .find_map_first(|res| match res {
            Ok(None) => None,
            other => Some(other),
        })
        .transpose()
        .map(Option::flatten)
        .map_err(SynthesisError::from)
}

/// `R` with `1 ∉ R`, `|R| < (|G|−1)/2` and `Cay(G,R)` a DRR.
///
/// Sizes are tried in increasing order. A size is swept exhaustively in
/// bitmask order while the running candidate count stays within
/// `config.drr_exhaustive_budget`; beyond that a seeded sample of
/// `config.drr_samples_per_size` sets is tried in sample order. Odd-order
/// groups then try [`drr_from_subgroup_trr`] over their maximal normal
/// subgroups.
pub fn find_small_drr(g: &FiniteGroup, config: &SynthesisConfig) -> Result<SmallDrr, SynthesisError> {
    let n = g.order();
    if n < 4 {
        return Err(SynthesisError::Precondition(format!("|G| = {n} is below 4")));
    }
    if admits_no_drr(g) {
        return Err(SynthesisError::NoDrr(g.spec().unwrap_or("table").to_string()));
    }
    if let Some(a) = g.elements().find(|&x| g.element_order(x) as usize == n) {
        return Ok(SmallDrr { r: Subset::from_elems(n, [a]), method: DrrMethod::Cyclic, sizes: vec![1] });
    }
    let solver = &config.solver;
    let pool = n - 1;
    let mut spent = 0u64;
    let mut sizes = Vec::new();
    for k in (1..).take_while(|&k| 2 * k + 1 < n) {
        sizes.push(k);
        let count = binomial(pool as u64, k as u64);
        if spent.saturating_add(count) <= config.drr_exhaustive_budget {
            spent += count;
            let mut c: Vec<usize> = (0..k).collect();
            let mut more = true;
            while more {
                check_deadline(config.deadline, "small DRR search")?;
                let mut batch = Vec::with_capacity(CHUNK);
                while more && batch.len() < CHUNK {
                    batch.push(Subset::from_elems(n, c.iter().map(|&i| i as Elem + 1)));
                    more = next_colex(&mut c, pool);
                }
                if let Some(r) = first_drr(solver, g, &batch)? {
                    return Ok(SmallDrr { r, method: DrrMethod::Exhaustive, sizes });
                }
            }
        } else {
            spent = u64::MAX;
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut left = config.drr_samples_per_size;
            while left > 0 {
                check_deadline(config.deadline, "small DRR search")?;
                let take = left.min(CHUNK as u64);
                left -= take;
                let batch: Vec<Subset> = (0..take)
                    .map(|_| Subset::from_elems(n, sample(&mut rng, pool, k).into_iter().map(|i| i as Elem + 1)))
                    .collect();
                if let Some(r) = first_drr(solver, g, &batch)? {
                    return Ok(SmallDrr { r, method: DrrMethod::Sampled, sizes });
                }
            }
        }
    }
    if n % 2 == 1 && n <= 64 {
        for m in maximal_normal_subgroups(g)? {
            let Some(x) = g.elements().find(|&x| !m.contains(x)) else { continue };
            match drr_from_subgroup_trr(solver, g, &m, x) {
                Ok(r) if 2 * r.len() + 1 < n => {
                    return Ok(SmallDrr { r, method: DrrMethod::SubgroupTrr, sizes });
                }
                Ok(_) | Err(SynthesisError::Precondition(_) | SynthesisError::NoneExists { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Err(SynthesisError::BudgetExhausted(format!("no DRR found at sizes {sizes:?}")))
}

/// A TRR connection set found by [`find_trr`].
#[derive(Clone, Debug)]
pub struct TrrFound {
    pub r: Subset,
    /// Orientation choices enumerated.
    pub candidates: u64,
    /// Choices actually solved.
    pub solved: u64,
}

/// Largest number of orientation choices [`find_trr`] will enumerate.
pub const TRR_CANDIDATE_LIMIT: u64 = 1 << 26;

/// The least (in bitmask order) tournament set `R` with `Cay(G,R)` a DRR.
///
/// Only choices that are least in their `Aut(G)`-orbit are solved; `Aut(G)`
/// is used when it can be listed and `|G| ≤ 64`.
pub fn find_trr(solver: &Solver, g: &FiniteGroup) -> Result<TrrFound, SynthesisError> {
    let n = g.order();
    if n % 2 == 0 {
        return Err(SynthesisError::Precondition(format!("|G| = {n} is even")));
    }
    // pairs {x, x⁻¹} sorted by the larger element, so choice bits count in mask order
    let mut pairs: Vec<(Elem, Elem)> = g
        .elements()
        .skip(1)
        .filter_map(|x| {
            let y = g.inv(x);
            (x < y).then_some((x, y))
        })
        .collect();
    pairs.sort_by_key(|&(_, hi)| hi);
    let p = pairs.len() as u32;
    if p >= 63 || (1u64 << p) > TRR_CANDIDATE_LIMIT {
        return Err(SynthesisError::BudgetExhausted(format!("2^{p} orientation choices exceed the limit")));
    }
    let total = 1u64 << p;
    let imager = if n <= 64 { automorphisms(g).ok().map(|a| MaskImager::new(n, &a)) } else { None };
    let build = |c: u64| {
        Subset::from_elems(n, pairs.iter().enumerate().map(|(i, &(lo, hi))| if c >> i & 1 == 1 { hi } else { lo }))
    };
    let mut solved = 0u64;
    let mut start = 0u64;
    while start < total {
        let end = total.min(start + CHUNK as u64);
        let batch: Vec<Subset> = (start..end)
            .map(build)
            .filter(|r| match (&imager, r.mask()) {
                (Some(im), Some(mask)) => im.is_canonical(mask),
                _ => true,
            })
            .collect();
        solved += batch.len() as u64;
        if let Some(r) = first_drr(solver, g, &batch)? {
            return Ok(TrrFound { r, candidates: total, solved });
        }
        start = end;
    }
    Err(SynthesisError::NoneExists { candidates: total, solved })
}

fn conjugate(g: &FiniteGroup, h: Elem, x: Elem) -> Elem {
    g.mul(g.mul(g.inv(x), h), x)
}

fn is_subgroup(g: &FiniteGroup, m: &Subset) -> bool {
    let gens: Vec<Elem> = m.iter().collect();
    m.contains(g.identity()) && g.generated_subgroup(&gens).len() == m.len()
}

fn is_normal(g: &FiniteGroup, m: &Subset) -> bool {
    g.generators().iter().all(|&x| m.iter().all(|h| m.contains(conjugate(g, h, x))))
}

/// `R = S ∪ {x}`, where `S` is a TRR connection set of the subgroup `M`.
///
/// Requires `M` a proper normal subgroup of odd order, `M ≇ ℤ₃²`, `x ∉ M` and
/// `⟨M, x⟩ = G`. The result is returned only after it solves as a DRR.
pub fn drr_from_subgroup_trr(
    solver: &Solver,
    g: &FiniteGroup,
    m: &Subset,
    x: Elem,
) -> Result<Subset, SynthesisError> {
    let n = g.order();
    let pre = |msg: &str| Err(SynthesisError::Precondition(msg.into()));
    if m.universe() != n || x as usize >= n {
        return pre("subgroup or element outside G");
    }
    if !is_subgroup(g, m) {
        return pre("M is not a subgroup");
    }
    if m.len() == n {
        return pre("M is not proper");
    }
    if m.len() % 2 == 0 {
        return pre("M has even order");
    }
    if !is_normal(g, m) {
        return pre("M is not normal");
    }
    if m.contains(x) {
        return pre("x lies in M");
    }
    let gens: Vec<Elem> = m.iter().chain([x]).collect();
    if g.generated_subgroup(&gens).len() != n {
        return pre("M and x do not generate G");
    }
    let (sub, embed) = g.subgroup(m)?;
    if is_z3_squared(&sub) {
        return pre("M is isomorphic to ℤ₃²");
    }
    let trr = find_trr(solver, &sub)?;
    let r = Subset::from_elems(n, trr.r.iter().map(|s| embed[s as usize])).with(x);
    if is_drr_with(solver, g, &r)? {
        Ok(r)
    } else {
        Err(SynthesisError::VerificationFailed(format!("Cay(G, {}) is not a DRR", r.display(g))))
    }
}

/// Maximal proper normal subgroups, in bitmask order. Every subgroup is
/// found as a join of cyclic subgroups, so this is limited to `|G| ≤ 64`.
/// Experimental.
pub fn maximal_normal_subgroups(g: &FiniteGroup) -> Result<Vec<Subset>, SynthesisError> {
    let n = g.order();
    if n > 64 {
        return Err(SynthesisError::Precondition(format!("|G| = {n} exceeds 64 for subgroup discovery")));
    }
    let close = |elems: &[Elem]| Subset::from_elems(n, g.generated_subgroup(elems));
    let cyclic: BTreeSet<Subset> = g.elements().map(|x| close(&[x])).collect();
    let mut all = cyclic.clone();
    let mut frontier: Vec<Subset> = cyclic.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for c in &cyclic {
                if c.is_subset_of(a) {
                    continue;
                }
                let gens: Vec<Elem> = a.union(c).iter().collect();
                let j = close(&gens);
                if all.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let normal: Vec<Subset> = all.into_iter().filter(|m| m.len() < n && is_normal(g, m)).collect();
    let mut maximal: Vec<Subset> = normal
        .iter()
        .filter(|m| !normal.iter().any(|o| o.len() > m.len() && m.is_subset_of(o)))
        .cloned()
        .collect();
    maximal.sort_by_key(|m| m.mask());
    Ok(maximal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use crate::representations::{is_drr, is_tournament_set, is_trr};

    fn cfg() -> SynthesisConfig {
        SynthesisConfig::default()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(31, 15), 300_540_195);
        assert_eq!(binomial(200, 100), u64::MAX);
    }

    #[test]
    fn small_drr_examples() {
        let g = build_group("cyclic:5").unwrap();
        let d = find_small_drr(&g, &cfg()).unwrap();
        assert_eq!(d.r, g.parse_subset("a").unwrap());
        assert_eq!(d.method, DrrMethod::Cyclic);
        let g = build_group("q:8").unwrap();
        assert!(matches!(find_small_drr(&g, &cfg()), Err(SynthesisError::NoDrr(_))));
        let g = build_group("sym:3").unwrap();
        let d = find_small_drr(&g, &cfg()).unwrap();
        assert!(d.r.len() <= 2 && !d.r.contains(0));
        assert!(is_drr(&g, &d.r).unwrap());
        assert!(matches!(find_small_drr(&build_group("cyclic:3").unwrap(), &cfg()), Err(SynthesisError::Precondition(_))));
    }

    #[test]
    fn small_drr_is_small_and_verified() {
        for spec in ["dihedral:8", "alt:4", "q:16", "product:cyclic:2,cyclic:4", "dihedral:12", "ea2:5"] {
            let g = build_group(spec).unwrap();
            let d = find_small_drr(&g, &cfg()).unwrap();
            assert!(2 * d.r.len() + 1 < g.order(), "{spec}");
            assert!(is_drr(&g, &d.r).unwrap(), "{spec}");
        }
    }

    #[test]
    fn sampled_path_is_seeded() {
        let g = build_group("dihedral:10").unwrap();
        let c = SynthesisConfig { drr_exhaustive_budget: 0, drr_samples_per_size: 50, seed: 7, ..cfg() };
        let a = find_small_drr(&g, &c).unwrap();
        let b = find_small_drr(&g, &c).unwrap();
        assert_eq!(a.method, DrrMethod::Sampled);
        assert_eq!(a.r, b.r);
        assert!(is_drr(&g, &a.r).unwrap());
    }

    #[test]
    fn trr_examples() {
        let s = Solver::default();
        let g = build_group("cyclic:3").unwrap();
        assert_eq!(find_trr(&s, &g).unwrap().r, g.parse_subset("a").unwrap());
        let g = build_group("cyclic:7").unwrap();
        let t = find_trr(&s, &g).unwrap();
        assert_eq!(t.r.len(), 3);
        assert!(is_tournament_set(&g, &t.r) && is_trr(&g, &t.r).unwrap());
        let g = build_group("product:cyclic:3,cyclic:3").unwrap();
        match find_trr(&s, &g) {
            Err(SynthesisError::NoneExists { candidates, .. }) => assert_eq!(candidates, 16),
            other => panic!("{other:?}"),
        }
        assert!(matches!(find_trr(&s, &build_group("cyclic:4").unwrap()), Err(SynthesisError::Precondition(_))));
    }

    #[test]
    fn z3_cubed_has_no_trr() {
        // Aut(G) permutes the 2¹³ tournament sets; |GL(3,3)| = 11232 > 2¹³, so
        // each set has a nontrivial stabilizer, which fixes 1 in Cay(G,R)
        let g = build_group("product:cyclic:3,cyclic:3,cyclic:3").unwrap();
        assert!(automorphisms(&g).unwrap().len() > 1 << 13);
        match find_trr(&Solver::default(), &g) {
            Err(SynthesisError::NoneExists { candidates, .. }) => assert_eq!(candidates, 1 << 13),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trr_matches_unreduced_sweep() {
        let s = Solver::default();
        for spec in ["cyclic:5", "cyclic:9", "cyclic:11"] {
            let g = build_group(spec).unwrap();
            let found = find_trr(&s, &g).unwrap().r;
            let n = g.order();
            let best = (0u64..1 << n)
                .map(|m| Subset::from_mask(n, m))
                .find(|r| is_tournament_set(&g, r) && is_drr(&g, r).unwrap())
                .unwrap();
            assert_eq!(found, best, "{spec}");
        }
    }

    #[test]
    fn subgroup_trr_construction() {
        let s = Solver::default();
        let g = build_group("cyclic:9").unwrap();
        let m = g.parse_subset("1,a^3,a^6").unwrap();
        let a = g.parse_element("a").unwrap();
        let r = drr_from_subgroup_trr(&s, &g, &m, a).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(a));
        assert!(r.contains(g.parse_element("a^3").unwrap()) ^ r.contains(g.parse_element("a^6").unwrap()));
        assert!(is_drr(&g, &r).unwrap());
        assert!(matches!(
            drr_from_subgroup_trr(&s, &g, &m, g.parse_element("a^3").unwrap()),
            Err(SynthesisError::Precondition(_))
        ));
        let g = build_group("product:cyclic:3,cyclic:9").unwrap();
        let m = Subset::from_elems(27, g.generated_subgroup(&[g.parse_element("a").unwrap(), g.parse_element("b^3").unwrap()]));
        assert_eq!(m.len(), 9);
        let r = drr_from_subgroup_trr(&s, &g, &m, g.parse_element("b").unwrap());
        assert!(matches!(r, Err(SynthesisError::Precondition(msg)) if msg.contains("ℤ₃²")));
    }

    #[test]
    fn maximal_normal_subgroups_examples() {
        let g = build_group("cyclic:9").unwrap();
        assert_eq!(maximal_normal_subgroups(&g).unwrap(), vec![g.parse_subset("1,a^3,a^6").unwrap()]);
        let g = build_group("sym:3").unwrap();
        let ms = maximal_normal_subgroups(&g).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].len(), 3);
        let g = build_group("product:cyclic:3,cyclic:3").unwrap();
        assert_eq!(maximal_normal_subgroups(&g).unwrap().len(), 4);
    }
}
