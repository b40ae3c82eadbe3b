//! Exhaustive searches over connection sets with `Aut(G)`-orbit reduction.
//!
//! Candidates are indexed so that index order is bitmask order (pairs are
//! ordered by `(S, T)`). Only candidates that are the least member of their
//! `Aut(G)`-orbit are solved. Parallel evaluation reduces to the least
//! witness, so results do not depend on scheduling.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::SynthesisError;
use crate::aut::Solver;
use crate::group::{FiniteGroup, GroupAutomorphism, Subset};
use crate::representations::{is_drr_with, is_hdr_with, is_hgr_with, RepError};

/// Candidates evaluated between deadline checks.
const CHUNK: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    First,
    All,
}

/// Result of a sweep.
#[derive(Clone, Debug)]
pub struct SearchOutcome<T> {
    /// Witnesses in bitmask order; in `All` mode every member of every
    /// witnessing orbit is listed.
    pub witnesses: Vec<T>,
    /// Candidates enumerated (before orbit reduction).
    pub candidates: u64,
    /// Candidates actually solved (orbit representatives).
    pub solved: u64,
}

/// Applies automorphisms to bitmasks of a group of order at most 64.
#[derive(Clone, Debug)]
pub struct MaskImager {
    n: usize,
    /// `tables[a][k][byte]`: image of `byte << 8k` under the `a`-th automorphism.
    tables: Vec<Vec<[u64; 256]>>,
}

impl MaskImager {
    pub fn new(n: usize, auts: &[GroupAutomorphism]) -> Self {
        assert!(n <= 64, "mask imaging needs |G| ≤ 64");
        let chunks = n.div_ceil(8);
        let tables = auts
            .iter()
            .filter(|a| !a.is_identity())
            .map(|a| {
                (0..chunks)
                    .map(|k| {
                        let mut t = [0u64; 256];
                        for (byte, slot) in t.iter_mut().enumerate() {
                            for bit in 0..8 {
                                let x = 8 * k + bit;
                                if byte >> bit & 1 == 1 && x < n {
                                    *slot |= 1 << a.apply(x as u32);
                                }
                            }
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        MaskImager { n, tables }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    /// Number of non-identity automorphisms.
    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    #[inline]
    fn image(table: &[[u64; 256]], mask: u64) -> u64 {
        table.iter().enumerate().fold(0, |acc, (k, t)| acc | t[(mask >> (8 * k)) as usize & 0xff])
    }

    /// Images of `mask` under every non-identity automorphism.
    pub fn images(&self, mask: u64) -> impl Iterator<Item = u64> + '_ {
        self.tables.iter().map(move |t| Self::image(t, mask))
    }

    pub fn is_canonical(&self, mask: u64) -> bool {
        self.tables.iter().all(|t| Self::image(t, mask) >= mask)
    }

    /// Whether `(s, t)` is lexicographically least among its images.
    pub fn is_canonical_pair(&self, s: u64, t: u64) -> bool {
        self.tables.iter().all(|tb| {
            let si = Self::image(tb, s);
            si > s || (si == s && Self::image(tb, t) >= t)
        })
    }
}

pub(crate) fn check_deadline(deadline: Option<Instant>, what: &str) -> Result<(), SynthesisError> {
    match deadline {
        Some(d) if Instant::now() >= d => Err(SynthesisError::BudgetExhausted(format!("{what}: deadline reached"))),
        _ => Ok(()),
    }
}

/// Runs `test` on every index in `0..total` accepted by `keep`, in chunks.
fn drive(
    total: u64,
    mode: SearchMode,
    deadline: Option<Instant>,
    what: &str,
    keep: impl Fn(u64) -> bool + Sync,
    test: impl Fn(u64) -> Result<bool, RepError> + Sync,
) -> Result<(Vec<u64>, u64), SynthesisError> {
    let solved = AtomicU64::new(0);
    let run = |i: u64| -> Option<Result<u64, RepError>> {
        if !keep(i) {
            return None;
        }
        solved.fetch_add(1, Ordering::Relaxed);
        match test(i) {
            Ok(true) => Some(Ok(i)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        }
    };
    let mut hits = Vec::new();
    let mut lo = 0;
    while lo < total {
        check_deadline(deadline, what)?;
        let hi = (lo + CHUNK).min(total);
        match mode {
            SearchMode::First => {
                if let Some(r) = (lo..hi).into_par_iter().find_map_first(run) {
                    hits.push(r?);
                    return Ok((hits, solved.into_inner()));
                }
            }
            SearchMode::All => {
                let found: Vec<Result<u64, RepError>> = (lo..hi).into_par_iter().filter_map(run).collect();
                for r in found {
                    hits.push(r?);
                }
            }
        }
        lo = hi;
    }
    Ok((hits, solved.into_inner()))
}

fn expand_orbits(imager: &MaskImager, reps: &[u64]) -> Vec<u64> {
    let mut all: Vec<u64> = reps.iter().flat_map(|&m| std::iter::once(m).chain(imager.images(m))).collect();
    all.sort_unstable();
    all.dedup();
    all
}

fn imager_for(g: &FiniteGroup, auts: &[GroupAutomorphism], limit: u32) -> Result<MaskImager, SynthesisError> {
    let n = g.order();
    if n > limit as usize {
        return Err(SynthesisError::Precondition(format!("group order {n} exceeds {limit} for an exhaustive sweep")));
    }
    Ok(MaskImager::new(n, auts))
}

/// All, or the least, `(S,T)` with `Haar(G,S,T)` an HDR.
///
/// `All` needs `|G| ≤ 8`; `First` accepts `|G| ≤ 16`.
pub fn exhaustive_hdr_search(
    solver: &Solver,
    g: &FiniteGroup,
    auts: &[GroupAutomorphism],
    mode: SearchMode,
    deadline: Option<Instant>,
) -> Result<SearchOutcome<(Subset, Subset)>, SynthesisError> {
    let limit = if mode == SearchMode::All { 8 } else { 16 };
    let imager = imager_for(g, auts, limit)?;
    let n = g.order();
    let low = (1u64 << n) - 1;
    let total = 1u64 << (2 * n);
    let (hits, solved) = drive(
        total,
        mode,
        deadline,
        "exhaustive HDR search",
        |i| imager.is_canonical_pair(i >> n, i & low),
        |i| is_hdr_with(solver, g, &Subset::from_mask(n, i >> n), &Subset::from_mask(n, i & low)),
    )?;
    let witnesses = if mode == SearchMode::All {
        let mut pairs: Vec<(u64, u64)> = hits
            .iter()
            .flat_map(|&i| {
                let (s, t) = (i >> n, i & low);
                let images: Vec<(u64, u64)> = imager.tables.iter().map(|tb| (MaskImager::image(tb, s), MaskImager::image(tb, t))).collect();
                std::iter::once((s, t)).chain(images)
            })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs.into_iter().map(|(s, t)| (Subset::from_mask(n, s), Subset::from_mask(n, t))).collect()
    } else {
        hits.iter().map(|&i| (Subset::from_mask(n, i >> n), Subset::from_mask(n, i & low))).collect()
    };
    Ok(SearchOutcome { witnesses, candidates: total, solved })
}

fn subset_sweep(
    g: &FiniteGroup,
    auts: &[GroupAutomorphism],
    mode: SearchMode,
    deadline: Option<Instant>,
    what: &str,
    test: impl Fn(&Subset) -> Result<bool, RepError> + Sync,
) -> Result<SearchOutcome<Subset>, SynthesisError> {
    let imager = imager_for(g, auts, 24)?;
    let n = g.order();
    let total = 1u64 << n;
    let (hits, solved) =
        drive(total, mode, deadline, what, |m| imager.is_canonical(m), |m| test(&Subset::from_mask(n, m)))?;
    let masks = if mode == SearchMode::All { expand_orbits(&imager, &hits) } else { hits };
    Ok(SearchOutcome { witnesses: masks.into_iter().map(|m| Subset::from_mask(n, m)).collect(), candidates: total, solved })
}

/// All, or the least, `R` with `Cay(G,R)` a DRR; `|G| ≤ 24`.
pub fn exhaustive_drr_search(
    solver: &Solver,
    g: &FiniteGroup,
    auts: &[GroupAutomorphism],
    mode: SearchMode,
    deadline: Option<Instant>,
) -> Result<SearchOutcome<Subset>, SynthesisError> {
    subset_sweep(g, auts, mode, deadline, "exhaustive DRR search", |r| is_drr_with(solver, g, r))
}

/// All, or the least, `S` with `Haar(G,S,S⁻¹)` an HGR; `|G| ≤ 24`.
pub fn exhaustive_hgr_search(
    solver: &Solver,
    g: &FiniteGroup,
    auts: &[GroupAutomorphism],
    mode: SearchMode,
    deadline: Option<Instant>,
) -> Result<SearchOutcome<Subset>, SynthesisError> {
    subset_sweep(g, auts, mode, deadline, "exhaustive HGR search", |s| is_hgr_with(solver, g, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{automorphisms, build_group};

    fn hdr(spec: &str, mode: SearchMode) -> SearchOutcome<(Subset, Subset)> {
        let g = build_group(spec).unwrap();
        let auts = automorphisms(&g).unwrap();
        exhaustive_hdr_search(&Solver::default(), &g, &auts, mode, None).unwrap()
    }

    #[test]
    fn imager_matches_subset_images() {
        let g = build_group("dihedral:10").unwrap();
        let auts = automorphisms(&g).unwrap();
        let im = MaskImager::new(10, &auts);
        assert_eq!(im.len(), auts.len() - 1);
        let non_id: Vec<_> = auts.iter().filter(|a| !a.is_identity()).collect();
        for mask in [0b1011u64, 0b11_0000_0110, 0b1] {
            let s = Subset::from_mask(10, mask);
            let got: Vec<u64> = im.images(mask).collect();
            let want: Vec<u64> = non_id.iter().map(|a| s.image(a).mask().unwrap()).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn small_cyclic_sweeps() {
        // counts and least pairs agree with a brute force over all vertex permutations
        let z3 = hdr("cyclic:3", SearchMode::All);
        assert_eq!(z3.witnesses.len(), 12);
        assert_eq!((z3.witnesses[0].0.mask(), z3.witnesses[0].1.mask()), (Some(0b001), Some(0b011)));
        assert_eq!(hdr("cyclic:2", SearchMode::All).witnesses.len(), 8);
        assert_eq!(hdr("cyclic:1", SearchMode::All).witnesses.len(), 2);
        assert!(hdr("ea2:2", SearchMode::All).witnesses.is_empty());
        let z4 = hdr("cyclic:4", SearchMode::All);
        assert!(!z4.witnesses.is_empty());
        assert_eq!(z4.candidates, 256);
        assert!(z4.solved < 256);
    }

    #[test]
    fn all_mode_agrees_with_unreduced_sweep() {
        let g = build_group("cyclic:4").unwrap();
        let solver = Solver::default();
        let mut direct = Vec::new();
        for s in 0..16u64 {
            for t in 0..16u64 {
                let (s, t) = (Subset::from_mask(4, s), Subset::from_mask(4, t));
                if is_hdr_with(&solver, &g, &s, &t).unwrap() {
                    direct.push((s, t));
                }
            }
        }
        assert_eq!(hdr("cyclic:4", SearchMode::All).witnesses, direct);
        assert_eq!(hdr("cyclic:4", SearchMode::First).witnesses, direct[..1]);
    }

    #[test]
    fn no_drr_for_klein_group() {
        let g = build_group("ea2:2").unwrap();
        let auts = automorphisms(&g).unwrap();
        let out = exhaustive_drr_search(&Solver::default(), &g, &auts, SearchMode::All, None).unwrap();
        assert!(out.witnesses.is_empty());
        assert_eq!(out.candidates, 16);
    }

    #[test]
    fn size_limits() {
        let g = build_group("cyclic:9").unwrap();
        let auts = automorphisms(&g).unwrap();
        let r = exhaustive_hdr_search(&Solver::default(), &g, &auts, SearchMode::All, None);
        assert!(matches!(r, Err(SynthesisError::Precondition(_))));
    }
}
