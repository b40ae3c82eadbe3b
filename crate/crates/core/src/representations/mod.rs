//! Deciding DRR, TRR, HDR and HGR, and checking the structure of normalizers
//! and color stabilizers of Haar digraphs.
//!
//! Every decision compares `|Aut|` with `|G|`. The regular copy of `G` always
//! lies in the automorphism group, so equal orders mean equal groups.

mod aplus;
mod normalizer;
mod report;

pub use aplus::{lemma_aplus_diagnostics, lemma_aplus_diagnostics_with, APlusDiagnostics, APlusViolation};
pub use normalizer::{compute_xy, compute_xy_with, verify_normalizer_formula, NormalizerStructure};
pub use report::{verify_report, Diagnostics, VerifyReport};

use num_bigint::BigUint;

use crate::aut::{GuardExceeded, PermutationGroup, SolveOptions, Solver, SolverError};
use crate::digraph::{cayley_digraph, haar_digraph, right_translation};
use crate::group::{FiniteGroup, GroupError, Subset};
use crate::perm::Perm;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Guard(#[from] GuardExceeded),
    #[error("precondition violated: {0}")]
    Precondition(#[from] APlusViolation),
    #[error("subset lives in a group of order {got}, expected {expected}")]
    Universe { expected: usize, got: usize },
}

impl RepError {
    /// Whether the failure is a budget or guard limit rather than an answer.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            RepError::Guard(_)
                | RepError::Solver(SolverError::Budget { .. } | SolverError::VertexCap { .. })
                | RepError::Group(GroupError::AutCap(_))
        )
    }
}

fn check_universe(g: &FiniteGroup, sets: &[&Subset]) -> Result<(), RepError> {
    for s in sets {
        if s.universe() != g.order() {
            return Err(RepError::Universe { expected: g.order(), got: s.universe() });
        }
    }
    Ok(())
}

/// `x ↦ xh` for each generator `h`, on the vertex set `G`.
fn cayley_translations(g: &FiniteGroup) -> Vec<Perm> {
    g.generators()
        .iter()
        .map(|&h| Perm::from_images(g.elements().map(|x| g.mul(x, h)).collect()).expect("translation"))
        .collect()
}

/// `Aut(Cay(G,R))`.
pub fn cayley_aut_with(solver: &Solver, g: &FiniteGroup, r: &Subset) -> Result<PermutationGroup, RepError> {
    check_universe(g, &[r])?;
    let d = cayley_digraph(g, r);
    let known = cayley_translations(g);
    Ok(solver.solve(&d, &SolveOptions { respect_colors: false, known: &known })?.group)
}

/// `Aut(Haar(G,S,T))`, arcs only; the bipartition is not enforced.
pub fn haar_aut_with(
    solver: &Solver,
    g: &FiniteGroup,
    s: &Subset,
    t: &Subset,
) -> Result<PermutationGroup, RepError> {
    check_universe(g, &[s, t])?;
    let h = haar_digraph(g, s, t);
    let known = h.translation_generators();
    Ok(solver.solve(&h.digraph, &SolveOptions { respect_colors: false, known: &known })?.group)
}

pub fn haar_aut_order(g: &FiniteGroup, s: &Subset, t: &Subset) -> Result<BigUint, RepError> {
    Ok(haar_aut_with(&Solver::default(), g, s, t)?.order())
}

pub fn is_drr(g: &FiniteGroup, r: &Subset) -> Result<bool, RepError> {
    is_drr_with(&Solver::default(), g, r)
}

pub fn is_drr_with(solver: &Solver, g: &FiniteGroup, r: &Subset) -> Result<bool, RepError> {
    Ok(cayley_aut_with(solver, g, r)?.order() == BigUint::from(g.order()))
}

/// `R ∩ R⁻¹ = ∅` and `R ∪ R⁻¹ = G∖{1}`.
pub fn is_tournament_set(g: &FiniteGroup, r: &Subset) -> bool {
    let inv = r.inverse(g);
    r.is_disjoint(&inv) && r.union(&inv) == Subset::full(g.order()).without(g.identity())
}

pub fn is_trr(g: &FiniteGroup, r: &Subset) -> Result<bool, RepError> {
    is_trr_with(&Solver::default(), g, r)
}

pub fn is_trr_with(solver: &Solver, g: &FiniteGroup, r: &Subset) -> Result<bool, RepError> {
    check_universe(g, &[r])?;
    Ok(is_tournament_set(g, r) && is_drr_with(solver, g, r)?)
}

pub fn is_hdr(g: &FiniteGroup, s: &Subset, t: &Subset) -> Result<bool, RepError> {
    is_hdr_with(&Solver::default(), g, s, t)
}

pub fn is_hdr_with(solver: &Solver, g: &FiniteGroup, s: &Subset, t: &Subset) -> Result<bool, RepError> {
    // |S| ≠ |T| still allows Aut = G; no shortcut on degrees
    Ok(haar_aut_with(solver, g, s, t)?.order() == BigUint::from(g.order()))
}

/// `Haar(G,S,S⁻¹)` is an HDR; that digraph is symmetric, so this decides HGR.
pub fn is_hgr(g: &FiniteGroup, s: &Subset) -> Result<bool, RepError> {
    is_hgr_with(&Solver::default(), g, s)
}

pub fn is_hgr_with(solver: &Solver, g: &FiniteGroup, s: &Subset) -> Result<bool, RepError> {
    check_universe(g, &[s])?;
    is_hdr_with(solver, g, s, &s.inverse(g))
}

/// `ρ_h` on the Haar vertex set for every `h ∈ G`.
pub fn all_translations(g: &FiniteGroup) -> Vec<Perm> {
    g.elements().map(|h| right_translation(g, h)).collect()
}
