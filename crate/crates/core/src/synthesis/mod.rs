//! Certified HDR synthesis, plus the DRR/TRR searches it relies on.
//!
//! [`synthesize_hdr`] tries, in order: the two groups without an HDR, fixed sets for the
//! groups without a DRR, the elementary abelian construction for `ℤ₂^m`
//! (`m ≥ 6`), the `Haar(G, R∪{1}, L∪{1})` construction from a small DRR, and
//! finally a search over `(S,T)` pairs. Every answer is re-solved before it
//! is returned, except large `ℤ₂^m` pairs that exceed the solver's vertex cap.

mod drr;
mod identify;
mod lchoice;
mod search;

pub use drr::{
    drr_from_subgroup_trr, find_small_drr, find_trr, maximal_normal_subgroups, DrrMethod, SmallDrr, TrrFound,
    TRR_CANDIDATE_LIMIT,
};
pub use identify::{
    admits_no_drr, admits_no_hdr, elementary_abelian_pool_size, elementary_abelian_rank, elementary_abelian_sets,
    hardcoded_sets, is_quaternion8, is_z3_squared,
};
pub use lchoice::{choose_l, partition_connection_set, ConnectionPartition, LCase};
pub use search::{
    exhaustive_drr_search, exhaustive_hdr_search, exhaustive_hgr_search, MaskImager, SearchMode, SearchOutcome,
};

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::aut::Solver;
use crate::group::{automorphisms, Elem, FiniteGroup, GroupError, Subset};
use crate::representations::{haar_aut_with, RepError};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum SynthesisError {
    #[error("{0} admits no HDR")]
    NoHdr(String),
    #[error("{0} admits no DRR")]
    NoDrr(String),
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("every admissible L is an automorphic image of R")]
    NoValidL,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("none exists: {candidates} candidates enumerated, {solved} solved")]
    NoneExists { candidates: u64, solved: u64 },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl SynthesisError {
    /// Whether the failure is a budget or cap rather than an answer.
    pub fn is_inconclusive(&self) -> bool {
        match self {
            SynthesisError::BudgetExhausted(_) | SynthesisError::Group(GroupError::AutCap(_)) => true,
            SynthesisError::Rep(e) => e.is_inconclusive(),
            _ => false,
        }
    }
}

/// Which routes [`synthesize_hdr`] may take.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// The constructive routes, then the search if they fail.
    #[default]
    Auto,
    /// The constructive routes only; their errors are returned.
    Paper,
    /// The `(S,T)` search only.
    Search,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "paper" => Ok(Strategy::Paper),
            "search" => Ok(Strategy::Search),
            other => Err(format!("unknown strategy {other:?}; expected auto, paper or search")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Auto => "auto",
            Strategy::Paper => "paper",
            Strategy::Search => "search",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SynthesisConfig {
    pub strategy: Strategy,
    pub seed: u64,
    pub deadline: Option<Instant>,
    pub solver: Solver,
    /// Total subsets swept exhaustively by [`find_small_drr`] before sampling.
    pub drr_exhaustive_budget: u64,
    pub drr_samples_per_size: u64,
    /// Groups up to this order get an exhaustive `(S,T)` sweep as the fallback.
    pub fallback_exhaustive_order: usize,
    /// Random `(S,T)` pairs tried as the fallback for larger groups.
    pub fallback_samples: u64,
}

impl Default for SynthesisConfig {
    fn default() -> Self {
        SynthesisConfig {
            strategy: Strategy::Auto,
            seed: 0,
            deadline: None,
            solver: Solver::default(),
            drr_exhaustive_budget: 1_000_000,
            drr_samples_per_size: 10_000,
            fallback_exhaustive_order: 10,
            fallback_samples: 200_000,
        }
    }
}

/// The route that produced a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateStrategy {
    Hardcoded,
    ElementaryAbelian,
    LemmaAPlus(LCase),
    FallbackSearch,
}

impl fmt::Display for CertificateStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateStrategy::Hardcoded => f.write_str("hardcoded"),
            CertificateStrategy::ElementaryAbelian => f.write_str("elementary-abelian"),
            CertificateStrategy::LemmaAPlus(c) => write!(f, "lemma-aplus({})", c.label()),
            CertificateStrategy::FallbackSearch => f.write_str("fallback-search"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SynthesisCertificate {
    pub s: Subset,
    pub t: Subset,
    pub strategy: CertificateStrategy,
    /// The DRR connection set `R` with `S = R ∪ {1}`.
    pub drr_used: Option<Subset>,
    /// `L` with `T = L ∪ {1}`.
    pub l_used: Option<Subset>,
    /// `|Aut(Haar(G,S,T))|` from a full solve; `None` when none was run.
    pub aut_order: Option<BigUint>,
    /// A full solve confirmed `|Aut| = |G|`.
    pub verified: bool,
    /// No `α ∈ Aut(G)` maps `R` onto `L`.
    pub no_alpha_checked: bool,
    pub elapsed_ms: u64,
}

/// The JSON form of a certificate.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub group_spec: String,
    pub s: Vec<String>,
    pub t: Vec<String>,
    pub strategy: String,
    pub drr_used: Option<Vec<String>>,
    pub aut_order: Option<String>,
    pub verified: bool,
    pub elapsed_ms: u64,
}

impl SynthesisCertificate {
    pub fn report(&self, g: &FiniteGroup) -> CertificateReport {
        CertificateReport {
            group_spec: g.spec().unwrap_or("table").to_string(),
            s: self.s.names(g),
            t: self.t.names(g),
            strategy: self.strategy.to_string(),
            drr_used: self.drr_used.as_ref().map(|r| r.names(g)),
            aut_order: self.aut_order.as_ref().map(BigUint::to_string),
            verified: self.verified,
            elapsed_ms: self.elapsed_ms,
        }
    }
}

fn group_label(g: &FiniteGroup) -> String {
    g.spec().map_or_else(|| format!("group of order {}", g.order()), str::to_string)
}

struct Draft {
    s: Subset,
    t: Subset,
    strategy: CertificateStrategy,
    drr_used: Option<Subset>,
    l_used: Option<Subset>,
    no_alpha_checked: bool,
}

impl Draft {
    fn plain(s: Subset, t: Subset, strategy: CertificateStrategy) -> Self {
        Draft { s, t, strategy, drr_used: None, l_used: None, no_alpha_checked: false }
    }
}

/// Solves `Haar(G,S,T)` and fails unless its group has order `|G|`.
fn certify(g: &FiniteGroup, config: &SynthesisConfig, draft: Draft, start: Instant) -> Result<SynthesisCertificate, SynthesisError> {
    let order = haar_aut_with(&config.solver, g, &draft.s, &draft.t)?.order();
    if order != BigUint::from(g.order()) {
        return Err(SynthesisError::VerificationFailed(format!(
            "Haar(G, {}, {}) has {order} automorphisms",
            draft.s.display(g),
            draft.t.display(g)
        )));
    }
    Ok(SynthesisCertificate {
        s: draft.s,
        t: draft.t,
        strategy: draft.strategy,
        drr_used: draft.drr_used,
        l_used: draft.l_used,
        aut_order: Some(order),
        verified: true,
        no_alpha_checked: draft.no_alpha_checked,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// A Haar digraph over `g` with automorphism group of order `|G|`.
pub fn synthesize_hdr(g: &FiniteGroup, config: &SynthesisConfig) -> Result<SynthesisCertificate, SynthesisError> {
    let start = Instant::now();
    if admits_no_hdr(g) {
        return Err(SynthesisError::NoHdr(group_label(g)));
    }
    if config.strategy == Strategy::Search {
        return fallback(g, config, start);
    }
    match constructive(g, config, start) {
        Ok(cert) => Ok(cert),
        Err(e) if config.strategy == Strategy::Paper => Err(e),
        Err(_) => fallback(g, config, start),
    }
}

fn constructive(g: &FiniteGroup, config: &SynthesisConfig, start: Instant) -> Result<SynthesisCertificate, SynthesisError> {
    let one = g.identity();
    if let Some((s, t)) = hardcoded_sets(g) {
        return certify(g, config, Draft::plain(s, t, CertificateStrategy::Hardcoded), start);
    }
    if elementary_abelian_rank(g).is_some_and(|m| m >= 6) {
        return elementary_abelian(g, config, start);
    }
    let drr = find_small_drr(g, config)?;
    let auts = automorphisms(g)?;
    let (l, case) = choose_l(g, &auts, &drr.r)?;
    let draft = Draft {
        s: drr.r.with(one),
        t: l.with(one),
        strategy: CertificateStrategy::LemmaAPlus(case),
        drr_used: Some(drr.r),
        l_used: Some(l),
        no_alpha_checked: true,
    };
    certify(g, config, draft, start)
}

fn elementary_abelian(g: &FiniteGroup, config: &SynthesisConfig, start: Instant) -> Result<SynthesisCertificate, SynthesisError> {
    let one = g.identity();
    let (r, l) = elementary_abelian_sets(g)
        .ok_or_else(|| SynthesisError::Precondition("elementary abelian construction needs rank ≥ 6".into()))?;
    let span = |x: &Subset| g.generated_subgroup(&x.iter().collect::<Vec<Elem>>()).len();
    // automorphisms preserve generation, so ⟨R⟩ = G ≠ ⟨L⟩ rules out Rᵅ = L
    let no_alpha = span(&r) == g.order() && span(&l) < g.order();
    if !no_alpha {
        return Err(SynthesisError::VerificationFailed("⟨R⟩ = G ≠ ⟨L⟩ does not hold".into()));
    }
    let draft = Draft {
        s: r.with(one),
        t: l.with(one),
        strategy: CertificateStrategy::ElementaryAbelian,
        drr_used: Some(r),
        l_used: Some(l),
        no_alpha_checked: true,
    };
    if 2 * g.order() <= config.solver.config.max_vertices {
        return certify(g, config, draft, start);
    }
    Ok(SynthesisCertificate {
        s: draft.s,
        t: draft.t,
        strategy: draft.strategy,
        drr_used: draft.drr_used,
        l_used: draft.l_used,
        aut_order: None,
        verified: false,
        no_alpha_checked: true,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn fallback(g: &FiniteGroup, config: &SynthesisConfig, start: Instant) -> Result<SynthesisCertificate, SynthesisError> {
    let n = g.order();
    if n <= config.fallback_exhaustive_order {
        let auts = automorphisms(g)?;
        let out = exhaustive_hdr_search(&config.solver, g, &auts, SearchMode::First, config.deadline)?;
        return match out.witnesses.into_iter().next() {
            Some((s, t)) => certify(g, config, Draft::plain(s, t, CertificateStrategy::FallbackSearch), start),
            None => Err(SynthesisError::NoneExists { candidates: out.candidates, solved: out.solved }),
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut random_set = || Subset::from_elems(n, (0..n as Elem).filter(|_| rng.gen_bool(0.5)));
    let mut left = config.fallback_samples;
    while left > 0 {
        search::check_deadline(config.deadline, "randomized HDR search")?;
        let take = left.min(256);
        left -= take;
        let batch: Vec<(Subset, Subset)> = (0..take).map(|_| (random_set(), random_set())).collect();
        let hit = batch
            .par_iter()
            .map(|(s, t)| haar_aut_with(&config.solver, g, s, t).map(|a| (a.order() == BigUint::from(n)).then_some((s, t))))
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            })
            .transpose()?
            .flatten();
        if let Some((s, t)) = hit {
            return certify(g, config, Draft::plain(s.clone(), t.clone(), CertificateStrategy::FallbackSearch), start);
        }
    }
    Err(SynthesisError::BudgetExhausted(format!("{} random (S,T) pairs tried", config.fallback_samples)))
}
