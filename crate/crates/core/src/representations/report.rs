use num_bigint::BigUint;
use serde::Serialize;

use super::{check_universe, compute_xy, haar_aut_with, verify_normalizer_formula, RepError};
use crate::aut::{color_stabilizer_with, Solver};
use crate::digraph::haar_digraph;
use crate::group::{FiniteGroup, Subset};

/// Everything `verify` reports about one `Haar(G,S,T)`.
///
/// Orders are decimal strings so arbitrarily large groups serialize exactly.
/// Fields that need `Aut(G)` or element enumeration are `null` when a cap
/// prevented computing them.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub group_spec: String,
    pub s: Vec<String>,
    pub t: Vec<String>,
    pub n_vertices: usize,
    pub aut_order: String,
    pub is_hdr: bool,
    pub index_over_g: String,
    pub xy_size: Option<usize>,
    pub diagnostics: Diagnostics,
}

#[derive(Clone, Debug, Serialize)]
pub struct Diagnostics {
    pub aplus_order: String,
    pub index_aplus: String,
    pub vertex_transitive: bool,
    pub normalizer_formula: Option<bool>,
}

/// Turns limit errors into `None`.
fn soft<T>(r: Result<T, RepError>) -> Result<Option<T>, RepError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_inconclusive() => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn verify_report(g: &FiniteGroup, s: &Subset, t: &Subset) -> Result<VerifyReport, RepError> {
    check_universe(g, &[s, t])?;
    let solver = Solver::default();
    let aut = haar_aut_with(&solver, g, s, t)?;
    let order_g = BigUint::from(g.order());
    let cs = color_stabilizer_with(&haar_digraph(g, s, t), &solver)?;
    let xy_size = soft(compute_xy(g, s, t).map(|xy| xy.len()))?;
    let normalizer_formula = soft(verify_normalizer_formula(g, s, t))?;
    Ok(VerifyReport {
        group_spec: g.spec().unwrap_or("table").to_string(),
        s: s.names(g),
        t: t.names(g),
        n_vertices: 2 * g.order(),
        aut_order: aut.order().to_string(),
        is_hdr: aut.order() == order_g,
        index_over_g: (aut.order() / &order_g).to_string(),
        xy_size,
        diagnostics: Diagnostics {
            aplus_order: cs.aplus.order().to_string(),
            index_aplus: cs.index.to_string(),
            vertex_transitive: aut.is_transitive(),
            normalizer_formula,
        },
    })
}
