//! Checks on `Haar(G, R∪{1}, L∪{1})` for a DRR connection set `R`.

use num_bigint::BigUint;
use serde::Serialize;

use super::{check_universe, is_drr_with, RepError};
use crate::aut::{color_stabilizer_with, Solver};
use crate::digraph::haar_digraph;
use crate::group::{automorphisms, FiniteGroup, GroupAutomorphism, Subset};

/// A failed precondition of [`lemma_aplus_diagnostics`].
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum APlusViolation {
    #[error("R contains the identity")]
    IdentityInR,
    #[error("|R| = {r} is not below |G|/2 = {n}/2")]
    RTooLarge { r: usize, n: usize },
    #[error("L contains the identity")]
    IdentityInL,
    #[error("L meets R⁻¹")]
    LMeetsRInverse,
    #[error("|L| = {l} differs from |R| = {r}")]
    SizeMismatch { l: usize, r: usize },
    #[error("Cay(G,R) is not a DRR")]
    NotDrr,
}

#[derive(Clone, Debug, Serialize)]
pub struct APlusDiagnostics {
    /// `Γ⁺(v) ∩ Γ⁻(v)` is exactly the partner of `v`, for every vertex.
    pub neighborhood_ok: bool,
    /// `|Aut(Γ) : G| ≤ 2`.
    pub index_le_2: bool,
    /// `|Aut(Γ)| = |G|`, decided by a full solve.
    pub hdr: bool,
    /// The first `α` (in table order) with `Rᵅ = L`.
    #[serde(serialize_with = "serialize_aut")]
    pub alpha_witness: Option<GroupAutomorphism>,
    /// The first `α` with both `Rᵅ = L` and `Lᵅ = R`; exactly these make
    /// `σ_{α,1}` an automorphism.
    #[serde(serialize_with = "serialize_aut")]
    pub swap_witness: Option<GroupAutomorphism>,
    /// The part-preserving automorphisms are exactly `ρ(G)`.
    pub aplus_is_g: bool,
    #[serde(serialize_with = "serialize_big")]
    pub aut_order: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub aplus_order: BigUint,
}

fn serialize_aut<S: serde::Serializer>(a: &Option<GroupAutomorphism>, s: S) -> Result<S::Ok, S::Error> {
    match a {
        Some(a) => s.collect_seq(a.map()),
        None => s.serialize_none(),
    }
}

fn serialize_big<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn check_preconditions(solver: &Solver, g: &FiniteGroup, r: &Subset, l: &Subset) -> Result<(), RepError> {
    check_universe(g, &[r, l])?;
    let one = g.identity();
    let n = g.order();
    let violation = if r.contains(one) {
        Some(APlusViolation::IdentityInR)
    } else if 2 * r.len() >= n {
        Some(APlusViolation::RTooLarge { r: r.len(), n })
    } else if l.contains(one) {
        Some(APlusViolation::IdentityInL)
    } else if !l.is_disjoint(&r.inverse(g)) {
        Some(APlusViolation::LMeetsRInverse)
    } else if l.len() != r.len() {
        Some(APlusViolation::SizeMismatch { l: l.len(), r: r.len() })
    } else if !is_drr_with(solver, g, r)? {
        Some(APlusViolation::NotDrr)
    } else {
        None
    };
    match violation {
        Some(v) => Err(v.into()),
        None => Ok(()),
    }
}

pub fn lemma_aplus_diagnostics(g: &FiniteGroup, r: &Subset, l: &Subset) -> Result<APlusDiagnostics, RepError> {
    lemma_aplus_diagnostics_with(&Solver::default(), g, r, l)
}

pub fn lemma_aplus_diagnostics_with(
    solver: &Solver,
    g: &FiniteGroup,
    r: &Subset,
    l: &Subset,
) -> Result<APlusDiagnostics, RepError> {
    check_preconditions(solver, g, r, l)?;
    let one = g.identity();
    let h = haar_digraph(g, &r.with(one), &l.with(one));
    let d = &h.digraph;
    let neighborhood_ok = (0..d.n_vertices() as u32).all(|v| {
        let both: Vec<u32> =
            d.out_neighbors(v).iter().copied().filter(|&u| d.has_arc(u, v)).collect();
        both == [h.partner(v)]
    });
    let cs = color_stabilizer_with(&h, solver)?;
    let order_g = BigUint::from(g.order());
    let aut_order = cs.full.order();
    let aplus_order = cs.aplus.order();
    let auts = automorphisms(g)?;
    let alpha_witness = auts.iter().find(|a| r.image(a) == *l).cloned();
    let swap_witness = auts.iter().find(|a| r.image(a) == *l && l.image(a) == *r).cloned();
    Ok(APlusDiagnostics {
        neighborhood_ok,
        index_le_2: aut_order <= &order_g * 2u32,
        hdr: aut_order == order_g,
        alpha_witness,
        swap_witness,
        aplus_is_g: aplus_order == order_g,
        aut_order,
        aplus_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn diag(spec: &str, r: &str, l: &str) -> Result<APlusDiagnostics, RepError> {
        let g = build_group(spec).unwrap();
        lemma_aplus_diagnostics(&g, &g.parse_subset(r).unwrap(), &g.parse_subset(l).unwrap())
    }

    #[test]
    fn cyclic_examples() {
        let d = diag("cyclic:4", "a", "a^2").unwrap();
        assert!(d.neighborhood_ok && d.index_le_2 && d.aplus_is_g);
        assert!(d.hdr && d.alpha_witness.is_none());
        let d = diag("cyclic:6", "a", "a^3").unwrap();
        assert!(d.hdr && d.alpha_witness.is_none() && d.aplus_is_g);
    }

    #[test]
    fn cyclic_five_alpha_witness() {
        let g = build_group("cyclic:5").unwrap();
        let d = diag("cyclic:5", "a", "a^2").unwrap();
        let w = d.alpha_witness.expect("a ↦ a² maps {a} to {a²}");
        assert_eq!(w.apply(g.parse_element("a").unwrap()), g.parse_element("a^2").unwrap());
        assert!(d.neighborhood_ok && d.index_le_2 && d.aplus_is_g);
        // a ↦ a² sends a² to a⁴, so no α swaps R and L and Γ is an HDR
        assert!(d.swap_witness.is_none());
        assert!(d.hdr);
        assert_eq!(d.hdr, d.swap_witness.is_none());
    }

    #[test]
    fn precondition_errors_name_the_condition() {
        let v = |r: Result<APlusDiagnostics, RepError>| match r {
            Err(RepError::Precondition(v)) => v,
            other => panic!("{other:?}"),
        };
        assert_eq!(v(diag("cyclic:5", "1", "a")), APlusViolation::IdentityInR);
        assert_eq!(v(diag("cyclic:4", "a,a^2", "a^3")), APlusViolation::RTooLarge { r: 2, n: 4 });
        assert_eq!(v(diag("cyclic:5", "a", "1")), APlusViolation::IdentityInL);
        assert_eq!(v(diag("cyclic:5", "a", "a^4")), APlusViolation::LMeetsRInverse);
        assert_eq!(v(diag("cyclic:7", "a", "a^2,a^3")), APlusViolation::SizeMismatch { l: 2, r: 1 });
        assert_eq!(v(diag("cyclic:7", "a^2,a^5", "a,a^3")), APlusViolation::NotDrr);
    }
}
