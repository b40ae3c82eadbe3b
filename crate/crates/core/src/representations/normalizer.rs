//! The sets `X` and `Y` of part-preserving and part-swapping maps that,
//! together with the translations, make up the normalizer of `ρ(G)`.

use std::collections::HashSet;

use super::{all_translations, check_universe, haar_aut_with, RepError};
use crate::aut::{normalizer_of_regular_image, Solver, ENUMERATION_GUARD};
use crate::digraph::{special_map, MapKind, SpecialMap};
use crate::group::{automorphisms, Elem, FiniteGroup, GroupAutomorphism, Subset};
use crate::perm::Perm;

/// `X = {(α,x) | Sᵅ = x⁻¹S, Tᵅ = Tx}` and `Y = {(α,y) | Sᵅ = y⁻¹T, Tᵅ = Sy}`.
#[derive(Clone, Debug)]
pub struct NormalizerStructure {
    pub x: Vec<(GroupAutomorphism, Elem)>,
    pub y: Vec<(GroupAutomorphism, Elem)>,
}

impl NormalizerStructure {
    /// `|X ∪ Y|`.
    pub fn len(&self) -> usize {
        self.x.len() + self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `δ_{α,x}` and `σ_{α,y}` vertex maps, `X` first.
    pub fn maps(&self, g: &FiniteGroup) -> Vec<SpecialMap> {
        let xs = self.x.iter().map(|(a, c)| special_map(g, a, MapKind::Delta, *c));
        let ys = self.y.iter().map(|(a, c)| special_map(g, a, MapKind::Sigma, *c));
        xs.chain(ys).collect()
    }
}

pub fn compute_xy(g: &FiniteGroup, s: &Subset, t: &Subset) -> Result<NormalizerStructure, RepError> {
    check_universe(g, &[s, t])?;
    let auts = automorphisms(g)?;
    Ok(compute_xy_with(g, &auts, s, t))
}

/// As [`compute_xy`] with `Aut(G)` supplied.
pub fn compute_xy_with(
    g: &FiniteGroup,
    auts: &[GroupAutomorphism],
    s: &Subset,
    t: &Subset,
) -> NormalizerStructure {
    let mut x = Vec::new();
    let mut y = Vec::new();
    for alpha in auts {
        let (sa, ta) = (s.image(alpha), t.image(alpha));
        for c in g.elements() {
            let ci = g.inv(c);
            if sa == s.left_mul(g, ci) && ta == t.right_mul(g, c) {
                x.push((alpha.clone(), c));
            }
            if sa == t.left_mul(g, ci) && ta == s.right_mul(g, c) {
                y.push((alpha.clone(), c));
            }
        }
    }
    NormalizerStructure { x, y }
}

/// Compares the normalizer of `ρ(G)` in `Aut(Haar(G,S,T))`, found by
/// enumeration, with `{ρ_g ℓ | g ∈ G, ℓ ∈ X ∪ Y}`, and checks that the
/// identity is the only member of `X ∪ Y` that is a translation.
///
/// Guard and solver limits surface as inconclusive errors.
pub fn verify_normalizer_formula(g: &FiniteGroup, s: &Subset, t: &Subset) -> Result<bool, RepError> {
    check_universe(g, &[s, t])?;
    let aut = haar_aut_with(&Solver::default(), g, s, t)?;
    let rho: Vec<Perm> = g.generators().iter().map(|&h| crate::digraph::right_translation(g, h)).collect();
    let normalizer = normalizer_of_regular_image(&aut, &rho, ENUMERATION_GUARD)?;
    let xy = compute_xy(g, s, t)?;
    let translations = all_translations(g);
    let translation_set: HashSet<&Perm> = translations.iter().collect();

    let maps = xy.maps(g);
    let mut across_g = 0;
    for m in &maps {
        if translation_set.contains(&m.perm) {
            if !m.perm.is_identity() {
                return Ok(false);
            }
            across_g += 1;
        }
    }
    if across_g != 1 {
        return Ok(false);
    }
    let mut product: HashSet<Perm> = HashSet::new();
    for r in &translations {
        for m in &maps {
            product.insert(r.then(&m.perm));
        }
    }
    let order = normalizer.order_u64().expect("bounded by the guard");
    Ok(product.len() as u64 == order && product.iter().all(|p| normalizer.contains(p)))
}
