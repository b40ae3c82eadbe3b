//! Choosing the second connection set `L` for `Haar(G, R∪{1}, L∪{1})`.

use std::collections::HashSet;

use serde::Serialize;

use super::SynthesisError;
use crate::group::{Elem, FiniteGroup, GroupAutomorphism, Subset};

/// `R = J ∪ K` with `K = R ∩ R⁻¹`, plus `H = G∖({1} ∪ R ∪ R⁻¹)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionPartition {
    pub j: Subset,
    pub k: Subset,
    pub h: Subset,
}

pub fn partition_connection_set(g: &FiniteGroup, r: &Subset) -> Result<ConnectionPartition, SynthesisError> {
    if r.contains(g.identity()) {
        return Err(SynthesisError::Precondition("R contains the identity".into()));
    }
    let rinv = r.inverse(g);
    let k = r.intersection(&rinv);
    let j = r.difference(&k);
    let h = Subset::full(g.order()).without(g.identity()).difference(&r.union(&rinv));
    Ok(ConnectionPartition { j, k, h })
}

/// Which shape produced `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LCase {
    #[serde(rename = "case-4")]
    Case4,
    #[serde(rename = "case-5")]
    Case5,
    #[serde(rename = "case-6a")]
    Case6a,
    #[serde(rename = "case-6b")]
    Case6b,
}

impl LCase {
    pub fn label(self) -> &'static str {
        match self {
            LCase::Case4 => "case-4",
            LCase::Case5 => "case-5",
            LCase::Case6a => "case-6a",
            LCase::Case6b => "case-6b",
        }
    }
}

/// The `k` least elements of `pool` (the least `k`-subset in mask order).
fn least(pool: impl Iterator<Item = Elem>, k: usize) -> Option<Vec<Elem>> {
    let v: Vec<Elem> = pool.take(k).collect();
    (v.len() == k).then_some(v)
}

/// Finds `L ⊆ G∖(R⁻¹∪{1})` with `|L| = |R|` that is not an `Aut(G)`-image of
/// `R`. Shapes are tried in the order case 5, 6a, 6b, then every admissible
/// set in mask order; each candidate is checked against all of `auts`.
pub fn choose_l(
    g: &FiniteGroup,
    auts: &[GroupAutomorphism],
    r: &Subset,
) -> Result<(Subset, LCase), SynthesisError> {
    let n = g.order();
    if 2 * r.len() + 1 >= n {
        return Err(SynthesisError::Precondition(format!("|R| = {} is not below (|G|−1)/2", r.len())));
    }
    let part = partition_connection_set(g, r)?;
    let images: HashSet<Subset> = auts.iter().map(|a| r.image(a)).collect();
    let valid = |l: &Subset| !images.contains(l);
    let j: Vec<Elem> = part.j.iter().collect();
    let ksize = part.k.len();

    // case 5: L = J ∪ U, U ⊆ H, |U| = |K|, x ∈ U with o(x) ≥ 3 and x⁻¹ ∉ U
    if ksize > 0 {
        for x in part.h.iter().filter(|&x| g.element_order(x) >= 3) {
            let xi = g.inv(x);
            let Some(rest) = least(part.h.iter().filter(|&y| y != x && y != xi), ksize - 1) else { continue };
            let l = part.j.union(&Subset::from_elems(n, rest)).with(x);
            if valid(&l) {
                return Ok((l, LCase::Case5));
            }
        }
    }
    // case 6 shapes count involutions, so U is drawn from the involutions of H
    let h2 = part.h.order_filter(g, 2);
    // case 6a: K holds an element of order ≥ 3; L = J ∪ U, U ⊆ H, |U| = |K|
    if part.k.iter().any(|x| g.element_order(x) >= 3) {
        if let Some(u) = least(h2.iter(), ksize) {
            let l = part.j.union(&Subset::from_elems(n, u));
            if valid(&l) {
                return Ok((l, LCase::Case6a));
            }
        }
    }
    // case 6b: x ∈ J, U ⊆ H, |U| = |K| + 1, L = U ∪ (J∖{x})
    if let Some(u) = least(h2.iter(), ksize + 1) {
        let u = Subset::from_elems(n, u);
        for &x in &j {
            let l = u.union(&part.j.without(x));
            if valid(&l) {
                return Ok((l, LCase::Case6b));
            }
        }
    }
    // case 4: every admissible L in mask order; at most |images| + 1 are visited
    let pool: Vec<Elem> = Subset::full(n).without(g.identity()).difference(&r.inverse(g)).iter().collect();
    let k = r.len();
    if k <= pool.len() {
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            let l = Subset::from_elems(n, c.iter().map(|&i| pool[i]));
            if valid(&l) {
                return Ok((l, LCase::Case4));
            }
            if !next_colex(&mut c, pool.len()) {
                break;
            }
        }
    }
    Err(SynthesisError::NoValidL)
}

/// Advances a sorted index combination to the next one in colex order,
/// which is increasing bitmask order.
pub(crate) fn next_colex(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    for i in 0..k {
        let limit = if i + 1 < k { c[i + 1] } else { m };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (t, slot) in c[..i].iter_mut().enumerate() {
                *slot = t;
            }
            return true;
        }
    }
    false
}
