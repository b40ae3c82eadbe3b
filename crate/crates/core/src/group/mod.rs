//! Finite groups given by explicit multiplication tables.
//!
//! Elements are dense indices `0..n` and the identity is always index 0.
//! Groups are built from a small spec language (see [`build_group`]) and
//! are immutable afterwards.

mod automorphism;
mod spec;
mod subset;
mod words;

pub use automorphism::{automorphisms, automorphisms_with, AutConfig, GroupAutomorphism};
pub use spec::{build_group, build_group_with_cap, DEFAULT_ORDER_CAP};
pub use subset::Subset;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Element index inside a [`FiniteGroup`].
pub type Elem = u32;

/// Errors raised while building or querying groups.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed group spec {spec:?}: {reason}")]
    MalformedSpec { spec: String, reason: String },
    #[error("group order exceeds cap {cap}")]
    OrderCap { cap: usize },
    #[error("table is not a group: {0}")]
    NotAGroup(String),
    #[error("automorphism enumeration cap exceeded: {0}")]
    AutCap(String),
    #[error("cannot parse element word {word:?}: {reason}")]
    BadWord { word: String, reason: String },
}

/// A finite group stored as a full multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<Elem>,
    inv: Vec<Elem>,
    elt_order: Vec<u32>,
    generators: Vec<Elem>,
    gen_names: Vec<String>,
    names: Vec<String>,
    spec: Option<String>,
}

impl FiniteGroup {
    /// Builds a group from a row-major table where `mult[x * n + y] = x·y`.
    ///
    /// Every structural invariant is checked; associativity exhaustively when
    /// `n ≤ 64` and on 10⁴ seeded random triples otherwise.
    pub fn from_table(
        order: usize,
        mult: Vec<Elem>,
        generators: Vec<Elem>,
        gen_names: Vec<String>,
    ) -> Result<Self, GroupError> {
        let n = order;
        if n == 0 {
            return Err(GroupError::NotAGroup("empty group".into()));
        }
        if mult.len() != n * n {
            return Err(GroupError::NotAGroup("table has wrong size".into()));
        }
        if generators.len() != gen_names.len() {
            return Err(GroupError::NotAGroup("generator/name count mismatch".into()));
        }
        let mut seen = vec![0u32; n];
        for x in 0..n {
            let stamp = (x + 1) as u32;
            for y in 0..n {
                let z = mult[x * n + y] as usize;
                if z >= n || seen[z] == stamp {
                    return Err(GroupError::NotAGroup(format!("row {x} is not a permutation")));
                }
                seen[z] = stamp;
            }
        }
        let mut seen = vec![0u32; n];
        for y in 0..n {
            let stamp = (y + 1) as u32;
            for x in 0..n {
                let z = mult[x * n + y] as usize;
                if seen[z] == stamp {
                    return Err(GroupError::NotAGroup(format!("column {y} is not a permutation")));
                }
                seen[z] = stamp;
            }
        }
        for x in 0..n {
            if mult[x] as usize != x || mult[x * n] as usize != x {
                return Err(GroupError::NotAGroup("element 0 is not the identity".into()));
            }
        }
        let assoc = |x: usize, y: usize, z: usize| {
            let xy = mult[x * n + y] as usize;
            let yz = mult[y * n + z] as usize;
            mult[xy * n + z] == mult[x * n + yz]
        };
        if n <= 64 {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !assoc(x, y, z) {
                            return Err(GroupError::NotAGroup(format!(
                                "associativity fails at ({x},{y},{z})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..10_000 {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(x, y, z) {
                    return Err(GroupError::NotAGroup(format!(
                        "associativity fails at ({x},{y},{z})"
                    )));
                }
            }
        }
        let mut inv = vec![0; n];
        for x in 0..n {
            let row = &mult[x * n..(x + 1) * n];
            inv[x] = row.iter().position(|&z| z == 0).unwrap() as Elem;
        }
        let mut elt_order = vec![0u32; n];
        for x in 0..n {
            let mut k = 1;
            let mut p = x;
            while p != 0 {
                p = mult[p * n + x] as usize;
                k += 1;
            }
            elt_order[x] = k;
        }
        for &g in &generators {
            if g as usize >= n {
                return Err(GroupError::NotAGroup("generator out of range".into()));
            }
        }
        let mut group = FiniteGroup {
            order: n,
            mult,
            inv,
            elt_order,
            generators,
            gen_names,
            names: Vec::new(),
            spec: None,
        };
        if group.generated_subgroup(&group.generators.clone()).len() != n {
            return Err(GroupError::NotAGroup("named generators do not generate".into()));
        }
        group.names = words::render_all(&group);
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mult[x as usize * self.order + y as usize]
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inv[x as usize]
    }

    /// Least `k ≥ 1` with `x^k = 1`.
    #[inline]
    pub fn element_order(&self, x: Elem) -> u32 {
        self.elt_order[x as usize]
    }

    pub fn pow(&self, x: Elem, k: i64) -> Elem {
        let o = self.element_order(x) as i64;
        let k = k.rem_euclid(o);
        let mut p = 0;
        for _ in 0..k {
            p = self.mul(p, x);
        }
        p
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    /// Generators the group was built from, in name order.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    /// The spec string the group was built from, when known.
    pub fn spec(&self) -> Option<&str> {
        self.spec.as_deref()
    }

    pub(crate) fn set_spec(&mut self, spec: &str) {
        self.spec = Some(spec.to_string());
    }

    /// Display name of an element as a word in the generator names.
    pub fn name(&self, x: Elem) -> &str {
        &self.names[x as usize]
    }

    /// Parses a word such as `a^2*b`, `ab` or `1` against the generator names.
    pub fn parse_element(&self, word: &str) -> Result<Elem, GroupError> {
        words::parse_word(self, word)
    }

    /// Parses a comma-separated list of words into a subset.
    pub fn parse_subset(&self, list: &str) -> Result<Subset, GroupError> {
        let mut s = Subset::empty(self.order);
        for w in list.split(',').map(str::trim).filter(|w| !w.is_empty()) {
            s.insert(self.parse_element(w)?);
        }
        Ok(s)
    }

    /// Elements of the subgroup generated by `gens`, identity first.
    pub fn generated_subgroup(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut inside = vec![false; self.order];
        let mut out = vec![0];
        inside[0] = true;
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order as Elem;
        (0..n).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// True when `x² = 1` for every element.
    pub fn is_elementary_abelian_2(&self) -> bool {
        self.elt_order.iter().all(|&o| o <= 2)
    }

    /// A small generating set chosen greedily by decreasing element order.
    pub fn small_generating_set(&self) -> Vec<Elem> {
        let all: Vec<Elem> = self.elements().collect();
        self.greedy_generators(&all)
    }

    /// Greedy generating set for the subgroup whose elements are `members`.
    fn greedy_generators(&self, members: &[Elem]) -> Vec<Elem> {
        let mut candidates: Vec<Elem> = members.iter().copied().filter(|&x| x != 0).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut size = 1;
        for x in candidates {
            if size == members.len() {
                break;
            }
            if inside[x as usize] {
                continue;
            }
            gens.push(x);
            let sub = self.generated_subgroup(&gens);
            size = sub.len();
            for y in sub {
                inside[y as usize] = true;
            }
        }
        gens
    }

    /// Histogram of element orders as `(order, count)` pairs, ascending.
    pub fn order_histogram(&self) -> Vec<(u32, usize)> {
        let mut hist = std::collections::BTreeMap::new();
        for &o in &self.elt_order {
            *hist.entry(o).or_insert(0usize) += 1;
        }
        hist.into_iter().collect()
    }

    /// Extracts a subgroup (given as a closed set of elements) as its own group.
    ///
    /// Returns the group and the embedding map from new indices to old ones.
    pub fn subgroup(&self, members: &Subset) -> Result<(FiniteGroup, Vec<Elem>), GroupError> {
        let mut elems: Vec<Elem> = members.iter().collect();
        if elems.first() != Some(&0) {
            return Err(GroupError::NotAGroup("subgroup must contain the identity".into()));
        }
        elems.sort_unstable();
        let m = elems.len();
        let mut index = vec![u32::MAX; self.order];
        for (i, &e) in elems.iter().enumerate() {
            index[e as usize] = i as u32;
        }
        let mut mult = Vec::with_capacity(m * m);
        for &x in &elems {
            for &y in &elems {
                let z = index[self.mul(x, y) as usize];
                if z == u32::MAX {
                    return Err(GroupError::NotAGroup("set is not closed".into()));
                }
                mult.push(z);
            }
        }
        let gens: Vec<Elem> = self
            .greedy_generators(&elems)
            .into_iter()
            .map(|g| index[g as usize])
            .collect();
        let names = gens.iter().map(|&g| self.name(elems[g as usize]).to_string()).collect();
        let group = FiniteGroup::from_table(m, mult, gens, names)?;
        Ok((group, elems))
    }
}
