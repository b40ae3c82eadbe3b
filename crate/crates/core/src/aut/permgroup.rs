//! Permutation groups with a base and a strong generating set.
//!
//! Each chain level stores a Schreier vector: for every orbit point, the
//! strong generator that first reached it. Coset representatives are
//! recovered by tracing back to the base point.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::perm::Perm;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<u32>,
    parent: Vec<u32>,
    orbit: Vec<u32>,
}

impl Level {
    fn new(degree: usize, base: u32) -> Self {
        let mut parent = vec![NONE; degree];
        parent[base as usize] = ROOT;
        Level { base, gens: Vec::new(), parent, orbit: vec![base] }
    }
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("group order {order} exceeds the enumeration guard {guard}")]
pub struct GuardExceeded {
    pub order: BigUint,
    pub guard: u64,
}

/// A permutation group given by generators, with a stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Perm>,
    strong: Vec<Perm>,
    strong_inv: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermutationGroup {
    /// Builds the chain by deterministic Schreier–Sims.
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Self {
        let mut g = PermutationGroup {
            degree,
            generators: Vec::new(),
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        };
        for p in &generators {
            assert_eq!(p.degree(), degree, "generator degree mismatch");
            g.add_generator(0, p.clone());
        }
        g.generators = generators;
        g
    }

    /// Builds the chain directly from a base and a set of permutations that
    /// is already a strong generating set relative to that base: for each k,
    /// the members fixing `base[..k]` generate the pointwise stabilizer of
    /// `base[..k]`. The search in [`super::Solver`] produces exactly this.
    pub(crate) fn from_strong_generators(degree: usize, base: &[u32], generators: Vec<Perm>) -> Self {
        let strong_inv: Vec<Perm> = generators.iter().map(Perm::inverse).collect();
        let mut levels = Vec::with_capacity(base.len());
        for (k, &b) in base.iter().enumerate() {
            let mut level = Level::new(degree, b);
            level.gens = (0..generators.len() as u32)
                .filter(|&i| base[..k].iter().all(|&x| generators[i as usize].fixes(x)))
                .collect();
            let mut i = 0;
            while i < level.orbit.len() {
                let p = level.orbit[i];
                for &s in &level.gens {
                    let q = generators[s as usize].apply(p);
                    if level.parent[q as usize] == NONE {
                        level.parent[q as usize] = s;
                        level.orbit.push(q);
                    }
                }
                i += 1;
            }
            levels.push(level);
        }
        PermutationGroup { degree, strong: generators.clone(), strong_inv, generators, levels }
    }

    /// Adds `p` as a generator unless it is already a member; returns
    /// whether the group grew.
    pub fn push_generator(&mut self, p: Perm) -> bool {
        assert_eq!(p.degree(), self.degree, "generator degree mismatch");
        if self.contains(&p) {
            return false;
        }
        self.add_generator(0, p.clone());
        self.generators.push(p);
        true
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Orbit lengths of the chain, one per base point.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().map(|l| BigUint::from(l.orbit.len())).product()
    }

    /// The order, when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.sift(0, p.clone()).is_some_and(|r| r.is_identity())
    }

    /// Orbits of the generators on points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Every element, provided the order is at most `guard`.
    pub fn elements(&self, guard: u64) -> Result<Vec<Perm>, GuardExceeded> {
        let mut out = Vec::new();
        self.for_each_element(guard, |p| out.push(p.clone()))?;
        Ok(out)
    }

    /// Calls `f` on every element, provided the order is at most `guard`.
    pub fn for_each_element(&self, guard: u64, mut f: impl FnMut(&Perm)) -> Result<(), GuardExceeded> {
        match self.order_u64() {
            Some(o) if o <= guard => {}
            _ => return Err(GuardExceeded { order: self.order(), guard }),
        }
        let reps: Vec<Vec<Perm>> = (0..self.levels.len())
            .map(|k| self.levels[k].orbit.iter().map(|&p| self.coset_rep(k, p)).collect())
            .collect();
        // g = u_{m-1} · … · u_0 (left-to-right products) enumerates each element once
        fn walk(reps: &[Vec<Perm>], k: usize, acc: &Perm, f: &mut dyn FnMut(&Perm)) {
            if k == 0 {
                f(acc);
                return;
            }
            for u in &reps[k - 1] {
                walk(reps, k - 1, &acc.then(u), f);
            }
        }
        walk(&reps, reps.len(), &Perm::identity(self.degree), &mut f);
        Ok(())
    }

    /// Size of the naive closure of the generators, or `None` past `limit`.
    /// Independent of the chain; used for cross-checks.
    pub fn closure_order(&self, limit: usize) -> Option<usize> {
        let id = Perm::identity(self.degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in &self.generators {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    queue.push(y);
                }
            }
        }
        Some(seen.len())
    }

    fn coset_rep(&self, k: usize, p: u32) -> Perm {
        let level = &self.levels[k];
        let mut path = Vec::new();
        let mut pt = p;
        while pt != level.base {
            let s = level.parent[pt as usize];
            path.push(s);
            pt = self.strong_inv[s as usize].apply(pt);
        }
        let mut u = Perm::identity(self.degree);
        for &s in path.iter().rev() {
            u = u.then(&self.strong[s as usize]);
        }
        u
    }

    /// Divides `h` by the coset representative at level `k`, leaving an
    /// element that fixes the base point; `None` if `h` moves the base point
    /// outside the basic orbit.
    fn strip_level(&self, k: usize, mut h: Perm) -> Option<Perm> {
        let level = &self.levels[k];
        let mut pt = h.apply(level.base);
        if level.parent[pt as usize] == NONE {
            return None;
        }
        while pt != level.base {
            let s = level.parent[pt as usize] as usize;
            h = h.then(&self.strong_inv[s]);
            pt = self.strong_inv[s].apply(pt);
        }
        Some(h)
    }

    /// Sifts through levels `k..`; `None` when some level rejects.
    fn sift(&self, k: usize, mut h: Perm) -> Option<Perm> {
        for j in k..self.levels.len() {
            h = self.strip_level(j, h)?;
        }
        Some(h)
    }

    fn add_generator(&mut self, k: usize, g: Perm) {
        if g.is_identity() || self.sift(k, g.clone()).is_some_and(|r| r.is_identity()) {
            return;
        }
        if k == self.levels.len() {
            let base = (0..self.degree as u32).find(|&i| !g.fixes(i)).unwrap();
            self.levels.push(Level::new(self.degree, base));
        }
        let idx = self.strong.len() as u32;
        self.strong_inv.push(g.inverse());
        self.strong.push(g);
        self.levels[k].gens.push(idx);

        let old: Vec<u32> = self.levels[k].orbit.clone();
        let mut next = old.len();
        for p in old {
            self.process_pair(k, p, idx);
        }
        while next < self.levels[k].orbit.len() {
            let p = self.levels[k].orbit[next];
            let gens = self.levels[k].gens.clone();
            for s in gens {
                self.process_pair(k, p, s);
            }
            next += 1;
        }
    }

    fn process_pair(&mut self, k: usize, p: u32, s: u32) {
        let q = self.strong[s as usize].apply(p);
        if self.levels[k].parent[q as usize] == NONE {
            self.levels[k].parent[q as usize] = s;
            self.levels[k].orbit.push(q);
            return;
        }
        let h = self.coset_rep(k, p).then(&self.strong[s as usize]);
        let residue = self.strip_level(k, h).expect("q is in the orbit");
        if !residue.is_identity() {
            self.add_generator(k + 1, residue);
        }
    }
}

/// Point orbits of a set of permutations.
pub fn orbits_of(degree: usize, gens: &[Perm]) -> Vec<Vec<u32>> {
    let mut uf = UnionFind::new(degree);
    for g in gens {
        for i in 0..degree as u32 {
            uf.union(i, g.apply(i));
        }
    }
    uf.classes()
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    pub(crate) fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }

    pub(crate) fn union_perm(&mut self, p: &Perm) {
        for i in 0..p.degree() as u32 {
            self.union(i, p.apply(i));
        }
    }

    pub(crate) fn classes(&mut self) -> Vec<Vec<u32>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<u32>> = vec![Vec::new(); n];
        for i in 0..n as u32 {
            let r = self.find(i);
            by_root[r as usize].push(i);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[u32]) -> Perm {
        Perm::from_cycles(n, &[c]).unwrap()
    }

    #[test]
    fn symmetric_group_order() {
        for n in 2..8usize {
            let long: Vec<u32> = (0..n as u32).collect();
            let g = PermutationGroup::from_generators(n, vec![cyc(n, &long), cyc(n, &[0, 1])]);
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(g.order_u64(), Some(fact));
            assert_eq!(g.closure_order(10_000), Some(fact as usize));
        }
    }

    #[test]
    fn membership() {
        // the dihedral group of the square inside S4
        let g = PermutationGroup::from_generators(4, vec![cyc(4, &[0, 1, 2, 3]), cyc(4, &[1, 3])]);
        assert_eq!(g.order_u64(), Some(8));
        assert!(g.contains(&cyc(4, &[0, 2])));
        assert!(!g.contains(&cyc(4, &[0, 1])));
        let elems = g.elements(100).unwrap();
        assert_eq!(elems.len(), 8);
        assert_eq!(elems.iter().collect::<HashSet<_>>().len(), 8);
        assert!(elems.iter().all(|e| g.contains(e)));
        assert!(g.elements(7).is_err());
    }

    #[test]
    fn trivial_group() {
        let g = PermutationGroup::from_generators(5, vec![]);
        assert_eq!(g.order_u64(), Some(1));
        assert!(g.contains(&Perm::identity(5)));
        assert_eq!(g.orbits().len(), 5);
    }

    #[test]
    fn strong_generators_chain() {
        // S3 on {0,1,2} with base [0,1] and SGS {(0 1 2), (1 2)}
        let gens = vec![cyc(3, &[0, 1, 2]), cyc(3, &[1, 2])];
        let g = PermutationGroup::from_strong_generators(3, &[0, 1], gens);
        assert_eq!(g.basic_orbit_lengths(), vec![3, 2]);
        assert_eq!(g.order_u64(), Some(6));
        assert!(g.contains(&cyc(3, &[0, 1])));
    }

    #[test]
    fn large_order_is_exact() {
        let n = 30usize;
        let long: Vec<u32> = (0..n as u32).collect();
        let g = PermutationGroup::from_generators(n, vec![cyc(n, &long), cyc(n, &[0, 1])]);
        let fact: BigUint = (1..=n as u32).map(BigUint::from).product();
        assert_eq!(g.order(), fact);
        assert_eq!(g.order_u64(), None);
    }
}
