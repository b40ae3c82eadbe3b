//! Enumeration of `Aut(G)` by backtracking over generator images.

use super::{Elem, FiniteGroup, GroupError};

/// An automorphism of a [`FiniteGroup`], stored as its full image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutomorphism {
    map: Vec<Elem>,
}

impl GroupAutomorphism {
    pub fn identity(n: usize) -> Self {
        GroupAutomorphism { map: (0..n as Elem).collect() }
    }

    /// Validates `map` against the multiplication table.
    pub fn new(g: &FiniteGroup, map: Vec<Elem>) -> Result<Self, GroupError> {
        let n = g.order();
        if map.len() != n || map[0] != 0 {
            return Err(GroupError::NotAGroup("map must fix the identity".into()));
        }
        let mut hit = vec![false; n];
        for &y in &map {
            if y as usize >= n || std::mem::replace(&mut hit[y as usize], true) {
                return Err(GroupError::NotAGroup("map is not a bijection".into()));
            }
        }
        for x in g.elements() {
            for y in g.elements() {
                if map[g.mul(x, y) as usize] != g.mul(map[x as usize], map[y as usize]) {
                    return Err(GroupError::NotAGroup("map is not a homomorphism".into()));
                }
            }
        }
        Ok(GroupAutomorphism { map })
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &y)| i as Elem == y)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism { map: self.map.iter().map(|&x| other.apply(x)).collect() }
    }

    pub fn inverse(&self) -> GroupAutomorphism {
        let mut map = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y as usize] = x as Elem;
        }
        GroupAutomorphism { map }
    }
}

/// Limits for [`automorphisms_with`].
#[derive(Clone, Copy, Debug)]
pub struct AutConfig {
    /// Largest group order accepted.
    pub max_group_order: usize,
    /// Largest number of automorphisms materialized.
    pub max_count: usize,
}

impl Default for AutConfig {
    fn default() -> Self {
        AutConfig { max_group_order: 256, max_count: 1_000_000 }
    }
}

/// All automorphisms of `g` with the default limits.
pub fn automorphisms(g: &FiniteGroup) -> Result<Vec<GroupAutomorphism>, GroupError> {
    automorphisms_with(g, AutConfig::default())
}

pub fn automorphisms_with(
    g: &FiniteGroup,
    config: AutConfig,
) -> Result<Vec<GroupAutomorphism>, GroupError> {
    let n = g.order();
    if n > config.max_group_order {
        return Err(GroupError::AutCap(format!(
            "group order {n} exceeds {}",
            config.max_group_order
        )));
    }
    let gens = g.small_generating_set();
    if gens.is_empty() {
        return Ok(vec![GroupAutomorphism::identity(n)]);
    }
    // BFS spanning lists of H_j = <g_0..g_j>: (element, parent, generator slot)
    let spans: Vec<Vec<(Elem, Elem, usize)>> = (0..gens.len())
        .map(|j| {
            let mut inside = vec![false; n];
            inside[0] = true;
            let mut list = vec![(0, 0, usize::MAX)];
            let mut i = 0;
            while i < list.len() {
                let x = list[i].0;
                for (s, &gen) in gens[..=j].iter().enumerate() {
                    let y = g.mul(x, gen);
                    if !inside[y as usize] {
                        inside[y as usize] = true;
                        list.push((y, x, s));
                    }
                }
                i += 1;
            }
            list
        })
        .collect();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&x| g.elements().filter(|&y| g.element_order(y) == g.element_order(x)).collect())
        .collect();

    let mut search = Backtrack {
        g,
        gens: &gens,
        spans: &spans,
        candidates: &candidates,
        images: vec![0; gens.len()],
        map: vec![Elem::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
        max_count: config.max_count,
    };
    search.run(0)?;
    let mut found = search.found;
    found.sort();
    Ok(found)
}

struct Backtrack<'a> {
    g: &'a FiniteGroup,
    gens: &'a [Elem],
    spans: &'a [Vec<(Elem, Elem, usize)>],
    candidates: &'a [Vec<Elem>],
    images: Vec<Elem>,
    map: Vec<Elem>,
    used: Vec<bool>,
    found: Vec<GroupAutomorphism>,
    max_count: usize,
}

impl Backtrack<'_> {
    fn run(&mut self, j: usize) -> Result<(), GroupError> {
        if j == self.gens.len() {
            if self.found.len() == self.max_count {
                return Err(GroupError::AutCap(format!(
                    "more than {} automorphisms",
                    self.max_count
                )));
            }
            self.found.push(GroupAutomorphism { map: self.map.clone() });
            return Ok(());
        }
        for c in 0..self.candidates[j].len() {
            self.images[j] = self.candidates[j][c];
            if self.consistent(j) {
                self.run(j + 1)?;
            }
        }
        Ok(())
    }

    /// Whether `g_s ↦ images[s]` (s ≤ j) extends to an injective homomorphism
    /// on `H_j`; leaves the extension in `self.map`.
    fn consistent(&mut self, j: usize) -> bool {
        let g = self.g;
        self.map.fill(Elem::MAX);
        self.used.fill(false);
        let span = &self.spans[j];
        self.map[0] = 0;
        self.used[0] = true;
        for &(y, parent, s) in &span[1..] {
            let img = g.mul(self.map[parent as usize], self.images[s]);
            if self.used[img as usize] {
                return false;
            }
            self.used[img as usize] = true;
            self.map[y as usize] = img;
        }
        for &(x, _, _) in span {
            let mx = self.map[x as usize];
            for s in 0..=j {
                let y = g.mul(x, self.gens[s]);
                if self.map[y as usize] != g.mul(mx, self.images[s]) {
                    return false;
                }
            }
        }
        true
    }
}
