//! Individualization–refinement search for digraph automorphisms.

use super::partition::Partition;
use super::permgroup::{PermutationGroup, UnionFind};
use crate::digraph::{Digraph, Vertex};
use crate::perm::Perm;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("digraph has {n} vertices, above the solver cap {cap}")]
    VertexCap { n: usize, cap: usize },
    #[error("search budget of {budget} nodes exhausted")]
    Budget { budget: u64 },
    #[error("supplied automorphism #{0} does not preserve the digraph")]
    BadKnown(usize),
    #[error("chain order {chain} disagrees with closure count {closure}")]
    CrossCheck { chain: String, closure: String },
}

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    pub max_vertices: usize,
    /// Largest number of search-tree nodes expanded per solve.
    pub node_budget: u64,
    /// Recompute the order by Schreier–Sims, and by naive closure when the
    /// order is at most 10⁴, and fail on disagreement.
    pub cross_check: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { max_vertices: 512, node_budget: 20_000_000, cross_check: false }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions<'a> {
    /// Restrict to automorphisms preserving the digraph's colors, if any.
    pub respect_colors: bool,
    /// Automorphisms already known; used for pruning and kept as generators.
    pub known: &'a [Perm],
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub group: PermutationGroup,
    pub nodes: u64,
}

#[derive(Clone, Debug, Default)]
pub struct Solver {
    pub config: SolverConfig,
}

const CLOSURE_CHECK_LIMIT: usize = 10_000;

impl Solver {
    pub fn new(config: SolverConfig) -> Self {
        Solver { config }
    }

    pub fn solve(&self, d: &Digraph, opts: &SolveOptions<'_>) -> Result<Solution, SolverError> {
        let n = d.n_vertices();
        if n > self.config.max_vertices {
            return Err(SolverError::VertexCap { n, cap: self.config.max_vertices });
        }
        let mut gens = Vec::new();
        for (i, p) in opts.known.iter().enumerate() {
            if !d.is_automorphism(p, opts.respect_colors) {
                return Err(SolverError::BadKnown(i));
            }
            if !p.is_identity() && !gens.contains(p) {
                gens.push(p.clone());
            }
        }
        let root = match (opts.respect_colors, d.colors()) {
            (true, Some(c)) => Partition::by_colors(c),
            _ => Partition::unit(n),
        };
        let mut search = Search {
            d,
            respect_colors: opts.respect_colors,
            budget: self.config.node_budget,
            nodes: 0,
            first: Vec::new(),
            leaf: Vec::new(),
            gens,
        };
        let base = search.run(root)?;
        let nodes = search.nodes;
        let group = PermutationGroup::from_strong_generators(n, &base, search.gens);
        if self.config.cross_check {
            let ss = PermutationGroup::from_generators(n, group.generators().to_vec());
            if ss.order() != group.order() {
                return Err(SolverError::CrossCheck {
                    chain: group.order().to_string(),
                    closure: ss.order().to_string(),
                });
            }
            if group.order_u64().is_some_and(|o| o <= CLOSURE_CHECK_LIMIT as u64) {
                let closure = group.closure_order(CLOSURE_CHECK_LIMIT);
                if closure.map(|c| c as u64) != group.order_u64() {
                    return Err(SolverError::CrossCheck {
                        chain: group.order().to_string(),
                        closure: closure.map_or("overflow".into(), |c| c.to_string()),
                    });
                }
            }
        }
        Ok(Solution { group, nodes })
    }
}

struct FirstNode {
    partition: Partition,
    hash: u64,
    target: Option<(u32, u32)>,
}

struct Search<'a> {
    d: &'a Digraph,
    respect_colors: bool,
    budget: u64,
    nodes: u64,
    first: Vec<FirstNode>,
    leaf: Vec<Vertex>,
    gens: Vec<Perm>,
}

impl Search<'_> {
    /// Runs the search and returns the base (the first-path vertices).
    fn run(&mut self, mut root: Partition) -> Result<Vec<Vertex>, SolverError> {
        let hash = root.refine_all(self.d);
        let mut base = Vec::new();
        let mut node = root;
        let mut h = hash;
        loop {
            let target = node.target_cell();
            self.first.push(FirstNode { partition: node.clone(), hash: h, target });
            let Some((start, _)) = target else { break };
            let b = node.cell_members(start)[0];
            base.push(b);
            h = node.individualize(self.d, b);
            self.tick()?;
        }
        self.leaf = node.elems().to_vec();

        for k in (0..base.len()).rev() {
            let prefix = &base[..k];
            let (start, _) = self.first[k].target.expect("non-leaf on the first path");
            let cell = self.first[k].partition.cell_members(start);
            let mut failed: Vec<Vertex> = Vec::new();
            let mut uf = self.orbit_partition(prefix);
            for &v in &cell {
                if v == base[k] || uf.find(v) == uf.find(base[k]) {
                    continue;
                }
                if failed.iter().any(|&f| uf.find(f) == uf.find(v)) {
                    continue;
                }
                let mut path = prefix.to_vec();
                path.push(v);
                match self.explore_child(&self.first[k].partition.clone(), k, &mut path)? {
                    Some(gamma) => {
                        self.gens.push(gamma);
                        uf = self.orbit_partition(prefix);
                    }
                    None => failed.push(v),
                }
            }
        }
        Ok(base)
    }

    fn tick(&mut self) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolverError::Budget { budget: self.budget });
        }
        Ok(())
    }

    /// Orbits of the known generators that fix every point of `prefix`.
    fn orbit_partition(&self, prefix: &[Vertex]) -> UnionFind {
        let mut uf = UnionFind::new(self.d.n_vertices());
        for g in &self.gens {
            if prefix.iter().all(|&x| g.fixes(x)) {
                uf.union_perm(g);
            }
        }
        uf
    }

    /// Individualizes the last vertex of `path` in `parent` (a node at
    /// `depth`) and searches the resulting subtree for a leaf equivalent to
    /// the first leaf.
    fn explore_child(
        &mut self,
        parent: &Partition,
        depth: usize,
        path: &mut Vec<Vertex>,
    ) -> Result<Option<Perm>, SolverError> {
        self.tick()?;
        let mut child = parent.clone();
        let h = child.individualize(self.d, *path.last().unwrap());
        let reference = &self.first[depth + 1];
        if h != reference.hash || child.num_cells() != reference.partition.num_cells() {
            return Ok(None);
        }
        let target = child.target_cell();
        if target != reference.target {
            return Ok(None);
        }
        let Some((start, _)) = target else {
            return Ok(self.leaf_automorphism(&child));
        };
        let cell = child.cell_members(start);
        let mut uf = self.orbit_partition(path);
        let mut tried: Vec<Vertex> = Vec::new();
        for &w in &cell {
            let r = uf.find(w);
            if tried.contains(&r) {
                continue;
            }
            tried.push(r);
            path.push(w);
            let found = self.explore_child(&child, depth + 1, path)?;
            path.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn leaf_automorphism(&self, leaf: &Partition) -> Option<Perm> {
        let mut images = vec![0; self.leaf.len()];
        for (&z, &l) in self.leaf.iter().zip(leaf.elems()) {
            images[z as usize] = l;
        }
        let gamma = Perm::from_images_unchecked(images);
        self.d.is_automorphism(&gamma, self.respect_colors).then_some(gamma)
    }
}
