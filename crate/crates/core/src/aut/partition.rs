//! Ordered partitions and counting refinement toward every cell.

use std::collections::VecDeque;

use crate::digraph::{Digraph, Vertex};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("vertex {0} appears in more than one cell or is out of range")]
    BadVertex(Vertex),
    #[error("cells cover {covered} of {n} vertices")]
    NotCovering { covered: usize, n: usize },
    #[error("empty cell")]
    EmptyCell,
}

/// An ordered partition of `0..n`.
///
/// Cells are contiguous ranges of `elems` and are identified by their start
/// index. Order of vertices inside a cell carries no meaning.
#[derive(Clone, Debug)]
pub struct Partition {
    elems: Vec<Vertex>,
    pos: Vec<u32>,
    cell: Vec<u32>,
    end: Vec<u32>,
    ncells: usize,
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.cells() == other.cells()
    }
}

impl Eq for Partition {}

impl Partition {
    /// The single-cell partition.
    pub fn unit(n: usize) -> Self {
        Self::from_cells(n, &[(0..n as Vertex).collect::<Vec<_>>()]).expect("unit partition is valid")
    }

    pub fn from_cells(n: usize, cells: &[Vec<Vertex>]) -> Result<Self, PartitionError> {
        let mut seen = vec![false; n];
        let mut elems = Vec::with_capacity(n);
        let mut cell = vec![0; n];
        let mut end = vec![0; n];
        for c in cells {
            if c.is_empty() {
                return Err(PartitionError::EmptyCell);
            }
            let start = elems.len() as u32;
            for &v in c {
                if v as usize >= n || std::mem::replace(&mut seen[v as usize], true) {
                    return Err(PartitionError::BadVertex(v));
                }
                elems.push(v);
                cell[v as usize] = start;
            }
            end[start as usize] = elems.len() as u32;
        }
        if elems.len() != n {
            return Err(PartitionError::NotCovering { covered: elems.len(), n });
        }
        let mut pos = vec![0; n];
        for (i, &v) in elems.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        Ok(Partition { elems, pos, cell, end, ncells: cells.len() })
    }

    /// Cells ordered by color value, each holding the vertices of one color.
    pub fn by_colors(colors: &[u32]) -> Self {
        let mut values: Vec<u32> = colors.to_vec();
        values.sort_unstable();
        values.dedup();
        let cells: Vec<Vec<Vertex>> = values
            .iter()
            .map(|&c| (0..colors.len() as Vertex).filter(|&v| colors[v as usize] == c).collect())
            .collect();
        Self::from_cells(colors.len(), &cells).expect("color classes partition the vertices")
    }

    pub fn n(&self) -> usize {
        self.elems.len()
    }

    pub fn num_cells(&self) -> usize {
        self.ncells
    }

    pub fn is_discrete(&self) -> bool {
        self.ncells == self.elems.len()
    }

    /// Cells in order, each sorted ascending.
    pub fn cells(&self) -> Vec<Vec<Vertex>> {
        self.starts()
            .map(|s| {
                let mut c = self.elems[s as usize..self.end[s as usize] as usize].to_vec();
                c.sort_unstable();
                c
            })
            .collect()
    }

    /// Index of the cell containing `v`.
    pub fn cell_index_of(&self, v: Vertex) -> usize {
        let target = self.cell[v as usize];
        self.starts().take_while(|&s| s < target).count()
    }

    pub(crate) fn elems(&self) -> &[Vertex] {
        &self.elems
    }

    fn starts(&self) -> impl Iterator<Item = u32> + '_ {
        let n = self.elems.len() as u32;
        std::iter::successors(Some(0u32), move |&s| {
            let e = self.end[s as usize];
            (e < n).then_some(e)
        })
        .take_while(move |&s| s < n)
    }

    /// `(start, size)` of the first largest non-singleton cell.
    pub(crate) fn target_cell(&self) -> Option<(u32, u32)> {
        let mut best: Option<(u32, u32)> = None;
        for s in self.starts() {
            let size = self.end[s as usize] - s;
            if size > 1 && best.is_none_or(|(_, b)| size > b) {
                best = Some((s, size));
            }
        }
        best
    }

    /// Members of the cell starting at `start`, ascending.
    pub(crate) fn cell_members(&self, start: u32) -> Vec<Vertex> {
        let mut c = self.elems[start as usize..self.end[start as usize] as usize].to_vec();
        c.sort_unstable();
        c
    }

    /// Splits `{v}` off the front of its cell and refines; returns the trace hash.
    pub(crate) fn individualize(&mut self, d: &Digraph, v: Vertex) -> u64 {
        let start = self.cell[v as usize];
        let end = self.end[start as usize];
        if end - start == 1 {
            return mix(TRACE_SEED, u64::from(start));
        }
        let p = self.pos[v as usize];
        let w = self.elems[start as usize];
        self.elems.swap(start as usize, p as usize);
        self.pos[w as usize] = p;
        self.pos[v as usize] = start;
        self.end[start as usize] = start + 1;
        self.end[start as usize + 1] = end;
        for i in start + 1..end {
            let u = self.elems[i as usize];
            self.cell[u as usize] = start + 1;
        }
        self.ncells += 1;
        let h = mix(TRACE_SEED, u64::from(start));
        mix(h, self.refine_from(d, [start]))
    }

    /// Refines with every cell as an initial splitter; returns the trace hash.
    pub(crate) fn refine_all(&mut self, d: &Digraph) -> u64 {
        let starts: Vec<u32> = self.starts().collect();
        self.refine_from(d, starts)
    }

    fn refine_from(&mut self, d: &Digraph, initial: impl IntoIterator<Item = u32>) -> u64 {
        let n = self.elems.len();
        let mut hash = TRACE_SEED;
        let mut in_queue = vec![false; n];
        let mut queue = VecDeque::new();
        for s in initial {
            in_queue[s as usize] = true;
            queue.push_back(s);
        }
        let mut count = vec![0u32; n];
        let mut touched: Vec<Vertex> = Vec::new();
        let mut touched_cells: Vec<u32> = Vec::new();
        while let Some(w) = queue.pop_front() {
            in_queue[w as usize] = false;
            if self.ncells == n {
                break;
            }
            let splitter = self.elems[w as usize..self.end[w as usize] as usize].to_vec();
            hash = mix(hash, u64::from(w) << 32 | splitter.len() as u64);
            for outward in [true, false] {
                for &u in &splitter {
                    // outward: count[v] = |Γ⁺(v) ∩ W|
                    let nbrs = if outward { d.in_neighbors(u) } else { d.out_neighbors(u) };
                    for &v in nbrs {
                        if count[v as usize] == 0 {
                            touched.push(v);
                        }
                        count[v as usize] += 1;
                    }
                }
                touched_cells.clear();
                touched_cells.extend(touched.iter().map(|&v| self.cell[v as usize]));
                touched_cells.sort_unstable();
                touched_cells.dedup();
                for &c in &touched_cells {
                    hash = self.split(c, &count, &mut in_queue, &mut queue, hash);
                }
                for &v in &touched {
                    count[v as usize] = 0;
                }
                touched.clear();
            }
        }
        hash
    }

    fn split(
        &mut self,
        start: u32,
        count: &[u32],
        in_queue: &mut [bool],
        queue: &mut VecDeque<u32>,
        mut hash: u64,
    ) -> u64 {
        let (s, e) = (start as usize, self.end[start as usize] as usize);
        if e - s == 1 {
            return mix(hash, u64::from(start) << 32 | u64::from(count[self.elems[s] as usize]));
        }
        self.elems[s..e].sort_unstable_by_key(|&v| count[v as usize]);
        let mut frags: Vec<(usize, usize)> = Vec::new();
        let mut i = s;
        while i < e {
            let c = count[self.elems[i] as usize];
            let mut j = i + 1;
            while j < e && count[self.elems[j] as usize] == c {
                j += 1;
            }
            hash = mix(hash, (i as u64) << 40 | ((j - i) as u64) << 20 | u64::from(c));
            frags.push((i, j));
            i = j;
        }
        if frags.len() == 1 {
            return hash;
        }
        for &(fs, fe) in &frags {
            self.end[fs] = fe as u32;
            for k in fs..fe {
                let v = self.elems[k];
                self.pos[v as usize] = k as u32;
                self.cell[v as usize] = fs as u32;
            }
        }
        self.ncells += frags.len() - 1;
        let skip = if in_queue[s] {
            s
        } else {
            // first largest fragment stays out of the queue
            let mut best = frags[0];
            for &f in &frags[1..] {
                if f.1 - f.0 > best.1 - best.0 {
                    best = f;
                }
            }
            best.0
        };
        for &(fs, _) in &frags {
            if fs != skip && !in_queue[fs] {
                in_queue[fs] = true;
                queue.push_back(fs as u32);
            }
        }
        hash
    }
}

const TRACE_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The coarsest equitable refinement of `p`: within each cell, every vertex
/// has the same number of out-neighbors and of in-neighbors in every cell.
pub fn refine(d: &Digraph, p: &Partition) -> Partition {
    assert_eq!(d.n_vertices(), p.n(), "partition size mismatch");
    let mut q = p.clone();
    q.refine_all(d);
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::haar_digraph;
    use crate::group::build_group;
    use proptest::prelude::*;

    fn is_equitable(d: &Digraph, p: &Partition) -> bool {
        let cells = p.cells();
        cells.iter().all(|c| {
            let profile = |v: Vertex| -> Vec<(usize, usize)> {
                cells
                    .iter()
                    .map(|t| {
                        let out = d.out_neighbors(v).iter().filter(|x| t.contains(x)).count();
                        let inn = d.in_neighbors(v).iter().filter(|x| t.contains(x)).count();
                        (out, inn)
                    })
                    .collect()
            };
            let first = profile(c[0]);
            c.iter().all(|&v| profile(v) == first)
        })
    }

    #[test]
    fn regular_digraph_stays_unit() {
        let d = Digraph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let r = refine(&d, &Partition::unit(5));
        assert_eq!(r.num_cells(), 1);
    }

    #[test]
    fn directed_path_becomes_discrete() {
        let d = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let r = refine(&d, &Partition::unit(3));
        assert!(r.is_discrete());
        let mut cells = r.cells();
        cells.sort();
        assert_eq!(cells, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn haar_with_unequal_degrees_splits_bipartition() {
        let g = build_group("cyclic:3").unwrap();
        let h = haar_digraph(&g, &g.parse_subset("1,a").unwrap(), &g.parse_subset("a").unwrap());
        let r = refine(&h.digraph, &Partition::unit(6));
        let mut cells = r.cells();
        cells.sort();
        assert_eq!(cells, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn from_cells_validation() {
        assert!(Partition::from_cells(3, &[vec![0, 1]]).is_err());
        assert!(Partition::from_cells(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_cells(2, &[vec![0, 1], vec![]]).is_err());
        let p = Partition::from_cells(3, &[vec![2], vec![0, 1]]).unwrap();
        assert_eq!(p.cell_index_of(2), 0);
        assert_eq!(p.cell_index_of(1), 1);
    }

    fn arb_digraph() -> impl Strategy<Value = Digraph> {
        (1usize..10).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                let arcs = (0..n * n).filter(|&i| bits[i]).map(|i| ((i / n) as Vertex, (i % n) as Vertex));
                Digraph::new(n, arcs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn refinement_is_equitable_and_idempotent(d in arb_digraph()) {
            let r = refine(&d, &Partition::unit(d.n_vertices()));
            prop_assert!(is_equitable(&d, &r));
            prop_assert_eq!(refine(&d, &r), r);
        }

        #[test]
        fn individualization_refines_to_equitable(d in arb_digraph(), v in 0u32..10) {
            let v = v % d.n_vertices() as u32;
            let mut p = refine(&d, &Partition::unit(d.n_vertices()));
            p.individualize(&d, v);
            prop_assert!(is_equitable(&d, &p));
            prop_assert!(p.cells().contains(&vec![v]));
        }
    }
}
