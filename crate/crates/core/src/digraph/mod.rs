//! Digraphs with optional vertex colors, plus the Cayley and Haar builders.

mod haar;

pub use haar::{
    cayley_digraph, haar_digraph, lift_permutation, right_translation, special_map, HaarDigraph,
    MapKind, Side, SpecialMap,
};

use std::fmt::Write as _;

use crate::perm::Perm;

pub type Vertex = u32;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum DigraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("edge list line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("expected {expected} colors, got {got}")]
    ColorCount { expected: usize, got: usize },
    #[error("a digraph needs at least one vertex")]
    Empty,
}

/// A digraph on `0..n` with dense adjacency and an optional coloring.
///
/// Loops are allowed; parallel arcs collapse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
    matrix: Vec<u64>,
    colors: Option<Vec<u32>>,
}

impl Digraph {
    pub fn new(
        n: usize,
        arcs: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, DigraphError> {
        if n == 0 {
            return Err(DigraphError::Empty);
        }
        let words = (n * n).div_ceil(64);
        let mut matrix = vec![0u64; words];
        let mut out_adj = vec![Vec::new(); n];
        for (u, v) in arcs {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(DigraphError::VertexOutOfRange { vertex: x as u64, n });
                }
            }
            let bit = u as usize * n + v as usize;
            if matrix[bit / 64] >> (bit % 64) & 1 == 0 {
                matrix[bit / 64] |= 1 << (bit % 64);
                out_adj[u as usize].push(v);
            }
        }
        let mut in_adj = vec![Vec::new(); n];
        for adj in &mut out_adj {
            adj.sort_unstable();
        }
        for (u, adj) in out_adj.iter().enumerate() {
            for &v in adj {
                in_adj[v as usize].push(u as Vertex);
            }
        }
        Ok(Digraph { n, out_adj, in_adj, matrix, colors: None })
    }

    pub fn with_colors(mut self, colors: Vec<u32>) -> Result<Self, DigraphError> {
        if colors.len() != self.n {
            return Err(DigraphError::ColorCount { expected: self.n, got: colors.len() });
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn without_colors(&self) -> Digraph {
        Digraph { colors: None, ..self.clone() }
    }

    #[inline]
    pub fn n_vertices(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v as usize]
    }

    #[inline]
    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v as usize]
    }

    #[inline]
    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        let bit = u as usize * self.n + v as usize;
        self.matrix[bit / 64] >> (bit % 64) & 1 == 1
    }

    pub fn colors(&self) -> Option<&[u32]> {
        self.colors.as_deref()
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    /// Arcs sorted lexicographically.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().map(move |&v| (u as Vertex, v)))
    }

    /// `(Γ⁺(v), Γ⁻(v))`, both sorted.
    pub fn neighborhoods(&self, v: Vertex) -> Result<(Vec<Vertex>, Vec<Vertex>), DigraphError> {
        if v as usize >= self.n {
            return Err(DigraphError::VertexOutOfRange { vertex: v as u64, n: self.n });
        }
        let mut ins = self.in_adj[v as usize].clone();
        ins.sort_unstable();
        Ok((self.out_adj[v as usize].clone(), ins))
    }

    /// Whether `p` maps arcs onto arcs (and, if asked, preserves colors).
    pub fn is_automorphism(&self, p: &Perm, respect_colors: bool) -> bool {
        if p.degree() != self.n {
            return false;
        }
        if respect_colors {
            if let Some(c) = &self.colors {
                if (0..self.n as Vertex).any(|v| c[v as usize] != c[p.apply(v) as usize]) {
                    return false;
                }
            }
        }
        self.arcs().all(|(u, v)| self.has_arc(p.apply(u), p.apply(v)))
    }

    /// The edge-list text format: a `digraph N` header, an optional
    /// `colors ...` line, then one sorted `u v` line per arc.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("digraph {}\n", self.n);
        if let Some(c) = &self.colors {
            out.push_str("colors");
            for x in c {
                write!(out, " {x}").unwrap();
            }
            out.push('\n');
        }
        for (u, v) in self.arcs() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Self, DigraphError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let parse_err = |line: usize, reason: &str| DigraphError::Parse { line: line + 1, reason: reason.into() };
        let (i, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        let n: usize = header
            .trim()
            .strip_prefix("digraph")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| parse_err(i, "expected `digraph <n>`"))?;
        let mut colors = None;
        let mut arcs = Vec::new();
        for (i, line) in lines {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("colors") {
                if colors.is_some() || !arcs.is_empty() {
                    return Err(parse_err(i, "colors line must directly follow the header"));
                }
                let c: Result<Vec<u32>, _> = rest.split_whitespace().map(str::parse).collect();
                colors = Some(c.map_err(|_| parse_err(i, "bad color"))?);
                continue;
            }
            let mut it = line.split_whitespace().map(str::parse::<Vertex>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => arcs.push((u, v)),
                _ => return Err(parse_err(i, "expected `u v`")),
            }
        }
        let d = Digraph::new(n, arcs)?;
        match colors {
            Some(c) => d.with_colors(c),
            None => Ok(d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Digraph {
        Digraph::new(n, (0..n as u32).map(|i| (i, (i + 1) % n as u32))).unwrap()
    }

    #[test]
    fn in_adjacency_is_transpose() {
        let d = Digraph::new(4, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 3)]).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(d.has_arc(u, v), d.out_neighbors(u).contains(&v));
                assert_eq!(d.has_arc(u, v), d.in_neighbors(v).contains(&u));
            }
        }
    }

    #[test]
    fn neighborhoods_of_directed_triangle() {
        let d = cycle(3);
        assert_eq!(d.neighborhoods(0).unwrap(), (vec![1], vec![2]));
        assert!(matches!(d.neighborhoods(3), Err(DigraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn edge_list_format_is_exact() {
        let d = Digraph::new(3, [(2, 0), (0, 1), (1, 2)]).unwrap().with_colors(vec![0, 0, 1]).unwrap();
        let text = d.to_edge_list();
        assert_eq!(text, "digraph 3\ncolors 0 0 1\n0 1\n1 2\n2 0\n");
        assert_eq!(Digraph::from_edge_list(&text).unwrap(), d);
        assert_eq!(cycle(2).to_edge_list(), "digraph 2\n0 1\n1 0\n");
    }

    #[test]
    fn edge_list_errors() {
        assert!(Digraph::from_edge_list("").is_err());
        assert!(Digraph::from_edge_list("graph 3\n").is_err());
        assert!(Digraph::from_edge_list("digraph 2\n0 5\n").is_err());
        assert!(Digraph::from_edge_list("digraph 2\n0 1 1\n").is_err());
        assert!(Digraph::from_edge_list("digraph 2\ncolors 0\n").is_err());
    }

    #[test]
    fn automorphism_check() {
        let d = cycle(4);
        let rot = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let flip = Perm::from_cycles(4, &[&[1, 3]]).unwrap();
        assert!(d.is_automorphism(&rot, true));
        assert!(!d.is_automorphism(&flip, true));
        let colored = d.with_colors(vec![0, 1, 0, 1]).unwrap();
        assert!(!colored.is_automorphism(&rot, true));
        assert!(colored.is_automorphism(&rot, false));
    }
}
