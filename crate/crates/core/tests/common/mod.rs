//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use haarrep::digraph::Digraph;

/// Counts vertex permutations preserving arcs, non-arcs and colors by
/// extending partial maps one vertex at a time. It uses nothing from the solver.
pub fn brute_force_aut_count(n: usize, arcs: &[(u32, u32)], colors: Option<&[u32]>) -> u64 {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in arcs {
        adj[u as usize][v as usize] = true;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(k: usize, n: usize, adj: &[Vec<bool>], colors: Option<&[u32]>, image: &mut [usize], used: &mut [bool]) -> u64 {
        if k == n {
            return 1;
        }
        let mut total = 0;
        for c in 0..n {
            if used[c] || colors.is_some_and(|col| col[c] != col[k]) {
                continue;
            }
            let consistent = (0..k).all(|j| adj[j][k] == adj[image[j]][c] && adj[k][j] == adj[c][image[j]])
                && adj[k][k] == adj[c][c];
            if consistent {
                image[k] = c;
                used[c] = true;
                total += go(k + 1, n, adj, colors, image, used);
                used[c] = false;
            }
        }
        total
    }
    go(0, n, &adj, colors, &mut image, &mut used)
}

pub fn brute_force_digraph(d: &Digraph, respect_colors: bool) -> u64 {
    let arcs: Vec<(u32, u32)> = d.arcs().collect();
    let colors = if respect_colors { d.colors() } else { None };
    brute_force_aut_count(d.n_vertices(), &arcs, colors)
}

#[test]
fn oracle_sanity() {
    assert_eq!(brute_force_aut_count(3, &[(0, 1), (1, 2), (2, 0)], None), 3);
    assert_eq!(brute_force_aut_count(4, &[], None), 24);
    assert_eq!(brute_force_aut_count(4, &[], Some(&[0, 0, 1, 1])), 4);
    assert_eq!(brute_force_aut_count(2, &[(0, 0)], None), 1);
}
