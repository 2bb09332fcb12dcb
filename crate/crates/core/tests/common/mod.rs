//! Shared corpus and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use chhf::generate;
use chhf::graph::Graph;

/// Named quasi-median graphs used across the suites.
pub fn qm_corpus() -> Vec<(String, Graph)> {
    let mut out = vec![
        ("Q2".to_string(), generate::hypercube(2).unwrap()),
        ("Q3".to_string(), generate::hypercube(3).unwrap()),
        ("Q4".to_string(), generate::hypercube(4).unwrap()),
        ("K3xK3".to_string(), generate::hamming(3, 2).unwrap()),
        ("K4xK4".to_string(), generate::hamming(4, 2).unwrap()),
        ("K3^3".to_string(), generate::hamming(3, 3).unwrap()),
        ("K4".to_string(), generate::complete(4)),
        ("P6".to_string(), generate::path(6)),
        ("K3xP3".to_string(), generate::cartesian_product(&generate::complete(3), &generate::path(3))),
    ];
    for k in 1..=5 {
        out.push((format!("glued{k}"), generate::glued_squares(k).unwrap()));
    }
    for seed in 0..6 {
        out.push((format!("tree{seed}"), generate::random_tree(8 + 4 * seed as usize, seed)));
    }
    out
}

/// Breadth-first distances; `u32::MAX` marks unreachable vertices.
pub fn bfs(g: &Graph, s: usize) -> Vec<u32> {
    let mut d = vec![u32::MAX; g.n()];
    d[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for v in g.vertices().filter(|&v| g.adjacent(u, v)) {
            if d[v] == u32::MAX {
                d[v] = d[u] + 1;
                queue.push_back(v);
            }
        }
    }
    d
}

pub fn all_pairs(g: &Graph) -> Vec<Vec<u32>> {
    g.vertices().map(|s| bfs(g, s)).collect()
}

/// Twice the Gromov δ from the Gromov-product form of the four-point
/// condition, scanning every base point and ordered triple.
pub fn doubled_delta(g: &Graph) -> u64 {
    let d = all_pairs(g);
    let n = g.n();
    let gp = |x: usize, y: usize, w: usize| -> i64 { i64::from(d[x][w]) + i64::from(d[y][w]) - i64::from(d[x][y]) };
    let mut best = 0i64;
    for w in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // 2(x|z)_w >= min(2(x|y)_w, 2(y|z)_w) - 2δ
                    let gap = gp(x, y, w).min(gp(y, z, w)) - gp(x, z, w);
                    best = best.max(gap);
                }
            }
        }
    }
    best as u64
}
