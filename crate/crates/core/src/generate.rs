//! Deterministic generators for the test corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
}

/// Cycle on `n ≥ 3` vertices.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::pre(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Complete graph `K_n`.
pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).expect("valid")
}

/// Hypercube `Q_n`; vertex `i` is labelled by its `n`-bit binary expansion.
pub fn hypercube(n: usize) -> Result<Graph> {
    if n > 16 {
        return Err(Error::pre(format!("hypercube dimension {n} is too large")));
    }
    let size = 1usize << n;
    let labels = (0..size).map(|i| if n == 0 { "e".to_string() } else { format!("{i:0n$b}") }).collect();
    let edges = (0..size).flat_map(|i| (0..n).map(move |b| (i, i ^ (1 << b)))).filter(|&(i, j)| i < j);
    Graph::from_labelled_edges(labels, edges)
}

/// Hamming graph `K_q^{□d}`: words of length `d` over `0..q`, adjacent when
/// they differ in exactly one letter.
pub fn hamming(q: usize, d: usize) -> Result<Graph> {
    if q == 0 {
        return Err(Error::pre("hamming alphabet must be nonempty"));
    }
    let size = q.checked_pow(d as u32).filter(|&s| s <= 1 << 16).ok_or_else(|| {
        Error::pre(format!("hamming graph ({q},{d}) is too large"))
    })?;
    let word = |mut i: usize| -> Vec<usize> {
        let mut w = vec![0; d];
        for slot in w.iter_mut().rev() {
            *slot = i % q;
            i /= q;
        }
        w
    };
    let sep = if q > 10 { "." } else { "" };
    let labels = (0..size)
        .map(|i| {
            if d == 0 {
                "e".to_string()
            } else {
                word(i).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(sep)
            }
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..size {
        for j in i + 1..size {
            let (a, b) = (word(i), word(j));
            if a.iter().zip(&b).filter(|(x, y)| x != y).count() == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_labelled_edges(labels, edges)
}

/// Cartesian product `a □ b`; vertex `(i, j)` has id `i * |b| + j` and label `la,lb`.
pub fn cartesian_product(a: &Graph, b: &Graph) -> Graph {
    let m = b.n();
    let labels = a
        .vertices()
        .flat_map(|i| b.vertices().map(move |j| (i, j)))
        .map(|(i, j)| format!("{},{}", a.label(i), b.label(j)))
        .collect();
    let mut edges = Vec::new();
    for i in a.vertices() {
        for (j, k) in b.edges() {
            edges.push((i * m + j, i * m + k));
        }
    }
    for (i, k) in a.edges() {
        for j in b.vertices() {
            edges.push((i * m + j, k * m + j));
        }
    }
    Graph::from_labelled_edges(labels, edges).expect("product labels are unique")
}

/// A strip of `k` unit squares glued consecutively along edges (the `2 × (k+1)` grid).
pub fn glued_squares(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::pre("glued-squares needs at least one square"));
    }
    Ok(cartesian_product(&path(2), &path(k + 1)))
}

/// Uniform random recursive tree on `n` vertices: vertex `i > 0` attaches to a
/// uniformly chosen earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    Graph::from_edges(n, edges).expect("tree edges are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let q3 = hypercube(3).unwrap();
        assert_eq!((q3.n(), q3.edge_count()), (8, 12));
        let h = hamming(3, 2).unwrap();
        assert_eq!((h.n(), h.edge_count()), (9, 18));
        let c = cycle(6).unwrap();
        assert_eq!((c.n(), c.edge_count()), (6, 6));
        let gs = glued_squares(2).unwrap();
        assert_eq!((gs.n(), gs.edge_count()), (6, 7));
        let t = random_tree(30, 7);
        assert_eq!(t.edge_count(), 29);
        assert!(t.is_connected());
        assert_eq!(random_tree(30, 7), t);
    }

    #[test]
    fn product_of_triangles_is_rook_graph() {
        let p = cartesian_product(&complete(3), &complete(3));
        assert_eq!((p.n(), p.edge_count()), (9, 18));
        assert!(p.vertices().all(|v| p.degree(v) == 4));
    }

    #[test]
    fn invalid_parameters() {
        assert!(cycle(2).is_err());
        assert!(glued_squares(0).is_err());
        assert!(hamming(0, 2).is_err());
    }
}
