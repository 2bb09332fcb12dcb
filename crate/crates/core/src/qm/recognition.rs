//! Recognition of quasi-median graphs from the definition: unique
//! quasi-medians, no induced `K4⁻`, and cube hulls of isometric 6-cycles.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph, Vertex, VertexSet};

/// All `k`-quasi-medians of a vertex triple for the minimal `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiMedians {
    /// `None` when the triple has no quasi-median at all.
    pub k: Option<u32>,
    pub triples: Vec<[Vertex; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Disconnected { u: Vertex, v: Vertex },
    /// A triple whose quasi-median is missing or not unique.
    QuasiMedian { triple: [Vertex; 3], medians: QuasiMedians },
    /// Induced `K4` minus the edge `vertices[0] vertices[2]`.
    InducedK4Minus { vertices: [Vertex; 4] },
    /// An isometric 6-cycle whose convex hull is not a 3-cube.
    SixCycle { cycle: [Vertex; 6], hull: VertexSet },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiMedianReport {
    pub is_quasi_median: bool,
    pub witness: Option<Witness>,
}

/// `y_i, y_j` lie in this order on a common geodesic from `x_i` to `x_j`.
fn on_geodesic(d: &DistanceMatrix, xi: Vertex, yi: Vertex, yj: Vertex, xj: Vertex) -> bool {
    d.at(xi, xj) == d.at(xi, yi) + d.at(yi, yj) + d.at(yj, xj)
}

struct Intervals {
    n: usize,
    bits: Vec<FixedBitSet>,
}

impl Intervals {
    fn new(d: &DistanceMatrix) -> Self {
        let n = d.n();
        let bits = (0..n * n).into_par_iter().map(|i| d.interval_bits(i / n, i % n)).collect();
        Intervals { n, bits }
    }

    fn get(&self, a: Vertex, b: Vertex) -> &FixedBitSet {
        &self.bits[a * self.n + b]
    }
}

fn medians_with(d: &DistanceMatrix, iv: &Intervals, x: [Vertex; 3]) -> QuasiMedians {
    let [x1, x2, x3] = x;
    let mut common = iv.get(x1, x2).clone();
    common.intersect_with(iv.get(x2, x3));
    common.intersect_with(iv.get(x1, x3));
    match common.count_ones(..) {
        1 => {
            let m = common.ones().next().unwrap();
            return QuasiMedians { k: Some(0), triples: vec![[m, m, m]] };
        }
        c if c > 1 => {
            return QuasiMedians { k: Some(0), triples: common.ones().map(|m| [m, m, m]).collect() };
        }
        _ => {}
    }
    let cand = |a: Vertex, b: Vertex, c: Vertex| -> Vec<Vertex> {
        let mut s = iv.get(a, b).clone();
        s.intersect_with(iv.get(a, c));
        s.ones().collect()
    };
    let (c1, c2, c3) = (cand(x1, x2, x3), cand(x2, x1, x3), cand(x3, x1, x2));
    let mut best: Option<u32> = None;
    let mut found = Vec::new();
    for &y1 in &c1 {
        for &y2 in &c2 {
            if !on_geodesic(d, x1, y1, y2, x2) {
                continue;
            }
            let k = d.at(y1, y2);
            if best.is_some_and(|b| k > b) {
                continue;
            }
            for &y3 in &c3 {
                if d.at(y1, y3) == k
                    && d.at(y2, y3) == k
                    && on_geodesic(d, x1, y1, y3, x3)
                    && on_geodesic(d, x2, y2, y3, x3)
                {
                    if best != Some(k) {
                        best = Some(k);
                        found.clear();
                    }
                    found.push([y1, y2, y3]);
                }
            }
        }
    }
    QuasiMedians { k: best, triples: found }
}

/// Quasi-medians of `(x1, x2, x3)` by exhaustive search over interval candidates.
pub fn quasi_median_of_triple(g: &Graph, x: [Vertex; 3]) -> Result<QuasiMedians> {
    if let Some(&v) = x.iter().find(|&&v| v >= g.n()) {
        return Err(Error::pre(format!("vertex {v} is not in the graph")));
    }
    let d = g.distances();
    if x.iter().any(|&a| x.iter().any(|&b| d.get(a, b).is_none())) {
        return Err(Error::pre("quasi-medians of vertices in different components"));
    }
    Ok(medians_with(&d, &Intervals::new(&d), x))
}

fn find_k4_minus(g: &Graph) -> Option<[Vertex; 4]> {
    for (b, d) in g.edges() {
        let mut common = g.row(b).clone();
        common.intersect_with(g.row(d));
        let cn: Vec<Vertex> = common.ones().collect();
        for (i, &a) in cn.iter().enumerate() {
            for &c in &cn[i + 1..] {
                if !g.adjacent(a, c) {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

fn interval_closure(d: &DistanceMatrix, seed: &[Vertex]) -> VertexSet {
    let n = d.n();
    let mut cur = FixedBitSet::with_capacity(n);
    for &v in seed {
        cur.insert(v);
    }
    loop {
        let members: Vec<Vertex> = cur.ones().collect();
        let mut next = cur.clone();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                next.union_with(&d.interval_bits(a, b));
            }
        }
        if next == cur {
            return VertexSet::from_bitset(&cur);
        }
        cur = next;
    }
}

/// Eight vertices, bipartite and 3-regular: the only such graph is `Q3`.
fn is_cube(g: &Graph, set: &VertexSet) -> bool {
    if set.len() != 8 {
        return false;
    }
    let sub = g.induced(set);
    if sub.vertices().any(|v| sub.degree(v) != 3) {
        return false;
    }
    let mut side = vec![None; 8];
    side[0] = Some(false);
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for &v in sub.neighbors(u) {
            match side[v] {
                None => {
                    side[v] = Some(!side[u].unwrap());
                    stack.push(v);
                }
                Some(s) if s == side[u].unwrap() => return false,
                _ => {}
            }
        }
    }
    side.iter().all(Option::is_some)
}

fn find_bad_six_cycle(g: &Graph, d: &DistanceMatrix) -> Option<([Vertex; 6], VertexSet)> {
    for u in g.vertices() {
        for v in u + 1..g.n() {
            if d.get(u, v) != Some(3) {
                continue;
            }
            // geodesics u - a - b - v
            let mut geos = Vec::new();
            for &a in g.neighbors(u) {
                if d.at(a, v) != 2 {
                    continue;
                }
                for &b in g.neighbors(a) {
                    if d.at(b, v) == 1 && d.at(u, b) == 2 {
                        geos.push((a, b));
                    }
                }
            }
            for (i, &(a1, a2)) in geos.iter().enumerate() {
                for &(b1, b2) in &geos[i + 1..] {
                    if a1 == b1 || a2 == b2 {
                        continue;
                    }
                    let cycle = [u, a1, a2, v, b2, b1];
                    let isometric = (0..6).all(|p| {
                        (p + 1..6).all(|q| {
                            let along = (q - p).min(6 - (q - p)) as u32;
                            d.at(cycle[p], cycle[q]) == along
                        })
                    });
                    if !isometric {
                        continue;
                    }
                    let hull = interval_closure(d, &cycle);
                    if !is_cube(g, &hull) {
                        return Some((cycle, hull));
                    }
                }
            }
        }
    }
    None
}

/// Decides whether `g` is quasi-median, returning the first failure witness.
pub fn is_quasi_median(g: &Graph) -> QuasiMedianReport {
    let fail = |w| QuasiMedianReport { is_quasi_median: false, witness: Some(w) };
    let d = g.distances();
    if let Some((u, v)) = (0..g.n()).flat_map(|u| (0..g.n()).map(move |v| (u, v))).find(|&(u, v)| d.get(u, v).is_none()) {
        return fail(Witness::Disconnected { u, v });
    }
    if let Some(vertices) = find_k4_minus(g) {
        return fail(Witness::InducedK4Minus { vertices });
    }
    let iv = Intervals::new(&d);
    let n = g.n();
    let bad = (0..n).into_par_iter().find_map_first(|a| {
        for b in a + 1..n {
            for c in b + 1..n {
                let m = medians_with(&d, &iv, [a, b, c]);
                if m.triples.len() != 1 {
                    return Some(Witness::QuasiMedian { triple: [a, b, c], medians: m });
                }
            }
        }
        None
    });
    if let Some(w) = bad {
        return fail(w);
    }
    if let Some((cycle, hull)) = find_bad_six_cycle(g, &d) {
        return fail(Witness::SixCycle { cycle, hull });
    }
    QuasiMedianReport { is_quasi_median: true, witness: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn triangle_quasi_median() {
        let m = quasi_median_of_triple(&generate::complete(3), [0, 1, 2]).unwrap();
        assert_eq!(m, QuasiMedians { k: Some(1), triples: vec![[0, 1, 2]] });
    }

    #[test]
    fn repeated_vertex() {
        let m = quasi_median_of_triple(&generate::cycle(5).unwrap(), [2, 2, 2]).unwrap();
        assert_eq!(m.triples, vec![[2, 2, 2]]);
        assert_eq!(m.k, Some(0));
    }

    #[test]
    fn recognition() {
        assert!(is_quasi_median(&generate::hypercube(3).unwrap()).is_quasi_median);
        assert!(is_quasi_median(&generate::hamming(3, 2).unwrap()).is_quasi_median);
        let k4m = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]).unwrap();
        let r = is_quasi_median(&k4m);
        assert!(matches!(r.witness, Some(Witness::InducedK4Minus { .. })));
        let c5 = is_quasi_median(&generate::cycle(5).unwrap());
        assert!(matches!(c5.witness, Some(Witness::QuasiMedian { .. })));
        let c6 = is_quasi_median(&generate::cycle(6).unwrap());
        assert!(matches!(c6.witness, Some(Witness::SixCycle { .. })));
        let two = is_quasi_median(&Graph::empty(2));
        assert_eq!(two.witness, Some(Witness::Disconnected { u: 0, v: 1 }));
    }
}
