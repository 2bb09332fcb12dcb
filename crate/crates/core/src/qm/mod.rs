//! Hyperplane geometry of (quasi-)median graphs.
//!
//! [`Geometry`] owns a host graph together with everything derived from its
//! edge-parallelism classes: hyperplanes, crossings, carriers and sectors.
//! Hyperplane, crossing and contact data are defined for any graph; gates,
//! hulls and prisms assume the host is quasi-median and verify their output.

mod gated;
mod prisms;
mod recognition;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph, Vertex, VertexSet};

pub use gated::{GateCheck, GatedSubgraph};
pub use prisms::Prism;
pub use recognition::{is_quasi_median, quasi_median_of_triple, QuasiMedianReport, QuasiMedians, Witness};

pub type Edge = (Vertex, Vertex);

/// An equivalence class of edges under the parallelism relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub id: usize,
    /// Dual edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<Edge>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so class representatives are stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

fn norm(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Induced 4-cycles `[a, b, c, d]` (edges ab, bc, cd, da; no chords), each once.
pub fn induced_squares(g: &Graph) -> Vec<[Vertex; 4]> {
    let mut out = Vec::new();
    for a in g.vertices() {
        for c in a + 1..g.n() {
            if g.adjacent(a, c) {
                continue;
            }
            let mut common = g.row(a).clone();
            common.intersect_with(g.row(c));
            let cn: Vec<Vertex> = common.ones().collect();
            for (i, &b) in cn.iter().enumerate() {
                // the diagonal holding the smallest vertex is the (a, c) one
                if b < a {
                    continue;
                }
                for &d in &cn[i + 1..] {
                    if !g.adjacent(b, d) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Hyperplanes of `g`: classes of the closure of "two sides of a triangle" and
/// "opposite sides of an induced square", ordered by their smallest edge.
pub fn hyperplanes(g: &Graph) -> Vec<Hyperplane> {
    let edges: Vec<Edge> = g.edges().collect();
    let index: HashMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let id = |u, v| index[&norm(u, v)];
    let mut uf = UnionFind::new(edges.len());
    for &(u, v) in &edges {
        for w in g.row(u).intersection(g.row(v)) {
            uf.union(id(u, v), id(u, w));
        }
    }
    for [a, b, c, d] in induced_squares(g) {
        uf.union(id(a, b), id(c, d));
        uf.union(id(b, c), id(d, a));
    }
    let mut classes: Vec<Vec<Edge>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (i, &e) in edges.iter().enumerate() {
        let r = uf.find(i);
        let k = *slot.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(e);
    }
    // edges are visited in sorted order, so classes are ordered by smallest edge
    classes.into_iter().enumerate().map(|(id, edges)| Hyperplane { id, edges }).collect()
}

/// A host graph with its hyperplane structure.
#[derive(Clone, Debug)]
pub struct Geometry {
    graph: Graph,
    dist: DistanceMatrix,
    hyperplanes: Vec<Hyperplane>,
    edge_hyp: HashMap<Edge, usize>,
    crossing: Vec<FixedBitSet>,
    carriers: Vec<VertexSet>,
    /// `sector_of[h][v]` is the index of the sector of `h` holding `v`.
    sector_of: Vec<Vec<usize>>,
    sector_count: Vec<usize>,
}

impl Geometry {
    pub fn new(graph: Graph) -> Self {
        let dist = graph.distances();
        let hyperplanes = hyperplanes(&graph);
        let mut edge_hyp = HashMap::new();
        for h in &hyperplanes {
            for &e in &h.edges {
                edge_hyp.insert(e, h.id);
            }
        }
        let k = hyperplanes.len();
        let mut crossing = vec![FixedBitSet::with_capacity(k); k];
        for [a, b, c, d] in induced_squares(&graph) {
            let ring = [a, b, c, d, a];
            let hs: Vec<usize> = ring.windows(2).map(|w| edge_hyp[&norm(w[0], w[1])]).collect();
            let (h1, h2) = (hs[0], hs[1]);
            if h1 != h2 {
                crossing[h1].insert(h2);
                crossing[h2].insert(h1);
            }
        }
        let carriers = hyperplanes
            .iter()
            .map(|h| h.edges.iter().flat_map(|&(u, v)| [u, v]).collect())
            .collect();
        let mut geo = Geometry {
            graph,
            dist,
            hyperplanes,
            edge_hyp,
            crossing,
            carriers,
            sector_of: Vec::new(),
            sector_count: Vec::new(),
        };
        for h in 0..k {
            let all = geo.graph.all_vertices();
            let comps = geo.components_avoiding(&all, h);
            let mut label = vec![0; geo.graph.n()];
            for (i, c) in comps.iter().enumerate() {
                for v in c.iter() {
                    label[v] = i;
                }
            }
            geo.sector_of.push(label);
            geo.sector_count.push(comps.len());
        }
        geo
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane_count(&self) -> usize {
        self.hyperplanes.len()
    }

    /// The hyperplane dual to edge `uv`.
    pub fn dual(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edge_hyp.get(&norm(u, v)).copied()
    }

    fn check_id(&self, h: usize) -> Result<()> {
        if h >= self.hyperplanes.len() {
            return Err(Error::pre(format!("no hyperplane with id {h}")));
        }
        Ok(())
    }

    /// Whether edges of `h1` and `h2` form a corner of some induced square.
    pub fn crosses(&self, h1: usize, h2: usize) -> Result<bool> {
        self.check_id(h1)?;
        self.check_id(h2)?;
        if h1 == h2 {
            return Err(Error::pre("crossing is a relation between distinct hyperplanes"));
        }
        Ok(self.crossing[h1].contains(h2))
    }

    /// Carriers meet but the hyperplanes do not cross.
    pub fn osculates(&self, h1: usize, h2: usize) -> Result<bool> {
        let crosses = self.crosses(h1, h2)?;
        Ok(!crosses && !self.carriers[h1].is_disjoint(&self.carriers[h2]))
    }

    /// Vertex set of the carrier `N(h)`: the subgraph spanned by the dual edges.
    pub fn carrier(&self, h: usize) -> &VertexSet {
        &self.carriers[h]
    }

    /// Components of the induced subgraph on `set` once the edges dual to `h` are removed.
    fn components_avoiding(&self, set: &VertexSet, h: usize) -> Vec<VertexSet> {
        let n = self.graph.n();
        let allowed = set.to_bitset(n);
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for s in set.iter() {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &v in self.graph.neighbors(u) {
                    if allowed.contains(v) && !seen.contains(v) && self.edge_hyp[&norm(u, v)] != h {
                        seen.insert(v);
                        comp.push(v);
                    }
                }
            }
            out.push(comp.into_iter().collect());
        }
        out
    }

    /// Fibres (combinatorial hyperplanes) of `h`, ordered by smallest vertex.
    pub fn fibres(&self, h: usize) -> Vec<VertexSet> {
        self.components_avoiding(&self.carriers[h], h)
    }

    /// Sectors delimited by `h`, ordered by smallest vertex.
    pub fn sectors(&self, h: usize) -> Vec<VertexSet> {
        let mut out = vec![Vec::new(); self.sector_count[h]];
        for v in self.graph.vertices() {
            out[self.sector_of[h][v]].push(v);
        }
        out.into_iter().map(VertexSet::from).collect()
    }

    pub fn sector_index(&self, h: usize, v: Vertex) -> usize {
        self.sector_of[h][v]
    }

    pub fn separates(&self, h: usize, x: Vertex, y: Vertex) -> bool {
        self.sector_of[h][x] != self.sector_of[h][y]
    }

    /// Hyperplanes putting `x` and `y` in different sectors.
    pub fn separating_hyperplanes(&self, x: Vertex, y: Vertex) -> VertexSet {
        (0..self.hyperplanes.len()).filter(|&h| self.separates(h, x, y)).collect()
    }

    /// Hyperplanes with a dual edge inside the induced subgraph on `set`.
    pub fn hyperplanes_of(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for u in set.iter() {
            for &v in self.graph.neighbors(u) {
                if u < v && set.contains(v) {
                    out.insert(self.edge_hyp[&(u, v)]);
                }
            }
        }
        out
    }

    pub fn crossing_row(&self, h: usize) -> &FixedBitSet {
        &self.crossing[h]
    }

    /// Crossing graph: one vertex per hyperplane (labelled `h<id>`), edges between crossing pairs.
    pub fn crossing_graph(&self) -> Graph {
        let labels = (0..self.hyperplanes.len()).map(hyperplane_label).collect();
        let edges = (0..self.hyperplanes.len()).flat_map(|a| self.crossing[a].ones().filter(move |&b| b > a).map(move |b| (a, b)));
        Graph::from_labelled_edges(labels, edges.collect::<Vec<_>>()).expect("hyperplane labels are unique")
    }

    /// Contact graph: hyperplanes adjacent when they cross or osculate.
    pub fn contact_graph(&self) -> Graph {
        let k = self.hyperplanes.len();
        let labels = (0..k).map(hyperplane_label).collect();
        let mut edges = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                if self.crossing[a].contains(b) || !self.carriers[a].is_disjoint(&self.carriers[b]) {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_labelled_edges(labels, edges).expect("hyperplane labels are unique")
    }
}

pub fn hyperplane_label(id: usize) -> String {
    format!("h{id}")
}
