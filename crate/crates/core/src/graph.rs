//! Finite simplicial graphs, induced subgraphs, links, cliques and hop metrics.
//!
//! Vertices are dense integer ids `0..n` assigned at ingestion; the original
//! labels are kept alongside so reports can speak the input's language. Every
//! subgraph in this crate is an *induced* subgraph, identified by its vertex set.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A sorted, duplicate-free set of vertex ids.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(vec![v])
    }

    pub fn from_bitset(bits: &FixedBitSet) -> Self {
        VertexSet(bits.ones().collect())
    }

    pub fn to_bitset(&self, n: usize) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(n);
        for &v in &self.0 {
            bits.insert(v);
        }
        bits
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        VertexSet(out)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.len() <= other.len() && self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(v: [Vertex; N]) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Finite undirected graph without loops or multi-edges.
#[derive(Clone)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<Vertex>>,
    rows: Vec<FixedBitSet>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices labelled `0..n`.
    pub fn empty(n: usize) -> Self {
        Graph::with_labels((0..n).map(|i| i.to_string()).collect()).expect("numeric labels are unique")
    }

    /// Edgeless graph with the given (unique) labels.
    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut seen = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(Error::Parse(format!("duplicate vertex label {l:?} (ids {j} and {i})")));
            }
        }
        let n = labels.len();
        Ok(Graph {
            labels,
            adj: vec![Vec::new(); n],
            rows: vec![FixedBitSet::with_capacity(n); n],
        })
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn from_labelled_edges(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self> {
        let mut g = Graph::with_labels(labels)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds an undirected edge; repeated edges are merged, loops rejected.
    pub(crate) fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::Parse(format!("edge ({u},{v}) out of range for {n} vertices")));
        }
        if u == v {
            return Err(Error::Parse(format!("self-loop at vertex {}", self.labels[u])));
        }
        if self.rows[u].contains(v) {
            return Ok(());
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        let pu = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pu, v);
        let pv = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pv, u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet(self.vertices().collect())
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn row(&self, v: Vertex) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u].contains(v)
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.labels.iter().position(|l| l == label)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Induced subgraph on `set`; local vertex `i` is `set.as_slice()[i]`.
    pub fn induced(&self, set: &VertexSet) -> Graph {
        let local: HashMap<Vertex, Vertex> = set.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let labels = set.iter().map(|v| self.labels[v].clone()).collect();
        let mut g = Graph::with_labels(labels).expect("labels of a graph are unique");
        for (i, u) in set.iter().enumerate() {
            for &v in &self.adj[u] {
                if let Some(&j) = local.get(&v) {
                    if i < j {
                        g.add_edge(i, j).expect("induced edge is valid");
                    }
                }
            }
        }
        g
    }

    /// Single-source hop distances; `None` for unreachable vertices.
    pub fn bfs(&self, src: Vertex) -> Vec<Option<u32>> {
        self.bfs_within(src, None)
    }

    /// BFS restricted to vertices in `allowed` (when given).
    pub fn bfs_within(&self, src: Vertex, allowed: Option<&FixedBitSet>) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n()];
        if allowed.is_some_and(|a| !a.contains(src)) {
            return dist;
        }
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() && allowed.is_none_or(|a| a.contains(v)) {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Connected components of the induced subgraph on `set`, each sorted,
    /// ordered by smallest vertex.
    pub fn components_of(&self, set: &VertexSet) -> Vec<VertexSet> {
        let allowed = set.to_bitset(self.n());
        let mut seen = FixedBitSet::with_capacity(self.n());
        let mut out = Vec::new();
        for v in set.iter() {
            if seen.contains(v) {
                continue;
            }
            let comp: VertexSet = self
                .bfs_within(v, Some(&allowed))
                .iter()
                .enumerate()
                .filter_map(|(u, d)| d.map(|_| u))
                .collect();
            for u in comp.iter() {
                seen.insert(u);
            }
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_of(&self.all_vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_connected_set(&self, set: &VertexSet) -> bool {
        self.components_of(set).len() <= 1
    }

    pub fn distances(&self) -> DistanceMatrix {
        let n = self.n();
        let mut d = vec![DistanceMatrix::INF; n * n];
        for s in 0..n {
            for (t, dt) in self.bfs(s).into_iter().enumerate() {
                if let Some(x) = dt {
                    d[s * n + t] = x;
                }
            }
        }
        DistanceMatrix { n, d }
    }

    /// Vertices adjacent to every vertex of `set` (all vertices when `set` is empty).
    pub(crate) fn common_neighbours(&self, set: &VertexSet) -> VertexSet {
        let mut acc = FixedBitSet::with_capacity(self.n());
        acc.insert_range(..);
        for v in set.iter() {
            acc.intersect_with(&self.rows[v]);
        }
        VertexSet::from_bitset(&acc)
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let s = set.as_slice();
        s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }
}

/// An induced subgraph of `parent`, identified by its vertex set.
#[derive(Clone, Debug)]
pub struct Subgraph<'g> {
    parent: &'g Graph,
    vertices: VertexSet,
}

impl<'g> Subgraph<'g> {
    pub fn new(parent: &'g Graph, vertices: VertexSet) -> Result<Self> {
        if let Some(v) = vertices.iter().find(|&v| v >= parent.n()) {
            return Err(Error::pre(format!("vertex {v} is not in the parent graph")));
        }
        Ok(Subgraph { parent, vertices })
    }

    pub fn whole(parent: &'g Graph) -> Self {
        Subgraph { parent, vertices: parent.all_vertices() }
    }

    pub fn parent(&self) -> &'g Graph {
        self.parent
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn to_graph(&self) -> Graph {
        self.parent.induced(&self.vertices)
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.parent
            .edges()
            .filter(|&(u, v)| self.vertices.contains(u) && self.vertices.contains(v))
            .collect()
    }

    pub fn is_subgraph_of(&self, other: &Subgraph<'_>) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.vertices.is_subset(&other.vertices)
    }

    /// Induced subgraph on the common vertices; the result may be empty.
    pub fn intersect(&self, other: &Subgraph<'g>) -> Result<Subgraph<'g>> {
        if !std::ptr::eq(self.parent, other.parent) {
            return Err(Error::pre("intersect: subgraphs have different parents"));
        }
        Ok(Subgraph { parent: self.parent, vertices: self.vertices.intersection(&other.vertices) })
    }
}

impl PartialEq for Subgraph<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.vertices == other.vertices
    }
}

/// Link of a nonempty subgraph: the induced subgraph on vertices adjacent to
/// all of its vertices.
pub fn link<'g>(g: &'g Graph, s: &Subgraph<'_>) -> Result<Subgraph<'g>> {
    if !std::ptr::eq(g, s.parent) {
        return Err(Error::pre("link: subgraph does not belong to the graph"));
    }
    if s.is_empty() {
        return Err(Error::pre("link of the empty set is undefined"));
    }
    Ok(Subgraph { parent: g, vertices: g.common_neighbours(&s.vertices) })
}

/// Link of a nonempty vertex set, as a vertex set.
pub fn link_set(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    if s.is_empty() {
        return Err(Error::pre("link of the empty set is undefined"));
    }
    Ok(g.common_neighbours(s))
}

/// All inclusion-maximal cliques, sorted lexicographically.
///
/// Bron–Kerbosch with Tomita pivoting over bitset rows.
pub fn maximal_cliques(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    let mut r = Vec::new();
    bron_kerbosch(g, &mut r, p, x, &mut out);
    out.sort();
    out
}

/// Maximal cliques of the induced subgraph on `set`, in parent ids.
pub fn maximal_cliques_within(g: &Graph, set: &VertexSet) -> Vec<VertexSet> {
    let sub = g.induced(set);
    let ids = set.as_slice();
    let mut out: Vec<VertexSet> =
        maximal_cliques(&sub).into_iter().map(|c| c.iter().map(|i| ids[i]).collect()).collect();
    out.sort();
    out
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<Vertex>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<VertexSet>,
) {
    if p.is_clear() {
        if x.is_clear() {
            out.push(r.iter().copied().collect());
        }
        return;
    }
    // pivot maximizing |P ∩ N(u)| over P ∪ X
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| p.intersection(g.row(u)).count())
        .expect("P is nonempty");
    let mut candidates = p.clone();
    candidates.difference_with(g.row(pivot));
    for v in candidates.ones() {
        let mut np = p.clone();
        np.intersect_with(g.row(v));
        let mut nx = x.clone();
        nx.intersect_with(g.row(v));
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// All-pairs hop distances. Disconnected pairs have no distance.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<Option<u32>>> = (0..self.n).map(|u| (0..self.n).map(|v| self.get(u, v)).collect()).collect();
        f.debug_struct("DistanceMatrix").field("rows", &rows).finish()
    }
}

impl DistanceMatrix {
    const INF: u32 = u32::MAX;

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Option<u32> {
        let x = self.d[u * self.n + v];
        (x != Self::INF).then_some(x)
    }

    /// Distance for a pair known to be connected.
    pub(crate) fn at(&self, u: Vertex, v: Vertex) -> u32 {
        let x = self.d[u * self.n + v];
        debug_assert!(x != Self::INF, "distance queried across components");
        x
    }

    pub fn is_connected(&self) -> bool {
        self.d.iter().all(|&x| x != Self::INF)
    }

    /// Largest finite distance (`None` for the empty graph).
    pub fn diameter(&self) -> Option<u32> {
        self.d.iter().copied().filter(|&x| x != Self::INF).max()
    }

    /// Whether `v` lies on some geodesic between `a` and `b`.
    pub fn between(&self, a: Vertex, v: Vertex, b: Vertex) -> bool {
        match (self.get(a, v), self.get(v, b), self.get(a, b)) {
            (Some(x), Some(y), Some(z)) => x + y == z,
            _ => false,
        }
    }

    /// The geodesic interval `I(a, b)`.
    pub fn interval(&self, a: Vertex, b: Vertex) -> VertexSet {
        (0..self.n).filter(|&v| self.between(a, v, b)).collect()
    }

    pub fn interval_bits(&self, a: Vertex, b: Vertex) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.n);
        for v in 0..self.n {
            if self.between(a, v, b) {
                bits.insert(v);
            }
        }
        bits
    }

    /// Set distance `min d(a, b)` over `a ∈ from`, `b ∈ to`.
    pub fn set_distance(&self, from: &VertexSet, to: &VertexSet) -> Option<u32> {
        from.iter().flat_map(|a| to.iter().filter_map(move |b| self.get(a, b))).min()
    }

    /// Diameter of a vertex set; `None` if two of its vertices are disconnected.
    pub fn set_diameter(&self, set: &VertexSet) -> Option<u32> {
        let s = set.as_slice();
        let mut best = 0;
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                best = best.max(self.get(a, b)?);
            }
        }
        Some(best)
    }
}

/// An induced subgraph carried with its own hop metric, addressed by parent ids.
#[derive(Clone, Debug)]
pub struct InducedSpace {
    ids: VertexSet,
    graph: Graph,
    dist: DistanceMatrix,
}

impl InducedSpace {
    pub fn new(parent: &Graph, ids: VertexSet) -> Self {
        let graph = parent.induced(&ids);
        InducedSpace::from_graph(ids, graph)
    }

    /// Wraps a graph whose local vertex `i` stands for parent vertex `ids[i]`.
    pub fn from_graph(ids: VertexSet, graph: Graph) -> Self {
        assert_eq!(ids.len(), graph.n(), "one parent id per local vertex");
        let dist = graph.distances();
        InducedSpace { ids, graph, dist }
    }

    pub fn ids(&self) -> &VertexSet {
        &self.ids
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn local_distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.ids.contains(v)
    }

    pub fn local(&self, v: Vertex) -> Option<Vertex> {
        self.ids.as_slice().binary_search(&v).ok()
    }

    pub fn global(&self, i: Vertex) -> Vertex {
        self.ids.as_slice()[i]
    }

    /// Distance between two parent vertices inside this space.
    pub fn dist(&self, u: Vertex, v: Vertex) -> Option<u32> {
        self.dist.get(self.local(u)?, self.local(v)?)
    }

    pub fn is_connected(&self) -> bool {
        self.dist.is_connected()
    }

    /// Parent ids of `set` that lie in this space, as local ids.
    pub fn to_local(&self, set: &VertexSet) -> VertexSet {
        set.iter().filter_map(|v| self.local(v)).collect()
    }

    pub fn to_global(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|i| self.global(i)).collect()
    }

    /// Distance from `x` to the nearest member of `set` (parent ids).
    pub fn dist_to_set(&self, x: Vertex, set: &VertexSet) -> Option<u32> {
        set.iter().filter_map(|y| self.dist(x, y)).min()
    }

    /// Set distance between two parent-id sets.
    pub fn set_distance(&self, a: &VertexSet, b: &VertexSet) -> Option<u32> {
        self.dist.set_distance(&self.to_local(a), &self.to_local(b))
    }

    /// Diameter of a parent-id set inside this space.
    pub fn set_diameter(&self, set: &VertexSet) -> Option<u32> {
        self.dist.set_diameter(&self.to_local(set))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn link_in_complete_graph() {
        let g = complete(4);
        let s = Subgraph::new(&g, VertexSet::singleton(0)).unwrap();
        let l = link(&g, &s).unwrap();
        assert_eq!(l.vertices(), &VertexSet::from([1, 2, 3]));
        assert_eq!(l.to_graph().edge_count(), 3);
    }

    #[test]
    fn link_in_five_cycle() {
        let g = cycle(5);
        let s = Subgraph::new(&g, VertexSet::singleton(0)).unwrap();
        let l = link(&g, &s).unwrap();
        assert_eq!(l.vertices(), &VertexSet::from([1, 4]));
        assert_eq!(l.to_graph().edge_count(), 0);
    }

    #[test]
    fn link_of_path_ends() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let s = Subgraph::new(&g, VertexSet::from([0, 2])).unwrap();
        assert_eq!(link(&g, &s).unwrap().vertices(), &VertexSet::singleton(1));
    }

    #[test]
    fn link_of_empty_set_errors() {
        let g = complete(3);
        let s = Subgraph::new(&g, VertexSet::new()).unwrap();
        assert!(matches!(link(&g, &s), Err(Error::Precondition(_))));
    }

    #[test]
    fn cliques_of_triangle_and_cycle() {
        assert_eq!(maximal_cliques(&complete(3)), vec![VertexSet::from([0, 1, 2])]);
        let c5 = maximal_cliques(&cycle(5));
        assert_eq!(c5.len(), 5);
        assert!(c5.iter().all(|c| c.len() == 2));
        assert!(maximal_cliques(&Graph::empty(0)).is_empty());
        assert_eq!(maximal_cliques(&Graph::empty(2)), vec![VertexSet::from([0]), VertexSet::from([1])]);
    }

    #[test]
    fn distances_basic() {
        let e = Graph::from_edges(2, [(0, 1)]).unwrap().distances();
        assert_eq!(e.get(0, 1), Some(1));
        assert_eq!(e.get(0, 0), Some(0));
        let d = Graph::empty(2).distances();
        assert_eq!(d.get(0, 1), None);
        assert!(!d.is_connected());
        assert_eq!(cycle(6).distances().get(0, 3), Some(3));
    }

    #[test]
    fn intersect_subgraphs() {
        let g = cycle(4);
        let a = Subgraph::new(&g, VertexSet::from([0, 1, 2])).unwrap();
        let b = Subgraph::new(&g, VertexSet::from([1, 2, 3])).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.vertices(), &VertexSet::from([1, 2]));
        assert_eq!(i.edges(), vec![(1, 2)]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let c = Subgraph::new(&g, VertexSet::from([3])).unwrap();
        let d = Subgraph::new(&g, VertexSet::from([0, 1])).unwrap();
        assert!(c.intersect(&d).unwrap().is_empty());
        let other = cycle(4);
        let e = Subgraph::new(&other, VertexSet::from([0])).unwrap();
        assert!(a.intersect(&e).is_err());
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(Graph::with_labels(vec!["a".into(), "a".into()]).is_err());
        assert!(Graph::from_edges(2, [(0, 0)]).is_err());
    }
}
