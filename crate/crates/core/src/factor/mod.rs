//! Graph factor systems and X-graphs.
//!
//! A factor system on a host graph is a family of induced subgraphs (domains)
//! containing the host and every nonempty vertex link, closed under nonempty
//! intersection. Domains are identified by their vertex sets; the host is
//! always domain `0` and the remaining domains follow in lexicographic order.

mod augment;
mod qm;

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{maximal_cliques, Graph, VertexSet};

pub use augment::{Augmented, EdgeKind};
pub use qm::{domain_x_graph, local_crossing_graph, qm_factor_system, x_graph_from_prisms, QmPipeline};

pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// How two domains sit relative to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    /// The first domain is properly contained in the second.
    NestedIn,
    /// The first domain properly contains the second.
    Contains,
    Orthogonal,
    Transverse,
}

#[derive(Clone, Debug)]
pub struct FactorSystem {
    host: Graph,
    domains: Vec<VertexSet>,
    bits: Vec<FixedBitSet>,
    index: HashMap<VertexSet, usize>,
    links: Vec<VertexSet>,
    complexity: usize,
    co_level: Vec<usize>,
    /// Smallest `1 + cl(F')` over proper superdomains; differs from the
    /// co-level exactly when the recursive definition is ambiguous.
    co_level_min: Vec<usize>,
}

impl FactorSystem {
    /// Least family containing `seeds` that is closed under nonempty intersection.
    ///
    /// `seeds` must contain the host and every nonempty vertex link.
    pub fn close(host: Graph, seeds: Vec<VertexSet>, cap: usize) -> Result<Self> {
        let all = host.all_vertices();
        let seed_set: HashSet<&VertexSet> = seeds.iter().collect();
        if !seed_set.contains(&all) {
            return Err(Error::pre("factor system seeds must contain the host"));
        }
        for v in host.vertices() {
            let lk = host.common_neighbours(&VertexSet::singleton(v));
            if !lk.is_empty() && !seed_set.contains(&lk) {
                return Err(Error::pre(format!("seeds miss the link of vertex {}", host.label(v))));
            }
        }
        if let Some(s) = seeds.iter().find(|s| !s.is_subset(&all)) {
            return Err(Error::pre(format!("seed {s:?} is not a vertex set of the host")));
        }
        let mut list: Vec<VertexSet> = Vec::new();
        let mut seen: HashSet<VertexSet> = HashSet::new();
        for s in seeds {
            if (!s.is_empty() || s == all) && seen.insert(s.clone()) {
                list.push(s);
            }
        }
        let mut i = 0;
        while i < list.len() {
            for j in 0..i {
                let inter = list[i].intersection(&list[j]);
                if !inter.is_empty() && seen.insert(inter.clone()) {
                    list.push(inter);
                    if list.len() > cap {
                        return Err(Error::CapExceeded { what: "factor system", cap });
                    }
                }
            }
            i += 1;
        }
        if list.len() > cap {
            return Err(Error::CapExceeded { what: "factor system", cap });
        }
        list.retain(|d| *d != all);
        list.sort();
        list.insert(0, all);
        Ok(FactorSystem::from_sorted(host, list))
    }

    /// The host together with all nonempty vertex links, closed under intersection.
    pub fn minimal(host: Graph, cap: usize) -> Result<Self> {
        let mut seeds = vec![host.all_vertices()];
        for v in host.vertices() {
            let lk = host.common_neighbours(&VertexSet::singleton(v));
            if !lk.is_empty() {
                seeds.push(lk);
            }
        }
        FactorSystem::close(host, seeds, cap)
    }

    fn from_sorted(host: Graph, domains: Vec<VertexSet>) -> Self {
        let n = host.n();
        let bits: Vec<FixedBitSet> = domains.iter().map(|d| d.to_bitset(n)).collect();
        let index = domains.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
        let links = domains
            .iter()
            .map(|d| if d.is_empty() { VertexSet::new() } else { host.common_neighbours(d) })
            .collect();
        // larger domains first: every proper superdomain precedes its subdomains
        let mut order: Vec<usize> = (0..domains.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(domains[i].len()), i));
        let m = domains.len();
        let mut co_level = vec![0; m];
        let mut co_level_min = vec![0; m];
        let mut chain = vec![1; m];
        for (pos, &i) in order.iter().enumerate() {
            let supers: Vec<usize> = order[..pos]
                .iter()
                .copied()
                .filter(|&j| domains[j].len() > domains[i].len() && bits[i].is_subset(&bits[j]))
                .collect();
            if let (Some(hi), Some(lo)) =
                (supers.iter().map(|&j| co_level[j]).max(), supers.iter().map(|&j| co_level[j]).min())
            {
                co_level[i] = hi + 1;
                co_level_min[i] = lo + 1;
            }
            chain[i] = 1 + supers.iter().map(|&j| chain[j]).max().unwrap_or(0);
        }
        let complexity = chain.iter().copied().max().unwrap_or(0);
        FactorSystem { host, domains, bits, index, links, complexity, co_level, co_level_min }
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    pub fn domains(&self) -> &[VertexSet] {
        &self.domains
    }

    pub fn domain(&self, i: usize) -> &VertexSet {
        &self.domains[i]
    }

    pub fn index_of(&self, set: &VertexSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn contains(&self, set: &VertexSet) -> bool {
        self.index.contains_key(set)
    }

    /// `lk(F)` in the host; empty when the domain has no link.
    pub fn link(&self, i: usize) -> &VertexSet {
        &self.links[i]
    }

    /// Length of the longest strictly increasing chain of domains.
    pub fn complexity(&self) -> usize {
        self.complexity
    }

    pub fn co_level(&self, i: usize) -> usize {
        self.co_level[i]
    }

    /// Whether the proper superdomains of `i` have different co-levels.
    pub fn co_level_ambiguous(&self, i: usize) -> bool {
        self.co_level[i] != self.co_level_min[i]
    }

    /// `F_i ⊆ F_j`.
    pub fn nested(&self, i: usize, j: usize) -> bool {
        self.bits[i].is_subset(&self.bits[j])
    }

    /// `F_i ⊊ F_j`.
    pub fn properly_nested(&self, i: usize, j: usize) -> bool {
        i != j && self.nested(i, j)
    }

    /// `F_j ⊆ lk(F_i)` (symmetric).
    pub fn orthogonal(&self, i: usize, j: usize) -> bool {
        !self.domains[j].is_empty() && self.domains[j].is_subset(&self.links[i])
    }

    pub fn relation(&self, i: usize, j: usize) -> Relation {
        if i == j {
            Relation::Equal
        } else if self.nested(i, j) {
            Relation::NestedIn
        } else if self.nested(j, i) {
            Relation::Contains
        } else if self.orthogonal(i, j) {
            Relation::Orthogonal
        } else {
            Relation::Transverse
        }
    }

    pub fn transverse(&self, i: usize, j: usize) -> bool {
        self.relation(i, j) == Relation::Transverse
    }

    /// Domains contained in domain `i` (including itself).
    pub fn subdomains(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.nested(j, i)).collect()
    }

    /// Checks that the domains inside `F_i` form a factor system of the graph `F_i`.
    pub fn induced_system_violation(&self, i: usize) -> Option<String> {
        let f = &self.domains[i];
        let sub: HashSet<&VertexSet> = self.subdomains(i).into_iter().map(|j| &self.domains[j]).collect();
        for v in f.iter() {
            let lk = self.host.common_neighbours(&VertexSet::singleton(v)).intersection(f);
            if !lk.is_empty() && !sub.contains(&lk) {
                return Some(format!("link of {} inside domain {i} is not a domain", self.host.label(v)));
            }
        }
        for a in &sub {
            for b in &sub {
                let c = a.intersection(b);
                if !c.is_empty() && !sub.contains(&c) {
                    return Some(format!("intersection {c:?} inside domain {i} is not a domain"));
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> Value {
        let label_set = |d: &VertexSet| -> Vec<&str> { d.iter().map(|v| self.host.label(v)).collect() };
        let domains: Vec<Value> = (0..self.len())
            .map(|i| {
                json!({
                    "index": i,
                    "vertices": label_set(&self.domains[i]),
                    "co_level": self.co_level[i],
                    "co_level_ambiguous": self.co_level_ambiguous(i),
                })
            })
            .collect();
        let mut relations = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                match self.relation(i, j) {
                    Relation::NestedIn => relations.push(json!([i, j, "nested"])),
                    Relation::Orthogonal if i < j => relations.push(json!([i, j, "orthogonal"])),
                    Relation::Transverse if i < j => relations.push(json!([i, j, "transverse"])),
                    _ => {}
                }
            }
        }
        json!({ "domains": domains, "relations": relations, "complexity": self.complexity })
    }
}

/// A graph whose vertices are the maximal cliques of a base graph.
#[derive(Clone, Debug)]
pub struct XGraph {
    cliques: Vec<VertexSet>,
    graph: Graph,
}

impl XGraph {
    /// Vertex `i` is the `i`-th maximal clique of `base`; `pairs` lists adjacent indices.
    pub fn new(base: &Graph, pairs: &[(usize, usize)]) -> Result<Self> {
        let cliques = maximal_cliques(base);
        let labels = (0..cliques.len()).map(|i| format!("w{i}")).collect();
        let mut graph = Graph::with_labels(labels)?;
        for &(a, b) in pairs {
            if a >= cliques.len() || b >= cliques.len() {
                return Err(Error::Parse(format!(
                    "W-adjacency pair ({a},{b}) out of range for {} maximal cliques",
                    cliques.len()
                )));
            }
            if a != b {
                graph.add_edge(a, b)?;
            }
        }
        Ok(XGraph { cliques, graph })
    }

    /// Maximal cliques adjacent exactly when they intersect.
    pub fn intersecting(base: &Graph) -> Self {
        let cliques = maximal_cliques(base);
        let mut pairs = Vec::new();
        for (i, a) in cliques.iter().enumerate() {
            for (j, b) in cliques.iter().enumerate().skip(i + 1) {
                if !a.is_disjoint(b) {
                    pairs.push((i, j));
                }
            }
        }
        XGraph::new(base, &pairs).expect("pairs index the cliques")
    }

    /// Parses a JSON list of clique-index pairs.
    pub fn parse_adjacency(text: &str) -> Result<Vec<(usize, usize)>> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("W-adjacency: {e}")))
    }

    pub fn cliques(&self) -> &[VertexSet] {
        &self.cliques
    }

    pub fn clique(&self, i: usize) -> &VertexSet {
        &self.cliques[i]
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn discrete_host() {
        let fs = FactorSystem::minimal(Graph::empty(3), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs.complexity(), 1);
    }

    #[test]
    fn triangle_host() {
        let fs = FactorSystem::minimal(generate::complete(3), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(fs.len(), 7);
        assert_eq!(fs.complexity(), 3);
        assert_eq!(fs.co_level(0), 0);
        let a = fs.index_of(&VertexSet::from([0])).unwrap();
        let b = fs.index_of(&VertexSet::from([1])).unwrap();
        let ab = fs.index_of(&VertexSet::from([0, 1])).unwrap();
        assert_eq!(fs.relation(a, b), Relation::Orthogonal);
        assert_eq!(fs.relation(a, ab), Relation::NestedIn);
        assert_eq!(fs.relation(ab, a), Relation::Contains);
        assert_eq!(fs.co_level(ab), 1);
        assert_eq!(fs.co_level(a), 2);
        for i in 0..fs.len() {
            assert!(fs.induced_system_violation(i).is_none());
        }
    }

    #[test]
    fn path_host_is_transverse_free() {
        // path 0-1-2: links {1}, {0,2}, {1}
        let fs = FactorSystem::minimal(generate::path(3), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(fs.domains(), &[VertexSet::from([0, 1, 2]), VertexSet::from([0, 2]), VertexSet::from([1])]);
        assert_eq!(fs.relation(1, 2), Relation::Orthogonal);
        assert_eq!(fs.complexity(), 2);
    }

    #[test]
    fn closure_cap_and_seed_checks() {
        let err = FactorSystem::minimal(generate::complete(6), 10).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
        let g = generate::complete(3);
        assert!(FactorSystem::close(g.clone(), vec![g.all_vertices()], 100).is_err());
    }

    #[test]
    fn x_graph_defaults_and_errors() {
        let w = XGraph::intersecting(&generate::path(3));
        assert_eq!(w.len(), 2);
        assert_eq!(w.graph().edge_count(), 1);
        assert!(XGraph::new(&generate::path(3), &[(0, 5)]).is_err());
        assert_eq!(XGraph::parse_adjacency("[[0,1],[1,2]]").unwrap(), vec![(0, 1), (1, 2)]);
    }
}
