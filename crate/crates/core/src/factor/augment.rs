//! Augmented graphs `CX`/`CF`, projection parts and complement graphs.
//!
//! `CX` has the host vertices `0..n` followed by one projection vertex `b_F`
//! per non-host domain: domain `i ≥ 1` owns vertex `n + i - 1`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use super::{FactorSystem, XGraph};
use crate::error::{Error, Result};
use crate::graph::{Graph, InducedSpace, Vertex, VertexSet};
use crate::io::dot_escape;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    /// Edge of the host graph.
    Base,
    /// Joins vertices of W-adjacent maximal cliques.
    W,
    /// Joins a host vertex to the projection vertex of a domain containing it.
    Cone,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Base => "base",
            EdgeKind::W => "w",
            EdgeKind::Cone => "cone",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Augmented {
    n_base: usize,
    graph: Graph,
    kinds: HashMap<(Vertex, Vertex), EdgeKind>,
}

fn domain_label(fs: &FactorSystem, i: usize) -> String {
    let names: Vec<&str> = fs.domain(i).iter().map(|v| fs.host().label(v)).collect();
    format!("b{{{}}}", names.join(","))
}

impl Augmented {
    pub fn build(fs: &FactorSystem, w: &XGraph) -> Result<Self> {
        let host = fs.host();
        let n = host.n();
        if w.cliques() != crate::graph::maximal_cliques(host).as_slice() {
            return Err(Error::pre("W is not built over the maximal cliques of the factor system's host"));
        }
        let mut labels: Vec<String> = host.labels().to_vec();
        labels.extend((1..fs.len()).map(|i| domain_label(fs, i)));
        let mut graph = Graph::with_labels(labels)?;
        let mut kinds = HashMap::new();
        for (u, v) in host.edges() {
            graph.add_edge(u, v)?;
            kinds.insert((u, v), EdgeKind::Base);
        }
        for (a, b) in w.graph().edges() {
            for u in w.clique(a).iter() {
                for v in w.clique(b).iter() {
                    if u != v {
                        let e = (u.min(v), u.max(v));
                        if !kinds.contains_key(&e) {
                            graph.add_edge(u, v)?;
                            kinds.insert(e, EdgeKind::W);
                        }
                    }
                }
            }
        }
        for i in 1..fs.len() {
            let b = n + i - 1;
            for v in fs.domain(i).iter() {
                graph.add_edge(v, b)?;
                kinds.insert((v, b), EdgeKind::Cone);
            }
        }
        Ok(Augmented { n_base: n, graph, kinds })
    }

    /// The augmented graph `CX`.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n_base(&self) -> usize {
        self.n_base
    }

    pub fn kind(&self, u: Vertex, v: Vertex) -> Option<EdgeKind> {
        self.kinds.get(&(u.min(v), u.max(v))).copied()
    }

    /// Projection vertex `b_F` of domain `i ≥ 1`.
    pub fn b(&self, i: usize) -> Vertex {
        assert!(i >= 1, "the host domain has no projection vertex");
        self.n_base + i - 1
    }

    pub fn is_projection(&self, v: Vertex) -> bool {
        v >= self.n_base
    }

    /// Domain index of a projection vertex.
    pub fn domain_of(&self, v: Vertex) -> Option<usize> {
        self.is_projection(v).then(|| v - self.n_base + 1)
    }

    /// Vertex set of `CF`: `V(F)` plus `b_{F'}` for every `F' ⊊ F`.
    pub fn cf(&self, fs: &FactorSystem, i: usize) -> VertexSet {
        let mut out: Vec<Vertex> = fs.domain(i).iter().collect();
        out.extend((1..fs.len()).filter(|&j| fs.properly_nested(j, i)).map(|j| self.b(j)));
        out.into()
    }

    /// Projection part `PF`; empty for the host.
    pub fn projection_part(&self, fs: &FactorSystem, i: usize) -> VertexSet {
        if i == 0 {
            return VertexSet::new();
        }
        let lk = fs.link(i);
        let mut out: Vec<Vertex> = lk.iter().collect();
        for j in 1..fs.len() {
            let d = fs.domain(j);
            if (!lk.is_empty() && d.is_subset(lk)) || fs.nested(i, j) {
                out.push(self.b(j));
            }
        }
        out.into()
    }

    fn all(&self) -> VertexSet {
        self.graph.all_vertices()
    }

    /// Vertex set of the complement graph `Y_F = CX − PF`.
    pub fn complement(&self, fs: &FactorSystem, i: usize) -> Result<VertexSet> {
        if i == 0 {
            return Err(Error::pre("the complement graph of the host domain is not defined"));
        }
        Ok(self.all().difference(&self.projection_part(fs, i)))
    }

    /// Vertex set of the leveled complement `Y^k_F`: like `Y_F` but keeping
    /// `b_{F'}` for `F ⊆ F'` with `cl(F') > k`.
    pub fn leveled_complement(&self, fs: &FactorSystem, i: usize, k: usize) -> Result<VertexSet> {
        if i == 0 {
            return Err(Error::pre("the leveled complement of the host domain is not defined"));
        }
        let lk = fs.link(i);
        let mut removed: Vec<Vertex> = lk.iter().collect();
        for j in 1..fs.len() {
            let d = fs.domain(j);
            let under_link = !lk.is_empty() && d.is_subset(lk);
            let low_super = fs.nested(i, j) && fs.co_level(j) <= k;
            if under_link || low_super {
                removed.push(self.b(j));
            }
        }
        Ok(self.all().difference(&removed.into()))
    }

    /// `Z^k_F`: the induced graph on `set` plus `b_H - b_{H'}` for `H ⊊ H'`.
    pub fn z_modification(&self, fs: &FactorSystem, set: &VertexSet) -> InducedSpace {
        let mut g = self.graph.induced(set);
        let ids = set.as_slice();
        for (a, &u) in ids.iter().enumerate() {
            for (b, &v) in ids.iter().enumerate().skip(a + 1) {
                if let (Some(h), Some(h2)) = (self.domain_of(u), self.domain_of(v)) {
                    if fs.properly_nested(h, h2) || fs.properly_nested(h2, h) {
                        g.add_edge(a, b).expect("local ids are valid");
                    }
                }
            }
        }
        InducedSpace::from_graph(set.clone(), g)
    }

    pub fn space(&self, set: VertexSet) -> InducedSpace {
        InducedSpace::new(&self.graph, set)
    }

    /// DOT rendering with `kind` edge attributes and boxed projection vertices.
    pub fn to_dot(&self, set: Option<&VertexSet>, name: &str) -> String {
        let keep = |v: Vertex| set.is_none_or(|s| s.contains(v));
        let mut out = format!("graph \"{}\" {{\n", dot_escape(name));
        for v in self.graph.vertices().filter(|&v| keep(v)) {
            let shape = if self.is_projection(v) { "box" } else { "ellipse" };
            let _ = writeln!(out, "  {v} [label=\"{}\", shape={shape}];", dot_escape(self.graph.label(v)));
        }
        for (u, v) in self.graph.edges().filter(|&(u, v)| keep(u) && keep(v)) {
            let kind = self.kind(u, v).expect("every edge has a kind").as_str();
            let _ = writeln!(out, "  {u} -- {v} [kind=\"{kind}\"];");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, set: Option<&VertexSet>) -> Value {
        let keep = |v: Vertex| set.is_none_or(|s| s.contains(v));
        let vertices: Vec<Value> = self
            .graph
            .vertices()
            .filter(|&v| keep(v))
            .map(|v| {
                json!({
                    "id": v,
                    "label": self.graph.label(v),
                    "projection": self.is_projection(v),
                })
            })
            .collect();
        let edges: Vec<Value> = self
            .graph
            .edges()
            .filter(|&(u, v)| keep(u) && keep(v))
            .map(|(u, v)| json!([u, v, self.kind(u, v).unwrap().as_str()]))
            .collect();
        json!({ "vertices": vertices, "edges": edges })
    }
}
