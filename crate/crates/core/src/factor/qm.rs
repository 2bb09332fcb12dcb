//! Factor systems and X-graphs derived from a quasi-median graph.
//!
//! The domains on the crossing graph `ΔX` are produced twice: once as the
//! closure of vertex links in `ΔX`, and once geometrically as the hyperplane
//! sets of fibres and their iterated gated projections. The two must agree.

use std::collections::{BTreeMap, HashMap};

use super::{FactorSystem, XGraph};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::qm::{Geometry, GatedSubgraph, Prism};

/// Host hyperplane id of each hyperplane of `local`, the geometry of the
/// subgraph induced on `set`.
fn host_hyperplanes(geo: &Geometry, set: &VertexSet, local: &Geometry) -> Result<Vec<usize>> {
    let ids = set.as_slice();
    let mut to_host = Vec::with_capacity(local.hyperplane_count());
    for h in local.hyperplanes() {
        let mut host_ids = h.edges.iter().map(|&(a, b)| geo.dual(ids[a], ids[b]).expect("induced edge"));
        let first = host_ids.next().expect("hyperplanes are nonempty");
        if host_ids.any(|x| x != first) {
            return Err(Error::internal(format!("local hyperplane {} spans several host hyperplanes", h.id)));
        }
        to_host.push(first);
    }
    Ok(to_host)
}

/// Crossing graph of the gated subgraph on `set`, computed from the induced
/// graph alone and expressed in host hyperplane ids.
pub fn local_crossing_graph(geo: &Geometry, set: &VertexSet) -> Result<(VertexSet, Vec<(usize, usize)>)> {
    let local = Geometry::new(geo.graph().induced(set));
    let to_host = host_hyperplanes(geo, set, &local)?;
    let vertices: VertexSet = to_host.iter().copied().collect();
    if vertices.len() != to_host.len() {
        return Err(Error::internal("two local hyperplanes extend to the same host hyperplane"));
    }
    let mut edges = Vec::new();
    for a in 0..to_host.len() {
        for b in local.crossing_row(a).ones().filter(|&b| b > a) {
            let (x, y) = (to_host[a], to_host[b]);
            edges.push((x.min(y), x.max(y)));
        }
    }
    edges.sort_unstable();
    Ok((vertices, edges))
}

fn induced_edges(g: &Graph, set: &VertexSet) -> Vec<(usize, usize)> {
    g.edges().filter(|&(u, v)| set.contains(u) && set.contains(v)).collect()
}

/// Builds the minimal factor system on `ΔX` and a representative gated
/// subgraph of `X` for each domain, checking the two constructions agree.
pub fn qm_factor_system(geo: &Geometry, cap: usize) -> Result<(FactorSystem, Vec<GatedSubgraph>)> {
    let delta = geo.crossing_graph();
    let fs = FactorSystem::minimal(delta.clone(), cap)?;

    // geometric side: fibres, then gated projections until no new hyperplane set appears
    let mut reps: BTreeMap<VertexSet, GatedSubgraph> = BTreeMap::new();
    reps.insert(geo.hyperplanes_of(&geo.graph().all_vertices()), geo.gated(geo.graph().all_vertices())?);
    for h in 0..geo.hyperplane_count() {
        if geo.crossing_row(h).is_clear() {
            continue;
        }
        let fibre = geo.fibres(h).into_iter().next().expect("a hyperplane has fibres");
        let j = geo.gated(fibre)?;
        reps.entry(geo.hyperplanes_of(j.vertices())).or_insert(j);
    }
    let mut list: Vec<GatedSubgraph> = reps.values().cloned().collect();
    let mut i = 0;
    while i < list.len() {
        for k in 0..i {
            let p = geo.gate_projection(&list[i], &list[k])?;
            let key = geo.hyperplanes_of(p.vertices());
            if key.is_empty() || reps.contains_key(&key) {
                continue;
            }
            reps.insert(key, p.clone());
            list.push(p);
            if list.len() > cap {
                return Err(Error::CapExceeded { what: "gated subgraph system", cap });
            }
        }
        i += 1;
    }

    let geometric: Vec<&VertexSet> = reps.keys().collect();
    let mut combinatorial: Vec<&VertexSet> = fs.domains().iter().collect();
    combinatorial.sort();
    if geometric != combinatorial {
        return Err(Error::internal(format!(
            "gated subgraph system has hyperplane sets {geometric:?}, factor system has {combinatorial:?}"
        )));
    }
    let mut out = Vec::with_capacity(fs.len());
    for d in fs.domains() {
        let rep = reps[d].clone();
        let (vertices, edges) = local_crossing_graph(geo, rep.vertices())?;
        if vertices != *d || edges != induced_edges(&delta, d) {
            return Err(Error::internal(format!("crossing graph of the representative of {d:?} differs")));
        }
        out.push(rep);
    }
    Ok((fs, out))
}

/// W over `ΔX`: maximal prisms, adjacent when they intersect in `X`.
/// Prism `i` corresponds to the `i`-th maximal clique of `ΔX`.
pub fn x_graph_from_prisms(geo: &Geometry) -> Result<(XGraph, Vec<Prism>)> {
    if geo.hyperplane_count() == 0 {
        return Err(Error::pre("the quasi-median pipeline needs a graph with at least one edge"));
    }
    let prisms = geo.maximal_prisms()?;
    let mut pairs = Vec::new();
    for (i, p) in prisms.iter().enumerate() {
        for (j, q) in prisms.iter().enumerate().skip(i + 1) {
            if !p.vertices.is_disjoint(&q.vertices) {
                pairs.push((i, j));
            }
        }
    }
    let w = XGraph::new(&geo.crossing_graph(), &pairs)?;
    for (c, p) in w.cliques().iter().zip(&prisms) {
        if *c != p.hyperplanes {
            return Err(Error::internal("prism order differs from the maximal clique order"));
        }
    }
    Ok((w, prisms))
}

/// W over domain `i`: the maximal prisms of its representative gated
/// subgraph, adjacent when they intersect. The base graph is the crossing
/// graph induced on the domain, with vertices numbered by position in it.
pub fn domain_x_graph(pipe: &QmPipeline, i: usize) -> Result<XGraph> {
    let domain = pipe.factor_system.domain(i);
    let base = pipe.factor_system.host().induced(domain);
    let set = pipe.representatives[i].vertices();
    let local = Geometry::new(pipe.geometry.graph().induced(set));
    let to_host = host_hyperplanes(&pipe.geometry, set, &local)?;
    let prisms = local.maximal_prisms()?;
    let cliques = crate::graph::maximal_cliques(&base);
    let mut index = Vec::with_capacity(prisms.len());
    for p in &prisms {
        let positions: Option<VertexSet> = p
            .hyperplanes
            .iter()
            .map(|h| domain.as_slice().binary_search(&to_host[h]).ok())
            .collect();
        let c = positions
            .and_then(|c| cliques.iter().position(|k| *k == c))
            .ok_or_else(|| Error::internal(format!("a prism of domain {i} is not a maximal clique of the domain")))?;
        index.push(c);
    }
    let mut sorted = index.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != cliques.len() || index.len() != cliques.len() {
        return Err(Error::internal(format!("prisms of domain {i} do not match its maximal cliques")));
    }
    let mut pairs = Vec::new();
    for (a, p) in prisms.iter().enumerate() {
        for (b, q) in prisms.iter().enumerate().skip(a + 1) {
            if !p.vertices.is_disjoint(&q.vertices) {
                pairs.push((index[a], index[b]));
            }
        }
    }
    XGraph::new(&base, &pairs)
}

/// Everything the quasi-median pipeline derives from its input graph.
#[derive(Clone, Debug)]
pub struct QmPipeline {
    pub geometry: Geometry,
    pub factor_system: FactorSystem,
    /// Representative gated subgraph of `X` per domain index.
    pub representatives: Vec<GatedSubgraph>,
    pub prisms: Vec<Prism>,
    pub w: XGraph,
}

impl QmPipeline {
    pub fn build(g: Graph, cap: usize) -> Result<Self> {
        let report = crate::qm::is_quasi_median(&g);
        if !report.is_quasi_median {
            let w = serde_json::to_string(&report.witness).unwrap_or_default();
            return Err(Error::pre(format!("input is not quasi-median: {w}")));
        }
        let geometry = Geometry::new(g);
        let (w, prisms) = x_graph_from_prisms(&geometry)?;
        let (factor_system, representatives) = qm_factor_system(&geometry, cap)?;
        Ok(QmPipeline { geometry, factor_system, representatives, prisms, w })
    }

    /// Map from domain vertex sets to domain indices, for lookups by hyperplane set.
    pub fn domain_index(&self) -> HashMap<VertexSet, usize> {
        self.factor_system.domains().iter().cloned().enumerate().map(|(i, d)| (d, i)).collect()
    }
}
