//! Assembles the triple `(X, W, 𝔉)` and the per-domain X-graphs `W^F`
//! from either a generic graph or a quasi-median graph.

use crate::error::Result;
use crate::factor::{domain_x_graph, FactorSystem, QmPipeline, XGraph};
use crate::graph::{maximal_cliques, Graph, VertexSet};
use crate::verify::ProtoHierarchy;

#[derive(Clone, Debug)]
pub struct Triple {
    pub fs: FactorSystem,
    pub w: XGraph,
    /// `W^F` per domain index; `family[0]` equals `w`.
    pub family: Vec<XGraph>,
    /// Set for quasi-median inputs, whose host is the crossing graph.
    pub qm: Option<QmPipeline>,
}

/// W restricted to a domain: maximal cliques `c, c'` of the domain are
/// adjacent when they lie in W-adjacent maximal cliques of the host.
pub fn restricted_x_graph(fs: &FactorSystem, w: &XGraph, i: usize) -> Result<XGraph> {
    let domain = fs.domain(i);
    let base = fs.host().induced(domain);
    let local = maximal_cliques(&base);
    let global: Vec<VertexSet> =
        local.iter().map(|c| c.iter().map(|v| domain.as_slice()[v]).collect()).collect();
    let inside: Vec<Vec<usize>> =
        global.iter().map(|c| (0..w.len()).filter(|&k| c.is_subset(w.clique(k))).collect()).collect();
    let mut pairs = Vec::new();
    for a in 0..local.len() {
        for b in a + 1..local.len() {
            let linked =
                inside[a].iter().any(|&x| inside[b].iter().any(|&y| w.graph().adjacent(x, y)));
            if linked {
                pairs.push((a, b));
            }
        }
    }
    XGraph::new(&base, &pairs)
}

impl Triple {
    /// The minimal factor system of `host` with W given by `w_pairs`, or by
    /// intersection of maximal cliques when absent. Each `W^F` is the
    /// restriction of W to the domain.
    pub fn generic(host: Graph, w_pairs: Option<&[(usize, usize)]>, cap: usize) -> Result<Self> {
        let w = match w_pairs {
            Some(p) => XGraph::new(&host, p)?,
            None => XGraph::intersecting(&host),
        };
        let fs = FactorSystem::minimal(host, cap)?;
        let mut family = vec![w.clone()];
        for i in 1..fs.len() {
            family.push(restricted_x_graph(&fs, &w, i)?);
        }
        Ok(Triple { fs, w, family, qm: None })
    }

    /// The crossing graph of a quasi-median graph with its minimal factor
    /// system, the prism graph as W and each `W^F` from the prisms of the
    /// domain's representative gated subgraph.
    pub fn quasi_median(g: Graph, cap: usize) -> Result<Self> {
        let pipe = QmPipeline::build(g, cap)?;
        let family = (0..pipe.factor_system.len()).map(|i| domain_x_graph(&pipe, i)).collect::<Result<_>>()?;
        Ok(Triple { fs: pipe.factor_system.clone(), w: pipe.w.clone(), family, qm: Some(pipe) })
    }

    pub fn proto(&self) -> Result<ProtoHierarchy> {
        ProtoHierarchy::build(self.fs.clone(), self.w.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::DEFAULT_CLOSURE_CAP;
    use crate::generate;

    #[test]
    fn restriction_joins_cliques_of_adjacent_points() {
        // path 0-1-2-3-4: the domain {0, 2} has cliques {0}, {2} inside the
        // intersecting edges {0,1}, {1,2}
        let t = Triple::generic(generate::path(5), None, DEFAULT_CLOSURE_CAP).unwrap();
        let i = t.fs.index_of(&VertexSet::from([0, 2])).unwrap();
        assert_eq!(t.family[i].len(), 2);
        assert_eq!(t.family[i].graph().edge_count(), 1);
    }

    #[test]
    fn qm_family_starts_with_w() {
        let t = Triple::quasi_median(generate::glued_squares(2).unwrap(), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(t.family[0].cliques(), t.w.cliques());
        assert_eq!(t.family.len(), t.fs.len());
    }
}
