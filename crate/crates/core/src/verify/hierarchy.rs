//! The hierarchy condition: compatibility of a family of X-graphs `W^F`,
//! one per domain, with the augmented graphs and the clique joins.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{AxiomReport, AxiomWitness, ProtoHierarchy};
use crate::error::{Error, Result};
use crate::factor::{Augmented, FactorSystem, XGraph};
use crate::graph::{maximal_cliques, maximal_cliques_within, Graph, VertexSet};

/// The map `W^{F'} → W^F` induced by a maximal clique `x` of `lk(F') ∩ F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HierarchyMap {
    pub domain: usize,
    pub sub: usize,
    /// Host vertex ids; empty when `lk(F') ∩ F` is empty.
    pub clique: VertexSet,
    /// Image of each vertex of `W^{F'}`.
    pub image: Vec<usize>,
}

fn fail(r: &mut AxiomReport, w: AxiomWitness) {
    r.witness.get_or_insert(w);
}

fn labelled(g: &Graph, set: &VertexSet) -> (BTreeSet<String>, BTreeSet<(String, String)>) {
    let vertices = set.iter().map(|v| g.label(v).to_string()).collect();
    let edges = g
        .edges()
        .filter(|&(u, v)| set.contains(u) && set.contains(v))
        .map(|(u, v)| {
            let (a, b) = (g.label(u).to_string(), g.label(v).to_string());
            if a <= b { (a, b) } else { (b, a) }
        })
        .collect();
    (vertices, edges)
}

/// The factor system induced on domain `i`, in local vertex ids.
pub(crate) fn induced_system(fs: &FactorSystem, i: usize, cap: usize) -> Result<FactorSystem> {
    let domain = fs.domain(i);
    let host = fs.host().induced(domain);
    let local = |d: &VertexSet| -> VertexSet {
        d.iter().map(|v| domain.as_slice().binary_search(&v).expect("subdomain")).collect()
    };
    let seeds = fs.subdomains(i).into_iter().map(|j| local(fs.domain(j))).collect();
    FactorSystem::close(host, seeds, cap)
}

/// Checks the family `W^F` (indexed like the domains) against the
/// proto-hierarchy: `W^X = W`, `C_F F' = CF'` as labelled graphs for all
/// `F' ⊑ F`, and for every maximal clique `x` of `lk(F') ∩ F` the map
/// `w' ↦ (first maximal clique of F containing x ∪ w')` is a graph
/// homomorphism `W^{F'} → W^F`. With `separation`, non-adjacent vertices
/// must also have distinct, non-adjacent images.
///
/// Fails with a precondition error when `x ∪ w'` is not a clique or lies in
/// no maximal clique of `F`.
pub fn check_hierarchy_condition(
    ph: &ProtoHierarchy,
    family: &[XGraph],
    separation: bool,
    cap: usize,
) -> Result<(AxiomReport, Vec<HierarchyMap>)> {
    let fs = ph.factor_system();
    let host = fs.host();
    if family.len() != fs.len() {
        return Err(Error::pre(format!("{} X-graphs supplied for {} domains", family.len(), fs.len())));
    }
    for (i, w) in family.iter().enumerate() {
        if w.cliques() != maximal_cliques(&host.induced(fs.domain(i))).as_slice() {
            return Err(Error::pre(format!("the X-graph of domain {i} is not over the domain's maximal cliques")));
        }
    }
    let mut r = AxiomReport::new("hierarchy_condition");
    let top: Vec<(usize, usize)> = family[0].graph().edges().collect();
    let w_edges: Vec<(usize, usize)> = ph.x_graph().graph().edges().collect();
    r.checked += 1;
    if top != w_edges {
        fail(&mut r, AxiomWitness::HierarchyCondition {
            domain: 0,
            sub: 0,
            clique: VertexSet::new(),
            w1: 0,
            w2: None,
            reason: "the X-graph of the host differs from W".into(),
        });
    }

    let cx = ph.augmented();
    for i in 0..fs.len() {
        let sub_fs = induced_system(fs, i, cap)?;
        let sub_cx = Augmented::build(&sub_fs, &family[i])?;
        let domain = fs.domain(i);
        for j in fs.subdomains(i) {
            r.checked += 1;
            let local: VertexSet =
                fs.domain(j).iter().map(|v| domain.as_slice().binary_search(&v).expect("subdomain")).collect();
            let k = sub_fs.index_of(&local).expect("subdomains survive the induced closure");
            if labelled(sub_cx.graph(), &sub_cx.cf(&sub_fs, k)) != labelled(cx.graph(), &cx.cf(fs, j)) {
                fail(&mut r, AxiomWitness::HierarchyCondition {
                    domain: i,
                    sub: j,
                    clique: VertexSet::new(),
                    w1: 0,
                    w2: None,
                    reason: "augmented graph of the subdomain differs inside the domain".into(),
                });
            }
        }
    }

    let mut maps = Vec::new();
    for i in 0..fs.len() {
        let domain = fs.domain(i);
        let to_local = |s: &VertexSet| -> Option<VertexSet> {
            s.iter().map(|v| domain.as_slice().binary_search(&v).ok()).collect()
        };
        for j in fs.subdomains(i) {
            let sub = fs.domain(j);
            let part = fs.link(j).intersection(domain);
            let xs = if part.is_empty() { vec![VertexSet::new()] } else { maximal_cliques_within(host, &part) };
            for x in xs {
                let mut image = Vec::with_capacity(family[j].len());
                for (a, c) in family[j].cliques().iter().enumerate() {
                    let global: VertexSet = c.iter().map(|v| sub.as_slice()[v]).collect();
                    let joined = global.union(&x);
                    if !host.is_clique(&joined) {
                        return Err(Error::pre(format!(
                            "orthogonality violated: clique {x:?} joined with vertex {a} of the X-graph of domain {j} is not a clique"
                        )));
                    }
                    let l = to_local(&joined).expect("both parts lie in the domain");
                    let target = family[i].cliques().iter().position(|k| l.is_subset(k)).ok_or_else(|| {
                        Error::pre(format!("no maximal clique of domain {i} contains {joined:?}"))
                    })?;
                    image.push(target);
                }
                let wf = family[j].graph();
                let we = family[i].graph();
                for a in 0..wf.n() {
                    for b in a + 1..wf.n() {
                        r.checked += 1;
                        let (fa, fb) = (image[a], image[b]);
                        let reason = if wf.adjacent(a, b) {
                            (fa != fb && !we.adjacent(fa, fb)).then_some("adjacent vertices map to non-adjacent ones")
                        } else if separation {
                            (fa == fb || we.adjacent(fa, fb)).then_some("non-adjacent vertices are not kept apart")
                        } else {
                            None
                        };
                        if let Some(reason) = reason {
                            fail(&mut r, AxiomWitness::HierarchyCondition {
                                domain: i,
                                sub: j,
                                clique: x.clone(),
                                w1: a,
                                w2: Some(b),
                                reason: reason.into(),
                            });
                        }
                    }
                }
                maps.push(HierarchyMap { domain: i, sub: j, clique: x, image });
            }
        }
    }
    let violated = r.witness.is_some();
    r.finish(violated, None);
    Ok((r, maps))
}
