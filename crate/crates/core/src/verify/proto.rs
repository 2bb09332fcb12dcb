//! The proto-hierarchy on `W` induced by a factor system: coordinate
//! projections `π_F`, relative projections `ρ` and the spaces they live in.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factor::{Augmented, FactorSystem, Relation, XGraph};
use crate::graph::{DistanceMatrix, InducedSpace, Vertex, VertexSet};
use crate::metrics::nearest_point_projection;

/// `CF`, `PF`, `Y_F` and the closest-point projection `p_F` of one domain.
#[derive(Clone, Debug)]
pub struct DomainSpace {
    pub cf: InducedSpace,
    pub pf: VertexSet,
    /// `None` for the host, which has no complement graph.
    pub y: Option<InducedSpace>,
    /// `p_F(x)` per vertex of `CX`; `None` outside `Y_F`, empty when no vertex
    /// of `CF` is reachable from `x`.
    proj: Vec<Option<VertexSet>>,
}

impl DomainSpace {
    fn build(fs: &FactorSystem, cx: &Augmented, i: usize) -> Result<Self> {
        let cf = cx.space(cx.cf(fs, i));
        let n = cx.graph().n();
        if i == 0 {
            let proj = (0..n).map(|x| Some(VertexSet::singleton(x))).collect();
            return Ok(DomainSpace { cf, pf: VertexSet::new(), y: None, proj });
        }
        let pf = cx.projection_part(fs, i);
        let y = cx.space(cx.complement(fs, i)?);
        let mut proj = vec![None; n];
        for x in y.ids().iter() {
            proj[x] = Some(nearest_point_projection(&y, cf.ids(), x)?.set);
        }
        Ok(DomainSpace { cf, pf, y: Some(y), proj })
    }

    /// `p_F(x)`; the identity on the host.
    pub fn project(&self, x: Vertex) -> Option<&VertexSet> {
        self.proj.get(x).and_then(Option::as_ref)
    }

    /// Union of `p_F` over the members of `set` lying in `Y_F`, and whether
    /// some member had an empty projection.
    pub fn project_set(&self, set: &VertexSet) -> (VertexSet, bool) {
        let mut out = VertexSet::new();
        let mut foreign = false;
        for x in set.iter() {
            if let Some(p) = self.project(x) {
                foreign |= p.is_empty();
                out = out.union(p);
            }
        }
        (out, foreign)
    }

    /// Set distance in `CF`; `None` when a set is empty or the sets are disconnected.
    pub fn dist(&self, a: &VertexSet, b: &VertexSet) -> Option<u32> {
        self.cf.set_distance(a, b)
    }

    /// Diameter in `CF`; `None` for an empty or disconnected set.
    pub fn diam(&self, set: &VertexSet) -> Option<u32> {
        if set.is_empty() {
            return None;
        }
        self.cf.set_diameter(set)
    }
}

/// Coordinates of the maximal cliques of `X` in every domain.
#[derive(Clone, Debug)]
pub struct ProtoHierarchy {
    fs: FactorSystem,
    w: XGraph,
    cx: Augmented,
    w_dist: DistanceMatrix,
    spaces: Vec<DomainSpace>,
    pi: Vec<Vec<VertexSet>>,
    pi_foreign: Vec<Vec<bool>>,
    rho: HashMap<(usize, usize), (VertexSet, bool)>,
}

impl ProtoHierarchy {
    pub fn build(fs: FactorSystem, w: XGraph) -> Result<Self> {
        let cx = Augmented::build(&fs, &w)?;
        let spaces = (0..fs.len())
            .into_par_iter()
            .map(|i| DomainSpace::build(&fs, &cx, i))
            .collect::<Result<Vec<_>>>()?;

        let mut pi = Vec::with_capacity(fs.len());
        let mut pi_foreign = Vec::with_capacity(fs.len());
        for (i, s) in spaces.iter().enumerate() {
            let mut row = Vec::with_capacity(w.len());
            let mut flags = Vec::with_capacity(w.len());
            for (k, c) in w.cliques().iter().enumerate() {
                if i == 0 {
                    row.push(c.clone());
                    flags.push(false);
                    continue;
                }
                let y = s.y.as_ref().expect("non-host domains have complements");
                let meet: VertexSet = c.iter().filter(|&x| y.contains(x)).collect();
                if meet.is_empty() {
                    return Err(Error::internal(format!(
                        "maximal clique w{k} misses the complement graph of domain {i}"
                    )));
                }
                let (set, foreign) = s.project_set(&meet);
                row.push(set);
                flags.push(foreign);
            }
            pi.push(row);
            pi_foreign.push(flags);
        }

        let mut rho = HashMap::new();
        for f in 1..fs.len() {
            for g in 0..fs.len() {
                if !matches!(fs.relation(f, g), Relation::NestedIn | Relation::Transverse) {
                    continue;
                }
                let pf = &spaces[f].pf;
                let entry = if g == 0 {
                    (pf.clone(), false)
                } else {
                    spaces[g].project_set(pf)
                };
                rho.insert((f, g), entry);
            }
        }
        let w_dist = w.graph().distances();
        Ok(ProtoHierarchy { fs, w, cx, w_dist, spaces, pi, pi_foreign, rho })
    }

    pub fn factor_system(&self) -> &FactorSystem {
        &self.fs
    }

    pub fn x_graph(&self) -> &XGraph {
        &self.w
    }

    pub fn augmented(&self) -> &Augmented {
        &self.cx
    }

    pub fn domain_count(&self) -> usize {
        self.fs.len()
    }

    pub fn w_count(&self) -> usize {
        self.w.len()
    }

    pub fn w_distances(&self) -> &DistanceMatrix {
        &self.w_dist
    }

    pub fn space(&self, i: usize) -> &DomainSpace {
        &self.spaces[i]
    }

    /// `π_F(w)`.
    pub fn pi(&self, i: usize, w: usize) -> &VertexSet {
        &self.pi[i][w]
    }

    /// Whether `π_F(w)` lost a vertex of `w ∩ Y_F` to a foreign component.
    pub fn pi_foreign(&self, i: usize, w: usize) -> bool {
        self.pi_foreign[i][w]
    }

    /// `ρ^f_g ⊆ C g`, defined when `f ⊊ g` or `f ⋔ g`.
    pub fn rho(&self, f: usize, g: usize) -> Option<&VertexSet> {
        self.rho.get(&(f, g)).map(|(s, _)| s)
    }

    pub fn rho_foreign(&self, f: usize, g: usize) -> bool {
        self.rho.get(&(f, g)).is_some_and(|&(_, x)| x)
    }

    /// Ordered pairs `(f, g)` carrying a relative projection, sorted.
    pub fn rho_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.rho.keys().copied().collect();
        v.sort_unstable();
        v
    }

    /// Downward relative projection `ρ^{upper}_{lower}` of a set of `C upper`:
    /// `p_lower` on the members lying in `Y_lower`.
    pub fn rho_down(&self, lower: usize, set: &VertexSet) -> VertexSet {
        self.spaces[lower].project_set(set).0
    }

    /// Set distance in `CF`.
    pub fn dist(&self, i: usize, a: &VertexSet, b: &VertexSet) -> Option<u32> {
        self.spaces[i].dist(a, b)
    }

    /// Diameter in `CF`.
    pub fn diam(&self, i: usize, set: &VertexSet) -> Option<u32> {
        self.spaces[i].diam(set)
    }

    /// Domains whose complement graph is disconnected.
    pub fn disconnected_complements(&self) -> Vec<usize> {
        (1..self.fs.len()).filter(|&i| !self.spaces[i].y.as_ref().is_some_and(InducedSpace::is_connected)).collect()
    }
}
