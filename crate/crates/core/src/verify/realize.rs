//! Consistent tuples and their realization by points of `W`.

use serde::Serialize;

use super::ProtoHierarchy;
use crate::error::{Error, Result};
use crate::factor::Relation;
use crate::graph::{Vertex, VertexSet};

/// One coordinate `b_U ⊆ CU` per domain together with the consistency
/// constant it was checked at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistentTuple {
    coords: Vec<VertexSet>,
    kappa: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Realization {
    /// First point of `W` minimizing the deviation.
    pub w: usize,
    /// `max_U d_U(π_U(w), b_U)`.
    pub deviation: u32,
}

const INFINITE: u32 = u32::MAX;

/// Worst consistency defect of `coords`, with the pair of domains realizing it.
fn worst_defect(ph: &ProtoHierarchy, coords: &[VertexSet]) -> (u32, usize, usize) {
    let fs = ph.factor_system();
    let n = fs.len();
    let mut worst = (0, 0, 0);
    let mut bump = |v: Option<u32>, u: usize, w: usize| {
        let v = v.unwrap_or(INFINITE);
        if v > worst.0 {
            worst = (v, u, w);
        }
    };
    for u in 0..n {
        bump(ph.diam(u, &coords[u]), u, u);
    }
    for u in 0..n {
        for v in 0..n {
            match fs.relation(u, v) {
                Relation::Transverse if u < v => {
                    let a = ph.rho(u, v).and_then(|r| ph.dist(v, &coords[v], r));
                    let b = ph.rho(v, u).and_then(|r| ph.dist(u, &coords[u], r));
                    bump(a.into_iter().chain(b).min(), u, v);
                }
                Relation::NestedIn => {
                    let a = ph.rho(u, v).and_then(|r| ph.dist(v, &coords[v], r));
                    let down = ph.rho_down(u, &coords[v]);
                    let b = ph.diam(u, &coords[u].union(&down));
                    bump(a.into_iter().chain(b).min(), u, v);
                }
                _ => {}
            }
        }
    }
    worst
}

impl ConsistentTuple {
    /// Validates the coordinates at `kappa`: every `b_U` is a nonempty subset
    /// of `CU` of diameter at most `kappa`, and the transverse and nested
    /// consistency inequalities hold with `b` in place of `π`.
    pub fn new(ph: &ProtoHierarchy, coords: Vec<VertexSet>, kappa: u32) -> Result<Self> {
        if coords.len() != ph.domain_count() {
            return Err(Error::pre(format!("{} coordinates for {} domains", coords.len(), ph.domain_count())));
        }
        for (u, b) in coords.iter().enumerate() {
            if b.is_empty() || !b.is_subset(ph.space(u).cf.ids()) {
                return Err(Error::pre(format!("coordinate {u} is empty or leaves its augmented graph")));
            }
        }
        let (value, u, v) = worst_defect(ph, &coords);
        if value > kappa {
            return Err(Error::InconsistentTuple { u, v, value, kappa });
        }
        Ok(ConsistentTuple { coords, kappa })
    }

    /// The smallest `κ` at which `coords` is consistent; `None` when some
    /// inequality has an infinite side.
    pub fn minimal_kappa(ph: &ProtoHierarchy, coords: &[VertexSet]) -> Option<u32> {
        let (v, _, _) = worst_defect(ph, coords);
        (v != INFINITE).then_some(v)
    }

    /// The coordinates `π_U(w)` of a point, at their minimal constant.
    pub fn from_point(ph: &ProtoHierarchy, w: usize) -> Result<Self> {
        let coords: Vec<VertexSet> = (0..ph.domain_count()).map(|u| ph.pi(u, w).clone()).collect();
        let kappa = Self::minimal_kappa(ph, &coords)
            .ok_or_else(|| Error::pre(format!("coordinates of point {w} have infinite defects")))?;
        ConsistentTuple::new(ph, coords, kappa)
    }

    /// Coordinates of `w` with each `π_U(w)` replaced by the first vertex of
    /// `CU` at distance exactly 1 from it, where one exists.
    pub fn perturbed_coords(ph: &ProtoHierarchy, w: usize) -> Vec<VertexSet> {
        (0..ph.domain_count())
            .map(|u| {
                let p = ph.pi(u, w);
                let cf = &ph.space(u).cf;
                let near: Option<Vertex> = cf.ids().iter().find(|&v| cf.dist_to_set(v, p) == Some(1));
                near.map_or_else(|| p.clone(), VertexSet::singleton)
            })
            .collect()
    }

    pub fn coords(&self) -> &[VertexSet] {
        &self.coords
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }
}

/// Exhaustive realization: the point of `W` whose coordinates are closest
/// to the tuple in the worst domain.
pub fn realize_tuple(ph: &ProtoHierarchy, tuple: &ConsistentTuple) -> Result<Realization> {
    let mut best: Option<Realization> = None;
    'points: for w in 0..ph.w_count() {
        let mut dev = 0;
        for (u, b) in tuple.coords.iter().enumerate() {
            match ph.dist(u, ph.pi(u, w), b) {
                Some(d) => dev = dev.max(d),
                None => continue 'points,
            }
        }
        if best.is_none_or(|r| dev < r.deviation) {
            best = Some(Realization { w, deviation: dev });
        }
    }
    best.ok_or_else(|| Error::pre("no point of W has finite distance to the tuple in every domain"))
}
