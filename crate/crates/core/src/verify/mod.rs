//! Exact verification of the hierarchy axioms on the proto-hierarchy of a
//! finite factor system.
//!
//! Every check evaluates its inequality over all instances and reports the
//! realized constant together with a witness achieving it. Constants are only
//! compared against bounds supplied by the caller.

mod axioms;
mod hierarchy;
mod proto;
mod realize;
mod report;

use serde::Serialize;

use crate::graph::{Vertex, VertexSet};
use crate::metrics::HalfInt;

pub use axioms::{
    check_bgi, check_bottleneck, check_combinatorial_bgi, check_complement_embedding, check_complexity,
    check_consistency, check_containers, check_hyperbolicity, check_large_links, check_orthogonality,
    check_partial_realization, check_projection_compatibility, check_projections, check_relative_projections,
    check_uniqueness, closest_point_lipschitz, UniquenessTable,
};
pub use hierarchy::{check_hierarchy_condition, HierarchyMap};
pub use proto::{DomainSpace, ProtoHierarchy};
pub use realize::{realize_tuple, ConsistentTuple, Realization};
pub use report::{full_report, replay, FullReport, Verdict, VerifyConfig};

pub const DEFAULT_DAG_CAP: usize = 4096;
pub const DEFAULT_CHOICE_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Some instance involved an infinite distance.
    Degenerate,
    /// Every instance exceeded a size cap.
    Skipped,
}

/// The instance realizing an axiom's constant, or violating a qualitative axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomWitness {
    ProjectionDiameter { domain: usize, w: usize },
    ProjectionLipschitz { domain: usize, w1: usize, w2: usize },
    ProjectionCoverage { domain: usize, vertex: Vertex },
    RelativeProjection { from: usize, to: usize },
    ProjectionPart { from: usize, to: usize },
    ProjectionCompatibility { lower: usize, upper: usize, vertex: Vertex },
    Transverse { u: usize, v: usize, w: usize },
    Nested { lower: usize, upper: usize, w: usize },
    Triple { lower: usize, upper: usize, target: usize },
    Bgi { lower: usize, upper: usize, w1: usize, w2: usize, geodesic: Vec<Vertex> },
    CombinatorialBgi { domain: usize, x: Vertex, y: Vertex, geodesic: Vec<Vertex> },
    LargeLinks { domain: usize, w1: usize, w2: usize, family: Vec<usize> },
    PartialRealization { family: Vec<usize>, points: Vec<Vertex>, w: usize },
    Uniqueness { w1: usize, w2: usize, projection: u32, distance: u32 },
    Container { top: usize, inner: usize, candidate: VertexSet, missing: Option<usize> },
    Orthogonality { u: usize, v: usize, w: Option<usize> },
    Hyperbolicity { domain: usize, quadruple: [Vertex; 4] },
    Embedding { domain: usize, pair: (Vertex, Vertex) },
    Bottleneck { x: Vertex, y: Vertex, midpoint: Vertex },
    Complexity { chain: Vec<usize> },
    HierarchyCondition { domain: usize, sub: usize, clique: VertexSet, w1: usize, w2: Option<usize>, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub name: &'static str,
    /// Realized constant; `None` for qualitative checks and for infinite values.
    pub constant: Option<HalfInt>,
    pub bound: Option<HalfInt>,
    pub status: Status,
    pub checked: u64,
    pub degenerate: u64,
    pub skipped: u64,
    pub witness: Option<AxiomWitness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub(crate) fn new(name: &'static str) -> Self {
        AxiomReport {
            name,
            constant: None,
            bound: None,
            status: Status::Pass,
            checked: 0,
            degenerate: 0,
            skipped: 0,
            witness: None,
            notes: Vec::new(),
        }
    }

    /// Sets the status from the counts, an explicit violation flag and `bound`.
    pub fn finish(&mut self, violated: bool, bound: Option<HalfInt>) {
        self.bound = bound;
        let over = matches!((self.constant, bound), (Some(c), Some(b)) if c > b);
        self.status = if violated || over {
            Status::Fail
        } else if self.degenerate > 0 {
            Status::Degenerate
        } else if self.checked == 0 && self.skipped > 0 {
            Status::Skipped
        } else {
            Status::Pass
        };
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Running maximum over instances with the first witness achieving it.
pub(crate) struct Tally {
    best: Option<(u32, AxiomWitness)>,
    checked: u64,
    degenerate: u64,
    skipped: u64,
    degenerate_witness: Option<AxiomWitness>,
}

/// Result of evaluating one instance of an inequality.
pub(crate) enum Outcome {
    Value(u32, AxiomWitness),
    Degenerate(AxiomWitness),
    Skipped,
}

impl Tally {
    pub(crate) fn new() -> Self {
        Tally { best: None, checked: 0, degenerate: 0, skipped: 0, degenerate_witness: None }
    }

    pub(crate) fn add(&mut self, o: Outcome) {
        match o {
            Outcome::Value(v, w) => {
                self.checked += 1;
                if self.best.as_ref().is_none_or(|(b, _)| v > *b) {
                    self.best = Some((v, w));
                }
            }
            Outcome::Degenerate(w) => {
                self.degenerate += 1;
                self.degenerate_witness.get_or_insert(w);
            }
            Outcome::Skipped => self.skipped += 1,
        }
    }

    pub(crate) fn into_report(self, name: &'static str) -> AxiomReport {
        let mut r = AxiomReport::new(name);
        r.checked = self.checked;
        r.degenerate = self.degenerate;
        r.skipped = self.skipped;
        match self.best {
            Some((v, w)) => {
                r.constant = Some(HalfInt::from_int(u64::from(v)));
                r.witness = Some(w);
            }
            None if self.checked == 0 && self.degenerate == 0 => r.constant = Some(HalfInt::ZERO),
            None => r.witness = self.degenerate_witness,
        }
        r.finish(false, None);
        r
    }
}
