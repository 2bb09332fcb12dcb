//! The master report: every axiom check on one triple, witness replay and
//! the verdict against configured bounds.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::axioms::{self, UniquenessTable};
use super::{AxiomReport, AxiomWitness, ProtoHierarchy, Status, DEFAULT_CHOICE_CAP, DEFAULT_DAG_CAP};
use crate::error::Result;
use crate::factor::DEFAULT_CLOSURE_CAP;
use crate::metrics::{four_point_defect, prism_graph_distortion, HalfInt, PrismDistortion};
use crate::pipeline::Triple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub cap_closure: usize,
    pub cap_dag: usize,
    pub cap_choices: usize,
    pub seed: u64,
    /// Upper bounds on realized constants, by axiom name.
    pub bounds: BTreeMap<String, HalfInt>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            cap_closure: DEFAULT_CLOSURE_CAP,
            cap_dag: DEFAULT_DAG_CAP,
            cap_choices: DEFAULT_CHOICE_CAP,
            seed: 0,
            bounds: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub pass: bool,
    /// Names of the failing checks.
    pub failed: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FullReport {
    pub input: String,
    pub pipeline: String,
    pub seed: u64,
    pub caps: BTreeMap<&'static str, usize>,
    pub axioms: Vec<AxiomReport>,
    pub constants_table: BTreeMap<&'static str, Option<HalfInt>>,
    pub uniqueness_table: UniquenessTable,
    /// Comparison of the prism graph with the input; quasi-median inputs only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prism_distortion: Option<PrismDistortion>,
    pub verdict: Verdict,
}

impl FullReport {
    /// 0 when every check passes its bounds, 5 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.verdict.pass { 0 } else { 5 }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("input: {}\npipeline: {}\nseed: {}\n\n", self.input, self.pipeline, self.seed);
        let _ = writeln!(out, "{:<30} {:>9} {:>7} {:>10} {:>8} {:>10}", "check", "constant", "bound", "status", "checked", "degenerate");
        for r in &self.axioms {
            let show = |v: Option<HalfInt>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
            let status = serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            let _ = writeln!(
                out,
                "{:<30} {:>9} {:>7} {:>10} {:>8} {:>10}",
                r.name,
                show(r.constant),
                show(r.bound),
                status,
                r.checked,
                r.degenerate
            );
            for n in &r.notes {
                let _ = writeln!(out, "    note: {n}");
            }
        }
        out.push_str("\nuniqueness (kappa -> max W-distance):");
        for (k, t) in &self.uniqueness_table.rows {
            let _ = write!(out, " {k}->{t}");
        }
        out.push('\n');
        if let Some(p) = &self.prism_distortion {
            let _ = writeln!(
                out,
                "prism graph vs input: multiplicative {}, additive {}, max prism diameter {}",
                p.multiplicative.as_f64(),
                p.additive,
                p.max_prism_diameter
            );
        }
        let _ = writeln!(out, "\nverdict: {}", if self.verdict.pass { "pass" } else { "fail" });
        for f in &self.verdict.failed {
            let _ = writeln!(out, "  failed: {f}");
        }
        out
    }
}

/// Recomputes the value of the instance described by `w`. Returns `None`
/// for witnesses that carry no value or whose instance is degenerate.
pub fn replay(ph: &ProtoHierarchy, w: &AxiomWitness) -> Option<HalfInt> {
    let int = |v: u32| HalfInt::from_int(u64::from(v));
    let fs = ph.factor_system();
    match w {
        AxiomWitness::ProjectionDiameter { domain, w } => axioms::projection_diameter(ph, *domain, *w).map(int),
        AxiomWitness::ProjectionLipschitz { domain, w1, w2 } => {
            axioms::projection_lipschitz(ph, *domain, *w1, *w2).map(int)
        }
        AxiomWitness::ProjectionCoverage { domain, vertex } => {
            axioms::projection_coverage(ph, *domain, *vertex).map(int)
        }
        AxiomWitness::RelativeProjection { from, to } => axioms::relative_projection_diameter(ph, *from, *to).map(int),
        AxiomWitness::ProjectionPart { from, to } => axioms::projection_part_diameter(ph, *from, *to).map(int),
        AxiomWitness::ProjectionCompatibility { lower, upper, vertex } => {
            axioms::projection_compatibility(ph, *lower, *upper, *vertex).map(int)
        }
        AxiomWitness::Transverse { u, v, w } => axioms::transverse_value(ph, *u, *v, *w).map(int),
        AxiomWitness::Nested { lower, upper, w } => axioms::nested_value(ph, *lower, *upper, *w).map(int),
        AxiomWitness::Triple { lower, upper, target } => axioms::triple_value(ph, *lower, *upper, *target).map(int),
        AxiomWitness::Bgi { lower, upper, w1, w2, geodesic } => {
            axioms::bgi_replay(ph, *lower, *upper, *w1, *w2, geodesic).map(int)
        }
        AxiomWitness::CombinatorialBgi { domain, x, y, geodesic } => {
            axioms::combinatorial_replay(ph, *domain, *x, *y, geodesic).map(int)
        }
        AxiomWitness::LargeLinks { domain, w1, w2, family } => {
            // the smallest E at which this family works
            let top = (0..fs.len())
                .filter(|&t| fs.properly_nested(t, *domain))
                .filter_map(|t| ph.dist(t, ph.pi(t, *w1), ph.pi(t, *w2)))
                .max()
                .unwrap_or(0);
            (0..=top).find(|&e| axioms::large_links_holds(ph, *domain, *w1, *w2, family, e) == Some(true)).map(int)
        }
        AxiomWitness::PartialRealization { family, points, w } => {
            axioms::realization_defect(ph, family, points, *w).map(int)
        }
        AxiomWitness::Uniqueness { w1, w2, .. } => {
            let p = axioms::max_projection_distance(ph, *w1, *w2)?;
            let d = ph.w_distances().get(*w1, *w2)?;
            Some(int(d.saturating_sub(p)))
        }
        AxiomWitness::Hyperbolicity { domain, quadruple } => {
            let cf = &ph.space(*domain).cf;
            let local = quadruple.map(|v| cf.local(v));
            if local.iter().any(Option::is_none) {
                return None;
            }
            Some(HalfInt::from_doubled(four_point_defect(cf.local_distances(), local.map(Option::unwrap))))
        }
        AxiomWitness::Embedding { domain, pair: (a, b) } => {
            let s = ph.space(*domain);
            let ds = s.cf.dist(*a, *b)?;
            let dy = s.y.as_ref()?.dist(*a, *b)?;
            Some(int(ds.saturating_sub(dy)))
        }
        AxiomWitness::Complexity { chain } => {
            let ok = chain.windows(2).all(|p| fs.properly_nested(p[0], p[1]));
            ok.then(|| HalfInt::from_int(chain.len() as u64))
        }
        AxiomWitness::Bottleneck { .. }
        | AxiomWitness::Container { .. }
        | AxiomWitness::Orthogonality { .. }
        | AxiomWitness::HierarchyCondition { .. } => None,
    }
}

/// Runs every check on the triple, replays each witness and compares the
/// realized constants against `config.bounds`.
pub fn full_report(triple: &Triple, config: &VerifyConfig, input: &str) -> Result<FullReport> {
    let ph = triple.proto()?;
    let mut reports = axioms::check_projections(&ph);
    reports.extend(axioms::check_relative_projections(&ph));
    reports.push(axioms::check_projection_compatibility(&ph));
    reports.push(axioms::check_consistency(&ph));
    reports.push(axioms::check_bgi(&ph, config.cap_dag));
    reports.push(axioms::check_combinatorial_bgi(&ph, config.cap_dag));
    reports.push(axioms::check_large_links(&ph));
    reports.push(match axioms::check_partial_realization(&ph, config.cap_choices, config.seed) {
        Ok(r) => r,
        Err(e) => error_report("partial_realization", e),
    });
    let (uniq, uniqueness_table) = axioms::check_uniqueness(&ph);
    reports.push(uniq);
    reports.push(axioms::check_containers(&ph));
    reports.push(axioms::check_orthogonality(&ph));
    reports.push(axioms::check_complexity(&ph));
    reports.push(axioms::check_hyperbolicity(&ph));
    reports.push(axioms::check_complement_embedding(&ph));
    reports.push(axioms::check_bottleneck(&ph));
    reports.push(
        match super::check_hierarchy_condition(&ph, &triple.family, triple.qm.is_some(), config.cap_closure) {
            Ok((r, _)) => r,
            Err(e) => error_report("hierarchy_condition", e),
        },
    );

    for r in &mut reports {
        let mut violated = r.status == Status::Fail;
        if let (Some(c), Some(w)) = (r.constant, &r.witness) {
            if let Some(v) = replay(&ph, w) {
                if v != c {
                    r.notes.push(format!("witness replay gave {v}, reported {c}"));
                    violated = true;
                }
            }
        }
        r.finish(violated, config.bounds.get(r.name).copied());
    }

    let prism_distortion = match &triple.qm {
        Some(pipe) => Some(prism_graph_distortion(pipe)?),
        None => None,
    };
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.name.to_string()).collect();
    let constants_table = reports.iter().map(|r| (r.name, r.constant)).collect();
    let caps = BTreeMap::from([
        ("closure", config.cap_closure),
        ("dag", config.cap_dag),
        ("choices", config.cap_choices),
    ]);
    Ok(FullReport {
        input: input.to_string(),
        pipeline: if triple.qm.is_some() { "qm" } else { "generic" }.to_string(),
        seed: config.seed,
        caps,
        axioms: reports,
        constants_table,
        uniqueness_table,
        prism_distortion,
        verdict: Verdict { pass: failed.is_empty(), failed },
    })
}

fn error_report(name: &'static str, e: crate::error::Error) -> AxiomReport {
    let mut r = AxiomReport::new(name);
    r.notes.push(e.to_string());
    r.finish(true, None);
    r
}
