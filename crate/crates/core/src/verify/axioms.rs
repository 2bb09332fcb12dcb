//! The individual axiom checks. Each evaluates its inequality on every
//! instance of a finite proto-hierarchy and reports the worst one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{AxiomReport, AxiomWitness, Outcome, ProtoHierarchy, Tally};
use crate::error::{Error, Result};
use crate::factor::Relation;
use crate::graph::{maximal_cliques, Graph, InducedSpace, Vertex, VertexSet};
use crate::metrics::{bottleneck_delta, gromov_delta_space, nearest_point_projection, qi_distortion, HalfInt};

fn tally(outcomes: Vec<Outcome>) -> Tally {
    let mut t = Tally::new();
    for o in outcomes {
        t.add(o);
    }
    t
}

/// `π_F(w)` unless it is empty or lost vertices to a foreign component.
fn coord(ph: &ProtoHierarchy, i: usize, w: usize) -> Option<&VertexSet> {
    let s = ph.pi(i, w);
    (!s.is_empty() && !ph.pi_foreign(i, w)).then_some(s)
}

fn rho(ph: &ProtoHierarchy, f: usize, g: usize) -> Option<&VertexSet> {
    ph.rho(f, g).filter(|s| !s.is_empty() && !ph.rho_foreign(f, g))
}

fn related(ph: &ProtoHierarchy, f: usize, g: usize) -> bool {
    matches!(ph.factor_system().relation(f, g), Relation::NestedIn | Relation::Transverse)
}

fn finite_or_degenerate(v: Option<u32>, w: AxiomWitness) -> Outcome {
    match v {
        Some(v) => Outcome::Value(v, w),
        None => Outcome::Degenerate(w),
    }
}

/// Diameter of `π_F(w)` in `CF`.
pub(crate) fn projection_diameter(ph: &ProtoHierarchy, domain: usize, w: usize) -> Option<u32> {
    ph.diam(domain, coord(ph, domain, w)?)
}

/// Diameter of `π_F(w1) ∪ π_F(w2)` in `CF`.
pub(crate) fn projection_lipschitz(ph: &ProtoHierarchy, domain: usize, w1: usize, w2: usize) -> Option<u32> {
    let u = coord(ph, domain, w1)?.union(coord(ph, domain, w2)?);
    ph.diam(domain, &u)
}

/// Distance from a vertex of `CF` to the union of all coordinates in `F`.
pub(crate) fn projection_coverage(ph: &ProtoHierarchy, domain: usize, vertex: Vertex) -> Option<u32> {
    let mut all = VertexSet::new();
    for w in 0..ph.w_count() {
        all = all.union(coord(ph, domain, w)?);
    }
    ph.space(domain).cf.dist_to_set(vertex, &all)
}

/// Diameter, coarse-Lipschitz constant and coverage of the projections `π_F`.
pub fn check_projections(ph: &ProtoHierarchy) -> Vec<AxiomReport> {
    let nd = ph.domain_count();
    let nw = ph.w_count();
    let diam: Vec<Outcome> = (0..nd)
        .flat_map(|i| (0..nw).map(move |w| (i, w)))
        .map(|(domain, w)| {
            finite_or_degenerate(projection_diameter(ph, domain, w), AxiomWitness::ProjectionDiameter { domain, w })
        })
        .collect();
    let edges: Vec<(usize, usize)> = ph.x_graph().graph().edges().collect();
    let lip: Vec<Outcome> = (0..nd)
        .flat_map(|i| edges.iter().map(move |&(a, b)| (i, a, b)))
        .map(|(domain, w1, w2)| {
            finite_or_degenerate(
                projection_lipschitz(ph, domain, w1, w2),
                AxiomWitness::ProjectionLipschitz { domain, w1, w2 },
            )
        })
        .collect();
    let cover: Vec<Outcome> = (0..nd)
        .flat_map(|i| ph.space(i).cf.ids().iter().map(move |v| (i, v)).collect::<Vec<_>>())
        .map(|(domain, vertex)| {
            finite_or_degenerate(
                projection_coverage(ph, domain, vertex),
                AxiomWitness::ProjectionCoverage { domain, vertex },
            )
        })
        .collect();
    vec![
        tally(diam).into_report("projection_diameter"),
        tally(lip).into_report("projection_lipschitz"),
        tally(cover).into_report("projection_coverage"),
    ]
}

/// Coarse-Lipschitz constant of `p_F` on `Y_F`: the largest diameter of
/// `p_F(x) ∪ p_F(y)` over edges `xy`. The host projection is the identity.
pub fn closest_point_lipschitz(ph: &ProtoHierarchy, domain: usize) -> Option<u32> {
    let s = ph.space(domain);
    let Some(y) = &s.y else { return Some(1) };
    let mut best = 0;
    for (a, b) in y.graph().edges() {
        let (pa, pb) = (s.project(y.global(a))?, s.project(y.global(b))?);
        if pa.is_empty() || pb.is_empty() {
            return None;
        }
        best = best.max(s.diam(&pa.union(pb))?);
    }
    Some(best)
}

pub(crate) fn relative_projection_diameter(ph: &ProtoHierarchy, from: usize, to: usize) -> Option<u32> {
    ph.diam(to, rho(ph, from, to)?)
}

/// Diameter of `PF ∩ Y_{F'}` in `Y_{F'}` (in `CX` when `F'` is the host).
pub(crate) fn projection_part_diameter(ph: &ProtoHierarchy, from: usize, to: usize) -> Option<u32> {
    let pf = &ph.space(from).pf;
    let target = ph.space(to);
    let space = target.y.as_ref().unwrap_or(&target.cf);
    let meet: VertexSet = pf.iter().filter(|&v| space.contains(v)).collect();
    if meet.is_empty() {
        return None;
    }
    space.set_diameter(&meet)
}

/// Diameters of the relative projections `ρ^F_{F'}` and of the projection
/// parts they are images of.
pub fn check_relative_projections(ph: &ProtoHierarchy) -> Vec<AxiomReport> {
    let pairs = ph.rho_pairs();
    let rho: Vec<Outcome> = pairs
        .iter()
        .map(|&(from, to)| {
            finite_or_degenerate(relative_projection_diameter(ph, from, to), AxiomWitness::RelativeProjection { from, to })
        })
        .collect();
    let parts: Vec<Outcome> = pairs
        .iter()
        .map(|&(from, to)| {
            finite_or_degenerate(projection_part_diameter(ph, from, to), AxiomWitness::ProjectionPart { from, to })
        })
        .collect();
    vec![tally(rho).into_report("relative_projection_diameter"), tally(parts).into_report("projection_part_diameter")]
}

/// For `F ⊊ F'` and `x ∈ Y_F ∩ CF'`: diameter in `CF` of `p_F(x)` together
/// with the projection computed inside `Y_F ∩ CF'`.
pub(crate) fn projection_compatibility(ph: &ProtoHierarchy, lower: usize, upper: usize, vertex: Vertex) -> Option<u32> {
    let s = ph.space(lower);
    let y = s.y.as_ref()?;
    let inner_ids: VertexSet = y.ids().intersection(ph.space(upper).cf.ids());
    let inner = InducedSpace::new(ph.augmented().graph(), inner_ids);
    let q = nearest_point_projection(&inner, s.cf.ids(), vertex).ok()?.set;
    let p = s.project(vertex)?;
    if p.is_empty() || q.is_empty() {
        return None;
    }
    s.diam(&p.union(&q))
}

pub fn check_projection_compatibility(ph: &ProtoHierarchy) -> AxiomReport {
    let fs = ph.factor_system();
    let mut outcomes = Vec::new();
    for lower in 1..fs.len() {
        for upper in 0..fs.len() {
            if !fs.properly_nested(lower, upper) {
                continue;
            }
            let s = ph.space(lower);
            let y = s.y.as_ref().expect("non-host domain");
            let inner_ids = y.ids().intersection(ph.space(upper).cf.ids());
            let inner = InducedSpace::new(ph.augmented().graph(), inner_ids.clone());
            for vertex in inner_ids.iter() {
                let w = AxiomWitness::ProjectionCompatibility { lower, upper, vertex };
                let q = nearest_point_projection(&inner, s.cf.ids(), vertex).map(|p| p.set).unwrap_or_default();
                let p = s.project(vertex).cloned().unwrap_or_default();
                let v = if p.is_empty() || q.is_empty() { None } else { s.diam(&p.union(&q)) };
                outcomes.push(finite_or_degenerate(v, w));
            }
        }
    }
    tally(outcomes).into_report("projection_compatibility")
}

fn min_opt(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// `min{d_v(π_v(w), ρ^u_v), d_u(π_u(w), ρ^v_u)}` for transverse `u, v`.
pub(crate) fn transverse_value(ph: &ProtoHierarchy, u: usize, v: usize, w: usize) -> Option<u32> {
    let a = ph.dist(v, coord(ph, v, w)?, rho(ph, u, v)?);
    let b = ph.dist(u, coord(ph, u, w)?, rho(ph, v, u)?);
    min_opt(a, b)
}

/// `min{d_U(π_U(w), ρ^L_U), diam_L(π_L(w) ∪ ρ^U_L(π_U(w)))}` for `L ⊊ U`.
pub(crate) fn nested_value(ph: &ProtoHierarchy, lower: usize, upper: usize, w: usize) -> Option<u32> {
    let pu = coord(ph, upper, w)?;
    let a = ph.dist(upper, pu, rho(ph, lower, upper)?);
    let down = ph.rho_down(lower, pu);
    let b = ph.diam(lower, &coord(ph, lower, w)?.union(&down));
    min_opt(a, b)
}

/// `d_T(ρ^L_T, ρ^U_T)` for `L ⊑ U` and `U ⊊ T` or `U ⋔ T`, `T` not orthogonal to `L`.
pub(crate) fn triple_value(ph: &ProtoHierarchy, lower: usize, upper: usize, target: usize) -> Option<u32> {
    ph.dist(target, rho(ph, lower, target)?, rho(ph, upper, target)?)
}

/// Consistency: the transverse clause, the nested clause and the clause on
/// relative projections of nested pairs.
pub fn check_consistency(ph: &ProtoHierarchy) -> AxiomReport {
    let fs = ph.factor_system();
    let nd = fs.len();
    let nw = ph.w_count();
    let mut tasks: Vec<AxiomWitness> = Vec::new();
    for u in 0..nd {
        for v in 0..nd {
            match fs.relation(u, v) {
                Relation::Transverse if u < v => {
                    tasks.extend((0..nw).map(|w| AxiomWitness::Transverse { u, v, w }));
                }
                Relation::NestedIn => {
                    tasks.extend((0..nw).map(|w| AxiomWitness::Nested { lower: u, upper: v, w }));
                }
                _ => {}
            }
        }
    }
    for lower in 1..nd {
        for upper in 1..nd {
            if !fs.properly_nested(lower, upper) {
                continue;
            }
            for target in 0..nd {
                let rel = fs.relation(upper, target);
                if matches!(rel, Relation::NestedIn | Relation::Transverse) && !fs.orthogonal(target, lower) {
                    tasks.push(AxiomWitness::Triple { lower, upper, target });
                }
            }
        }
    }
    let outcomes: Vec<Outcome> = tasks
        .into_par_iter()
        .map(|w| {
            let v = match w {
                AxiomWitness::Transverse { u, v, w } => transverse_value(ph, u, v, w),
                AxiomWitness::Nested { lower, upper, w } => nested_value(ph, lower, upper, w),
                AxiomWitness::Triple { lower, upper, target } => triple_value(ph, lower, upper, target),
                _ => unreachable!("consistency tasks"),
            };
            finite_or_degenerate(v, w)
        })
        .collect();
    tally(outcomes).into_report("consistency")
}

pub(crate) enum Widest {
    Found(u32, Vec<Vertex>),
    Disconnected,
    TooLarge,
}

/// Over all geodesics from `a` to `b` in `space`, the largest minimum of
/// `weight` along the geodesic, with a geodesic achieving it. Works on the
/// geodesic-interval DAG, so no geodesic is enumerated. Ids are parent ids.
pub(crate) fn widest_geodesic(
    space: &InducedSpace,
    a: Vertex,
    b: Vertex,
    weight: &dyn Fn(Vertex) -> u32,
    cap: usize,
) -> Widest {
    let (Some(la), Some(lb)) = (space.local(a), space.local(b)) else { return Widest::Disconnected };
    let d = space.local_distances();
    let Some(total) = d.get(la, lb) else { return Widest::Disconnected };
    let mut layers: Vec<Vec<Vertex>> = vec![Vec::new(); total as usize + 1];
    let mut size = 0;
    for v in 0..d.n() {
        if d.between(la, v, lb) {
            layers[d.at(la, v) as usize].push(v);
            size += 1;
        }
    }
    if size > cap {
        return Widest::TooLarge;
    }
    let g = space.graph();
    let mut best = vec![0u32; d.n()];
    let mut pred = vec![usize::MAX; d.n()];
    best[la] = weight(a);
    for k in 1..layers.len() {
        for &v in &layers[k] {
            let mut top: Option<(u32, Vertex)> = None;
            for &u in &layers[k - 1] {
                if g.adjacent(u, v) && top.is_none_or(|(t, _)| best[u] > t) {
                    top = Some((best[u], u));
                }
            }
            let (t, u) = top.expect("interval layers are linked");
            best[v] = t.min(weight(space.global(v)));
            pred[v] = u;
        }
    }
    let mut path = vec![lb];
    while *path.last().unwrap() != la {
        path.push(pred[*path.last().unwrap()]);
    }
    path.reverse();
    Widest::Found(best[lb], path.into_iter().map(|v| space.global(v)).collect())
}

/// Checks that `geodesic` is a geodesic of `space` and returns the minimum of `weight` along it.
pub(crate) fn geodesic_minimum(space: &InducedSpace, geodesic: &[Vertex], weight: &dyn Fn(Vertex) -> u32) -> Option<u32> {
    let (&a, &b) = (geodesic.first()?, geodesic.last()?);
    if space.dist(a, b)? as usize + 1 != geodesic.len() {
        return None;
    }
    for p in geodesic.windows(2) {
        if space.dist(p[0], p[1])? != 1 {
            return None;
        }
    }
    geodesic.iter().map(|&v| weight(v)).min()
}

/// One bounded-geodesic-image instance: the smallest `E` for which
/// `d_L(π_L(w1), π_L(w2)) ≥ E` forces every geodesic of `CU` between the
/// `U`-coordinates to meet the `E`-neighbourhood of `ρ^L_U`.
fn bgi_instance(ph: &ProtoHierarchy, lower: usize, upper: usize, w1: usize, w2: usize, cap: usize) -> Outcome {
    let degenerate = || Outcome::Degenerate(AxiomWitness::Bgi { lower, upper, w1, w2, geodesic: Vec::new() });
    let (Some(p1), Some(p2), Some(r)) = (coord(ph, upper, w1), coord(ph, upper, w2), rho(ph, lower, upper)) else {
        return degenerate();
    };
    let (Some(l1), Some(l2)) = (coord(ph, lower, w1), coord(ph, lower, w2)) else { return degenerate() };
    let dl = ph.dist(lower, l1, l2);
    let cu = &ph.space(upper).cf;
    let weights: Vec<Option<u32>> = (0..ph.augmented().graph().n())
        .map(|v| if cu.contains(v) { cu.dist_to_set(v, r) } else { None })
        .collect();
    if cu.ids().iter().any(|v| weights[v].is_none()) {
        return degenerate();
    }
    let weight = |v: Vertex| weights[v].unwrap_or(0);
    let mut worst: Option<(u32, Vec<Vertex>)> = None;
    for a in p1.iter() {
        for b in p2.iter() {
            match widest_geodesic(cu, a, b, &weight, cap) {
                Widest::Found(v, path) => {
                    if worst.as_ref().is_none_or(|(t, _)| v > *t) {
                        worst = Some((v, path));
                    }
                }
                Widest::Disconnected => return degenerate(),
                Widest::TooLarge => return Outcome::Skipped,
            }
        }
    }
    let (reach, geodesic) = worst.expect("coordinates are nonempty");
    let value = match dl {
        Some(d) => reach.min(d + 1),
        None => reach,
    };
    Outcome::Value(value, AxiomWitness::Bgi { lower, upper, w1, w2, geodesic })
}

/// Replays a bounded-geodesic-image witness: `min(d_L + 1, m)` where `m` is
/// the distance of the witness geodesic from `ρ^L_U`.
pub(crate) fn bgi_replay(ph: &ProtoHierarchy, lower: usize, upper: usize, w1: usize, w2: usize, geodesic: &[Vertex]) -> Option<u32> {
    let r = rho(ph, lower, upper)?;
    let cu = &ph.space(upper).cf;
    let (a, b) = (*geodesic.first()?, *geodesic.last()?);
    if !coord(ph, upper, w1)?.contains(a) || !coord(ph, upper, w2)?.contains(b) {
        return None;
    }
    let m = geodesic_minimum(cu, geodesic, &|v| cu.dist_to_set(v, r).unwrap_or(u32::MAX))?;
    let dl = ph.dist(lower, coord(ph, lower, w1)?, coord(ph, lower, w2)?);
    Some(dl.map_or(m, |d| m.min(d + 1)))
}

/// Bounded geodesic image for every nested pair and every pair of points of `W`.
pub fn check_bgi(ph: &ProtoHierarchy, cap: usize) -> AxiomReport {
    let fs = ph.factor_system();
    let nw = ph.w_count();
    let mut tasks = Vec::new();
    for lower in 1..fs.len() {
        for upper in 0..fs.len() {
            if fs.properly_nested(lower, upper) {
                for w1 in 0..nw {
                    for w2 in w1..nw {
                        tasks.push((lower, upper, w1, w2));
                    }
                }
            }
        }
    }
    let outcomes: Vec<Outcome> =
        tasks.into_par_iter().map(|(l, u, a, b)| bgi_instance(ph, l, u, a, b, cap)).collect();
    let mut r = tally(outcomes).into_report("bgi");
    if r.skipped > 0 {
        r.notes.push(format!("{} instances skipped: geodesic interval larger than {cap}", r.skipped));
    }
    r
}

/// `d_CF(p_F(x), p_F(y)) + 1` if some geodesic of `CX` from `x` to `y` avoids `PF`, else `0`.
fn combinatorial_instance(ph: &ProtoHierarchy, domain: usize, x: Vertex, y: Vertex, cap: usize) -> Outcome {
    let s = ph.space(domain);
    let cx = &ph.space(0).cf;
    let weight = |v: Vertex| u32::from(!s.pf.contains(v));
    match widest_geodesic(cx, x, y, &weight, cap) {
        Widest::Found(0, _) => Outcome::Value(0, AxiomWitness::CombinatorialBgi { domain, x, y, geodesic: Vec::new() }),
        Widest::Found(_, geodesic) => {
            let w = AxiomWitness::CombinatorialBgi { domain, x, y, geodesic };
            let (Some(px), Some(py)) = (s.project(x), s.project(y)) else { return Outcome::Degenerate(w) };
            match s.dist(px, py) {
                Some(d) => Outcome::Value(d + 1, w),
                None => Outcome::Degenerate(w),
            }
        }
        Widest::Disconnected => {
            Outcome::Degenerate(AxiomWitness::CombinatorialBgi { domain, x, y, geodesic: Vec::new() })
        }
        Widest::TooLarge => Outcome::Skipped,
    }
}

pub(crate) fn combinatorial_replay(ph: &ProtoHierarchy, domain: usize, x: Vertex, y: Vertex, geodesic: &[Vertex]) -> Option<u32> {
    let s = ph.space(domain);
    if geodesic.is_empty() {
        return Some(0);
    }
    if geodesic.first() != Some(&x) || geodesic.last() != Some(&y) {
        return None;
    }
    let cx = &ph.space(0).cf;
    let avoid = geodesic_minimum(cx, geodesic, &|v| u32::from(!s.pf.contains(v)))?;
    if avoid == 0 {
        return None;
    }
    Some(s.dist(s.project(x)?, s.project(y)?)? + 1)
}

/// The combinatorial bounded geodesic image: the smallest `C` such that
/// `d_CF(p_F(x), p_F(y)) ≥ C` forces every `CX`-geodesic from `x` to `y` to meet `PF`.
pub fn check_combinatorial_bgi(ph: &ProtoHierarchy, cap: usize) -> AxiomReport {
    let mut tasks = Vec::new();
    for domain in 1..ph.domain_count() {
        let y = ph.space(domain).y.as_ref().expect("non-host domain");
        let ids = y.ids().as_slice();
        for (i, &x) in ids.iter().enumerate() {
            for &z in &ids[i..] {
                tasks.push((domain, x, z));
            }
        }
    }
    let outcomes: Vec<Outcome> =
        tasks.into_par_iter().map(|(d, x, y)| combinatorial_instance(ph, d, x, y, cap)).collect();
    let mut r = tally(outcomes).into_report("combinatorial_bgi");
    if r.skipped > 0 {
        r.notes.push(format!("{} pairs skipped: geodesic interval larger than {cap}", r.skipped));
    }
    r
}

/// A geodesic of `CU` between the closest pair of the two coordinates,
/// choosing the smallest vertex at every step.
fn closest_geodesic(space: &InducedSpace, a: &VertexSet, b: &VertexSet) -> Option<Vec<Vertex>> {
    let d = space.set_distance(a, b)?;
    let (s, t) = a.iter().flat_map(|x| b.iter().map(move |y| (x, y))).find(|&(x, y)| space.dist(x, y) == Some(d))?;
    let (ls, lt) = (space.local(s)?, space.local(t)?);
    let dm = space.local_distances();
    let mut path = vec![ls];
    let mut cur = ls;
    while cur != lt {
        cur = *space.graph().neighbors(cur).iter().find(|&&n| dm.get(n, lt) == Some(dm.at(cur, lt) - 1))?;
        path.push(cur);
    }
    Some(path.into_iter().map(|v| space.global(v)).collect())
}

/// Domains attached to the vertices of a geodesic: `lk(v) ∩ U` for base
/// vertices and `H` for projection vertices `b_H`, restricted to proper subdomains of `U`.
fn geodesic_family(ph: &ProtoHierarchy, domain: usize, geodesic: &[Vertex]) -> Vec<usize> {
    let fs = ph.factor_system();
    let cx = ph.augmented();
    let mut out = Vec::new();
    for &v in geodesic {
        let cand = match cx.domain_of(v) {
            Some(h) => Some(h),
            None => {
                let lk = fs.host().common_neighbours(&VertexSet::singleton(v)).intersection(fs.domain(domain));
                (!lk.is_empty()).then(|| fs.index_of(&lk)).flatten()
            }
        };
        if let Some(h) = cand {
            if fs.properly_nested(h, domain) && !out.contains(&h) {
                out.push(h);
            }
        }
    }
    out
}

/// Smallest subfamily of `cands` covering `bad` under nesting.
fn min_cover(ph: &ProtoHierarchy, bad: &[usize], cands: &[usize]) -> Option<Vec<usize>> {
    let fs = ph.factor_system();
    let relevant: Vec<usize> = cands.iter().copied().filter(|&c| bad.iter().any(|&t| fs.nested(t, c))).collect();
    if bad.iter().any(|&t| !relevant.iter().any(|&c| fs.nested(t, c))) {
        return None;
    }
    let covers = |family: &[usize]| bad.iter().all(|&t| family.iter().any(|&c| fs.nested(t, c)));
    if relevant.len() <= 16 {
        let mut masks: Vec<u32> = (0..1u32 << relevant.len()).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        for m in masks {
            let family: Vec<usize> = (0..relevant.len()).filter(|&i| m & (1 << i) != 0).map(|i| relevant[i]).collect();
            if covers(&family) {
                return Some(family);
            }
        }
        return None;
    }
    let mut family = Vec::new();
    let mut left: Vec<usize> = bad.to_vec();
    while !left.is_empty() {
        let &c = relevant.iter().max_by_key(|&&c| (left.iter().filter(|&&t| fs.nested(t, c)).count(), std::cmp::Reverse(c)))?;
        left.retain(|&t| !fs.nested(t, c));
        family.push(c);
    }
    Some(family)
}

/// Smallest `E` for which the geodesic family covers every proper subdomain
/// `T` with `d_T > E` using at most `⌊E d_U + E⌋` members.
pub(crate) fn large_links_instance(ph: &ProtoHierarchy, domain: usize, w1: usize, w2: usize) -> Outcome {
    let fs = ph.factor_system();
    let witness = |family: Vec<usize>| AxiomWitness::LargeLinks { domain, w1, w2, family };
    let (Some(a), Some(b)) = (coord(ph, domain, w1), coord(ph, domain, w2)) else {
        return Outcome::Degenerate(witness(Vec::new()));
    };
    let Some(du) = ph.dist(domain, a, b) else { return Outcome::Degenerate(witness(Vec::new())) };
    let mut sub = Vec::new();
    for t in 0..fs.len() {
        if fs.properly_nested(t, domain) {
            let d = match (coord(ph, t, w1), coord(ph, t, w2)) {
                (Some(x), Some(y)) => ph.dist(t, x, y),
                _ => None,
            };
            let Some(d) = d else { return Outcome::Degenerate(witness(Vec::new())) };
            sub.push((t, d));
        }
    }
    let top = sub.iter().map(|&(_, d)| d).max().unwrap_or(0);
    let geodesic = closest_geodesic(&ph.space(domain).cf, a, b).unwrap_or_default();
    let cands = geodesic_family(ph, domain, &geodesic);
    for e in 0..=top {
        let bad: Vec<usize> = sub.iter().filter(|&&(_, d)| d > e).map(|&(t, _)| t).collect();
        if let Some(family) = min_cover(ph, &bad, &cands) {
            if family.len() as u64 <= u64::from(e) * (u64::from(du) + 1) {
                return Outcome::Value(e, witness(family));
            }
        }
    }
    unreachable!("at E = max d_T nothing needs covering")
}

/// Checks a large-links witness at `e`: the family consists of proper
/// subdomains, has at most `⌊e d_U + e⌋` members and covers every proper
/// subdomain `T` with `d_T > e`.
pub(crate) fn large_links_holds(ph: &ProtoHierarchy, domain: usize, w1: usize, w2: usize, family: &[usize], e: u32) -> Option<bool> {
    let fs = ph.factor_system();
    let du = ph.dist(domain, coord(ph, domain, w1)?, coord(ph, domain, w2)?)?;
    if family.len() as u64 > u64::from(e) * (u64::from(du) + 1) || family.iter().any(|&t| !fs.properly_nested(t, domain)) {
        return Some(false);
    }
    for t in 0..fs.len() {
        if fs.properly_nested(t, domain) {
            let dt = ph.dist(t, coord(ph, t, w1)?, coord(ph, t, w2)?)?;
            if dt > e && !family.iter().any(|&c| fs.nested(t, c)) {
                return Some(false);
            }
        }
    }
    Some(true)
}

pub fn check_large_links(ph: &ProtoHierarchy) -> AxiomReport {
    let nw = ph.w_count();
    let mut tasks = Vec::new();
    for domain in 0..ph.domain_count() {
        for w1 in 0..nw {
            for w2 in w1..nw {
                tasks.push((domain, w1, w2));
            }
        }
    }
    let outcomes: Vec<Outcome> = tasks.into_par_iter().map(|(d, a, b)| large_links_instance(ph, d, a, b)).collect();
    tally(outcomes).into_report("large_links")
}

/// Largest partial-realization defect of `w` for orthogonal `family` and points `points`.
pub(crate) fn realization_defect(ph: &ProtoHierarchy, family: &[usize], points: &[Vertex], w: usize) -> Option<u32> {
    let fs = ph.factor_system();
    let mut worst = 0;
    for (&f, &p) in family.iter().zip(points) {
        worst = worst.max(ph.dist(f, coord(ph, f, w)?, &VertexSet::singleton(p))?);
        for v in 0..fs.len() {
            if related(ph, f, v) {
                worst = worst.max(ph.dist(v, coord(ph, v, w)?, rho(ph, f, v)?)?);
            }
        }
    }
    Some(worst)
}

/// Partial realization over every maximal family of pairwise orthogonal
/// domains and every choice of points `p_j ∈ F_j` in the image of `π_{F_j}`.
/// The realizing point ranges over all maximal cliques containing the points.
pub fn check_partial_realization(ph: &ProtoHierarchy, cap: usize, seed: u64) -> Result<AxiomReport> {
    let fs = ph.factor_system();
    let nd = fs.len();
    let mut pairs = Vec::new();
    for i in 0..nd {
        for j in i + 1..nd {
            if fs.orthogonal(i, j) {
                pairs.push((i, j));
            }
        }
    }
    let ortho = Graph::from_edges(nd, pairs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outcomes = Vec::new();
    let mut notes = Vec::new();
    for fam in maximal_cliques(&ortho) {
        let family: Vec<usize> = fam.iter().collect();
        let choices: Vec<Vec<Vertex>> = family
            .iter()
            .map(|&f| {
                let mut img = VertexSet::new();
                for w in 0..ph.w_count() {
                    img = img.union(ph.pi(f, w));
                }
                img.intersection(fs.domain(f)).into_vec()
            })
            .collect();
        if choices.iter().any(Vec::is_empty) {
            outcomes.push(Outcome::Degenerate(AxiomWitness::PartialRealization {
                family: family.clone(),
                points: Vec::new(),
                w: 0,
            }));
            continue;
        }
        let total = choices.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
        let tuples: Vec<Vec<Vertex>> = match total {
            Some(t) if t <= cap => (0..t)
                .map(|mut k| {
                    choices
                        .iter()
                        .map(|c| {
                            let p = c[k % c.len()];
                            k /= c.len();
                            p
                        })
                        .collect()
                })
                .collect(),
            _ => {
                notes.push(format!(
                    "family {family:?}: sampled {cap} of {} point choices (seed {seed})",
                    total.map_or_else(|| "overflowing".to_string(), |t| t.to_string())
                ));
                (0..cap).map(|_| choices.iter().map(|c| c[rng.random_range(0..c.len())]).collect()).collect()
            }
        };
        for points in tuples {
            let set: VertexSet = points.iter().copied().collect();
            let hosts: Vec<usize> =
                (0..ph.w_count()).filter(|&w| set.is_subset(ph.x_graph().clique(w))).collect();
            if hosts.is_empty() {
                return Err(Error::internal(format!(
                    "points {points:?} of orthogonal domains {family:?} lie in no maximal clique"
                )));
            }
            let best = hosts
                .iter()
                .filter_map(|&w| realization_defect(ph, &family, &points, w).map(|v| (v, w)))
                .min();
            outcomes.push(match best {
                Some((v, w)) => Outcome::Value(v, AxiomWitness::PartialRealization { family: family.clone(), points, w }),
                None => Outcome::Degenerate(AxiomWitness::PartialRealization { family: family.clone(), points, w: hosts[0] }),
            });
        }
    }
    let mut r = tally(outcomes).into_report("partial_realization");
    r.notes = notes;
    Ok(r)
}

/// `θ_u(κ)` for `κ = 0, 1, …`: the largest `W`-distance between points
/// whose coordinates are all within `κ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessTable {
    /// `(κ, θ_u(κ))`, nondecreasing in both entries.
    pub rows: Vec<(u32, u32)>,
    /// Pairs of `W` in different components, left out of the table.
    pub disconnected_pairs: u64,
}

/// Largest coordinate distance between two points of `W`.
pub(crate) fn max_projection_distance(ph: &ProtoHierarchy, w1: usize, w2: usize) -> Option<u32> {
    let mut best = 0;
    for i in 0..ph.domain_count() {
        best = best.max(ph.dist(i, coord(ph, i, w1)?, coord(ph, i, w2)?)?);
    }
    Some(best)
}

/// Uniqueness: tabulates `θ_u` and reports the smallest `c` with `θ_u(κ) ≤ κ + c`.
pub fn check_uniqueness(ph: &ProtoHierarchy) -> (AxiomReport, UniquenessTable) {
    let nw = ph.w_count();
    let dw = ph.w_distances();
    let pairs: Vec<(usize, usize)> = (0..nw).flat_map(|a| (a..nw).map(move |b| (a, b))).collect();
    let rows: Vec<(usize, usize, Option<u32>, Option<u32>)> = pairs
        .into_par_iter()
        .map(|(a, b)| (a, b, max_projection_distance(ph, a, b), dw.get(a, b)))
        .collect();
    let mut t = Tally::new();
    let mut disconnected = 0;
    let mut seen: Vec<(u32, u32)> = Vec::new();
    for (w1, w2, proj, dist) in rows {
        match (proj, dist) {
            (Some(projection), Some(distance)) => {
                seen.push((projection, distance));
                let w = AxiomWitness::Uniqueness { w1, w2, projection, distance };
                t.add(Outcome::Value(distance.saturating_sub(projection), w));
            }
            (None, _) => t.add(Outcome::Degenerate(AxiomWitness::Uniqueness { w1, w2, projection: 0, distance: 0 })),
            (_, None) => disconnected += 1,
        }
    }
    let top = seen.iter().map(|&(p, _)| p).max().unwrap_or(0);
    let table = (0..=top)
        .map(|k| (k, seen.iter().filter(|&&(p, _)| p <= k).map(|&(_, d)| d).max().unwrap_or(0)))
        .collect();
    let mut r = t.into_report("uniqueness");
    if disconnected > 0 {
        r.notes.push(format!("{disconnected} pairs of W lie in different components"));
    }
    (r, UniquenessTable { rows: table, disconnected_pairs: disconnected })
}

/// Containers: for `U ⊊ T` with an orthogonal partner inside `T`, the domain
/// `lk(U) ∩ T` exists, is proper in `T` and contains every such partner.
pub fn check_containers(ph: &ProtoHierarchy) -> AxiomReport {
    let fs = ph.factor_system();
    let mut r = AxiomReport::new("containers");
    let mut violated = false;
    'outer: for top in 0..fs.len() {
        for inner in 0..fs.len() {
            if !fs.properly_nested(inner, top) {
                continue;
            }
            let partners: Vec<usize> =
                (0..fs.len()).filter(|&v| fs.nested(v, top) && fs.orthogonal(v, inner)).collect();
            if partners.is_empty() {
                continue;
            }
            r.checked += 1;
            let candidate = fs.link(inner).intersection(fs.domain(top));
            let missing = match fs.index_of(&candidate) {
                Some(c) if c != top => partners.iter().copied().find(|&v| !fs.nested(v, c)),
                _ => Some(usize::MAX),
            };
            if let Some(m) = missing {
                let missing = (m != usize::MAX).then_some(m);
                r.witness = Some(AxiomWitness::Container { top, inner, candidate, missing });
                violated = true;
                break 'outer;
            }
        }
    }
    r.finish(violated, None);
    r
}

/// `⊥` is symmetric, irreflexive, excludes nesting and is inherited by subdomains.
pub fn check_orthogonality(ph: &ProtoHierarchy) -> AxiomReport {
    let fs = ph.factor_system();
    let n = fs.len();
    let mut r = AxiomReport::new("orthogonality");
    let mut bad = None;
    for u in 0..n {
        if fs.orthogonal(u, u) {
            bad = Some(AxiomWitness::Orthogonality { u, v: u, w: None });
            break;
        }
        for v in 0..n {
            r.checked += 1;
            let o = fs.orthogonal(u, v);
            if o != fs.orthogonal(v, u) || (o && (fs.nested(u, v) || fs.nested(v, u))) {
                bad = Some(AxiomWitness::Orthogonality { u, v, w: None });
                break;
            }
            if !o {
                continue;
            }
            if let Some(w) = (0..n).find(|&w| fs.nested(w, u) && !fs.orthogonal(w, v)) {
                bad = Some(AxiomWitness::Orthogonality { u: w, v, w: Some(u) });
                break;
            }
        }
        if bad.is_some() {
            break;
        }
    }
    r.witness = bad.clone();
    r.finish(bad.is_some(), None);
    r
}

/// Longest strictly increasing chain of domains.
pub fn check_complexity(ph: &ProtoHierarchy) -> AxiomReport {
    let fs = ph.factor_system();
    let n = fs.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(fs.domain(i).len()));
    // best[i]: longest chain starting at domain i and going up
    let mut best: Vec<(usize, Option<usize>)> = vec![(1, None); n];
    for &i in &order {
        for j in 0..n {
            if fs.properly_nested(i, j) && best[j].0 + 1 > best[i].0 {
                best[i] = (best[j].0 + 1, Some(j));
            }
        }
    }
    let start = (0..n).max_by_key(|&i| (best[i].0, std::cmp::Reverse(i)));
    let mut chain = Vec::new();
    let mut cur = start;
    while let Some(c) = cur {
        chain.push(c);
        cur = best[c].1;
    }
    let mut r = AxiomReport::new("complexity");
    r.checked = n as u64;
    r.constant = Some(HalfInt::from_int(chain.len() as u64));
    let violated = chain.len() != fs.complexity();
    if violated {
        r.notes.push(format!("stored complexity {} differs from the longest chain", fs.complexity()));
    }
    r.witness = Some(AxiomWitness::Complexity { chain });
    r.finish(violated, None);
    r
}

/// Four-point δ of every `CF`.
pub fn check_hyperbolicity(ph: &ProtoHierarchy) -> AxiomReport {
    let results: Vec<_> = (0..ph.domain_count())
        .into_par_iter()
        .map(|i| (i, gromov_delta_space(&ph.space(i).cf)))
        .collect();
    let mut r = AxiomReport::new("hyperbolicity");
    let mut best: Option<(HalfInt, AxiomWitness)> = None;
    for (domain, res) in results {
        match res {
            Ok(h) => {
                r.checked += 1;
                let quadruple = h.witness.unwrap_or([0; 4]);
                if best.as_ref().is_none_or(|(b, _)| h.delta > *b) {
                    best = Some((h.delta, AxiomWitness::Hyperbolicity { domain, quadruple }));
                }
            }
            Err(_) => {
                r.degenerate += 1;
                r.notes.push(format!("augmented graph of domain {domain} is disconnected"));
            }
        }
    }
    match best {
        Some((d, w)) => {
            r.constant = Some(d);
            r.witness = Some(w);
        }
        None if r.degenerate == 0 => r.constant = Some(HalfInt::ZERO),
        None => {}
    }
    r.finish(false, None);
    r
}

/// Additive distortion of `CF ↪ Y_F` for every non-host domain.
pub fn check_complement_embedding(ph: &ProtoHierarchy) -> AxiomReport {
    let mut outcomes = Vec::new();
    let mut notes = Vec::new();
    for domain in 1..ph.domain_count() {
        let s = ph.space(domain);
        let y = s.y.as_ref().expect("non-host domain");
        match qi_distortion(&s.cf, y) {
            Ok(e) => {
                let pair = e.witness_additive.unwrap_or((0, 0));
                if let Some(m) = e.multiplicative {
                    notes.push(format!("domain {domain}: multiplicative distortion {}", m.as_f64()));
                }
                let w = AxiomWitness::Embedding { domain, pair };
                outcomes.push(match e.additive {
                    Some(a) => Outcome::Value(a as u32, w),
                    None => Outcome::Degenerate(w),
                });
            }
            Err(e) => return internal_report("complement_embedding", e),
        }
    }
    let mut r = tally(outcomes).into_report("complement_embedding");
    r.notes = notes;
    r
}

fn internal_report(name: &'static str, e: Error) -> AxiomReport {
    let mut r = AxiomReport::new(name);
    r.notes.push(e.to_string());
    r.finish(true, None);
    r
}

/// Bottleneck constant of the augmented graph `CX`.
pub fn check_bottleneck(ph: &ProtoHierarchy) -> AxiomReport {
    let mut r = AxiomReport::new("bottleneck");
    match bottleneck_delta(ph.augmented().graph()) {
        Ok(b) => {
            r.checked = 1;
            r.constant = Some(HalfInt::from_int(u64::from(b.delta)));
            r.witness = b.witness.map(|(x, y, midpoint)| AxiomWitness::Bottleneck { x, y, midpoint });
        }
        Err(_) => {
            r.degenerate = 1;
            r.notes.push("augmented graph is disconnected".into());
        }
    }
    r.finish(false, None);
    r
}
