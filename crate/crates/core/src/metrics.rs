//! Exact coarse-geometry measurements on finite graphs: four-point δ,
//! embedding distortion, nearest-point projections, the bottleneck constant
//! and hierarchy paths in factored contact graphs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factor::{Augmented, QmPipeline};
use crate::graph::{DistanceMatrix, Graph, InducedSpace, Vertex, VertexSet};

/// A nonnegative multiple of one half, stored doubled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(u64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_int(v: u64) -> Self {
        HalfInt(2 * v)
    }

    pub fn from_doubled(twice: u64) -> Self {
        HalfInt(twice)
    }

    pub fn doubled(self) -> u64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 % 2 == 0 {
            s.serialize_u64(self.0 / 2)
        } else {
            s.serialize_f64(self.as_f64())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperbolicityReport {
    pub delta: HalfInt,
    /// A quadruple realizing `delta` (absent for graphs with fewer than 4 vertices).
    pub witness: Option<[Vertex; 4]>,
}

/// Four-point defect `2δ` of a quadruple: the gap between the two largest pair sums.
pub fn four_point_defect(d: &DistanceMatrix, q: [Vertex; 4]) -> u64 {
    let [w, x, y, z] = q;
    let mut s = [
        d.at(w, x) + d.at(y, z),
        d.at(w, y) + d.at(x, z),
        d.at(w, z) + d.at(x, y),
    ];
    s.sort_unstable();
    u64::from(s[2] - s[1])
}

fn delta_of(d: &DistanceMatrix) -> Result<HyperbolicityReport> {
    if !d.is_connected() {
        return Err(Error::pre("Gromov δ of a disconnected graph"));
    }
    let n = d.n();
    let best = (0..n)
        .into_par_iter()
        .filter_map(|w| {
            let mut best: Option<(u64, Reverse<[Vertex; 4]>)> = None;
            for x in w + 1..n {
                for y in x + 1..n {
                    for z in y + 1..n {
                        let q = [w, x, y, z];
                        let v = four_point_defect(d, q);
                        if best.is_none_or(|(b, _)| v > b) {
                            best = Some((v, Reverse(q)));
                        }
                    }
                }
            }
            best
        })
        .max();
    Ok(match best {
        Some((v, Reverse(q))) => HyperbolicityReport { delta: HalfInt::from_doubled(v), witness: Some(q) },
        None => HyperbolicityReport { delta: HalfInt::ZERO, witness: None },
    })
}

/// Smallest δ satisfying the four-point condition over all quadruples.
pub fn gromov_delta(g: &Graph) -> Result<HyperbolicityReport> {
    delta_of(&g.distances())
}

/// Four-point δ of an induced space; the witness is given in parent ids.
pub fn gromov_delta_space(s: &InducedSpace) -> Result<HyperbolicityReport> {
    let mut r = delta_of(s.local_distances())?;
    r.witness = r.witness.map(|q| q.map(|v| s.global(v)));
    Ok(r)
}

/// Exact positive rational, compared by cross-multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0);
        let g = gcd(num, den);
        Ratio { num: num / g, den: den / g }
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (u128::from(self.num) * u128::from(other.den)).cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.den == 1 {
            s.serialize_u64(self.num)
        } else {
            s.serialize_str(&format!("{}/{}", self.num, self.den))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    /// `max d_sub / d_ambient`; `None` means infinite.
    pub multiplicative: Option<Ratio>,
    /// `max d_sub − d_ambient`; `None` means infinite.
    pub additive: Option<u64>,
    pub witness_multiplicative: Option<(Vertex, Vertex)>,
    pub witness_additive: Option<(Vertex, Vertex)>,
}

impl EmbeddingReport {
    pub fn is_finite(&self) -> bool {
        self.multiplicative.is_some() && self.additive.is_some()
    }
}

/// Distortion of the inclusion `sub ↪ ambient` over all pairs of `sub`.
///
/// Pairs joined in the ambient space but not in `sub` make both constants infinite.
pub fn qi_distortion(sub: &InducedSpace, ambient: &InducedSpace) -> Result<EmbeddingReport> {
    if !sub.ids().is_subset(ambient.ids()) {
        return Err(Error::pre("distortion: sub is not contained in the ambient space"));
    }
    let ids = sub.ids().as_slice();
    let mut mult: Option<(Ratio, (Vertex, Vertex))> = None;
    let mut add: Option<(u64, (Vertex, Vertex))> = None;
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            let Some(da) = ambient.dist(u, v) else { continue };
            let Some(ds) = sub.dist(u, v) else {
                return Ok(EmbeddingReport {
                    multiplicative: None,
                    additive: None,
                    witness_multiplicative: Some((u, v)),
                    witness_additive: Some((u, v)),
                });
            };
            let r = Ratio::new(u64::from(ds), u64::from(da));
            if mult.is_none_or(|(b, _)| r > b) {
                mult = Some((r, (u, v)));
            }
            let a = u64::from(ds.saturating_sub(da));
            if add.is_none_or(|(b, _)| a > b) {
                add = Some((a, (u, v)));
            }
        }
    }
    Ok(EmbeddingReport {
        multiplicative: Some(mult.map_or(Ratio::new(1, 1), |(r, _)| r)),
        additive: Some(add.map_or(0, |(a, _)| a)),
        witness_multiplicative: mult.map(|(_, w)| w),
        witness_additive: add.map(|(_, w)| w),
    })
}

/// Distortion of the induced subgraph on `sub` inside `g`.
pub fn qi_distortion_in(g: &Graph, sub: &VertexSet) -> Result<EmbeddingReport> {
    qi_distortion(&InducedSpace::new(g, sub.clone()), &InducedSpace::new(g, g.all_vertices()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Projection {
    /// Members of the target within `d(x, target) + 1` of `x`.
    pub set: VertexSet,
    /// `d(x, target)`; `None` when no target vertex is reachable.
    pub distance: Option<u32>,
}

/// Coarse closest-point projection `p(x) = {y ∈ target : d(x, y) ≤ d(x, target) + 1}`.
pub fn nearest_point_projection(space: &InducedSpace, target: &VertexSet, x: Vertex) -> Result<Projection> {
    if target.is_empty() {
        return Err(Error::pre("projection onto an empty target"));
    }
    if !space.contains(x) {
        return Err(Error::pre(format!("vertex {x} is not in the projection space")));
    }
    let Some(dx) = space.dist_to_set(x, target) else {
        return Ok(Projection { set: VertexSet::new(), distance: None });
    };
    let set = target.iter().filter(|&y| space.dist(x, y).is_some_and(|d| d <= dx + 1)).collect();
    Ok(Projection { set, distance: Some(dx) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BottleneckReport {
    pub delta: u32,
    /// `(x, y, m)`: the worst pair and its best midpoint.
    pub witness: Option<(Vertex, Vertex, Vertex)>,
}

/// For every `y`, the largest `t` such that some `x`–`y` path stays at
/// distance `≥ t` from `m`: the smallest ball radius about `m` that every
/// such path meets.
fn widest_from(g: &Graph, dm: &[u32], x: Vertex) -> Vec<u32> {
    let mut val = vec![0u32; g.n()];
    let mut done = vec![false; g.n()];
    let mut heap = BinaryHeap::new();
    val[x] = dm[x];
    heap.push((dm[x], x));
    while let Some((vv, v)) = heap.pop() {
        if done[v] || vv != val[v] {
            continue;
        }
        done[v] = true;
        for &u in g.neighbors(v) {
            let cand = vv.min(dm[u]);
            if !done[u] && cand > val[u] {
                val[u] = cand;
                heap.push((cand, u));
            }
        }
    }
    val
}

fn bottleneck_of(g: &Graph, d: &DistanceMatrix) -> Result<BottleneckReport> {
    if !d.is_connected() {
        return Err(Error::pre("bottleneck constant of a disconnected graph"));
    }
    let n = g.n();
    let rows: Vec<Vec<u32>> = (0..n).map(|m| (0..n).map(|v| d.at(m, v)).collect()).collect();
    let best = (0..n)
        .into_par_iter()
        .filter_map(|x| {
            // per y: best (value, midpoint) over midpoints
            let mut pair: Vec<Option<(u32, Vertex)>> = vec![None; n];
            for m in 0..n {
                let dxm = d.at(x, m);
                let mut widths: Option<Vec<u32>> = None;
                for y in x + 1..n {
                    let dxy = d.at(x, y);
                    if dxy <= 1 || dxm != dxy / 2 && dxm != dxy.div_ceil(2) || dxm + d.at(m, y) != dxy {
                        continue;
                    }
                    let w = widths.get_or_insert_with(|| widest_from(g, &rows[m], x))[y];
                    if pair[y].is_none_or(|(b, _)| w < b) {
                        pair[y] = Some((w, m));
                    }
                }
            }
            let mut worst: Option<(u32, Reverse<(Vertex, Vertex, Vertex)>)> = None;
            for (y, p) in pair.iter().enumerate() {
                if let Some((v, m)) = *p {
                    if worst.is_none_or(|(b, _)| v > b) {
                        worst = Some((v, Reverse((x, y, m))));
                    }
                }
            }
            worst
        })
        .max();
    Ok(match best {
        Some((v, Reverse(w))) => BottleneckReport { delta: v, witness: Some(w) },
        None => BottleneckReport { delta: 0, witness: None },
    })
}

/// Bottleneck constant: the smallest δ such that every pair has a geodesic
/// midpoint whose δ-ball meets every path between them.
pub fn bottleneck_delta(g: &Graph) -> Result<BottleneckReport> {
    bottleneck_of(g, &g.distances())
}

pub fn bottleneck_delta_space(s: &InducedSpace) -> Result<BottleneckReport> {
    let mut r = bottleneck_of(s.graph(), s.local_distances())?;
    r.witness = r.witness.map(|(x, y, m)| (s.global(x), s.global(y), s.global(m)));
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HierarchyPath {
    /// Geodesic `A = A_0, …, A_m = B` in the factored contact graph.
    pub domains: Vec<Vertex>,
    /// `p = p_0, p_1, …, p_m, p_{m+1} = q` in the quasi-median graph.
    pub points: Vec<Vertex>,
    /// `Σ d(p_i, p_{i+1})`.
    pub length: u32,
}

/// Gated subgraph of `X` attached to a vertex of the factored contact graph:
/// the carrier for a hyperplane, the domain's representative for `b_F`.
pub fn attached_subgraph<'a>(pipe: &'a QmPipeline, cx: &Augmented, v: Vertex) -> &'a VertexSet {
    match cx.domain_of(v) {
        None => pipe.geometry.carrier(v),
        Some(i) => pipe.representatives[i].vertices(),
    }
}

/// A geodesic `A_0..A_m` from `a` to `b` in `cx` with waypoints `p_i` in
/// consecutive attached subgraphs, minimizing the total length; the minimum is
/// checked to equal `d(p, q)`.
pub fn hierarchy_path(
    pipe: &QmPipeline,
    cx: &Augmented,
    a: Vertex,
    b: Vertex,
    p: Vertex,
    q: Vertex,
) -> Result<HierarchyPath> {
    let g = cx.graph();
    let dx = pipe.geometry.distances();
    if a >= g.n() || b >= g.n() {
        return Err(Error::pre("hierarchy path endpoints must be vertices of the contact graph"));
    }
    let na = attached_subgraph(pipe, cx, a);
    let nb = attached_subgraph(pipe, cx, b);
    if !na.contains(p) || !nb.contains(q) {
        return Err(Error::pre("p and q must lie in the subgraphs attached to A and B"));
    }
    let da = g.bfs(a);
    let db = g.bfs(b);
    let m = da[b].ok_or_else(|| Error::pre("A and B are in different components of the contact graph"))? as usize;
    let layers: Vec<Vec<Vertex>> = (0..=m)
        .map(|i| g.vertices().filter(|&c| da[c] == Some(i as u32) && db[c] == Some((m - i) as u32)).collect())
        .collect();
    // state: (A_i, p_i) with p_i ∈ N(A_i); cost = Σ_{j<i} d(p_j, p_{j+1}); back-pointer to previous state
    type State = (Vertex, Vertex);
    let mut cost: Vec<std::collections::HashMap<State, (u32, Option<State>)>> = vec![Default::default(); m + 1];
    cost[0].insert((a, p), (0, None));
    for i in 0..m {
        let current: Vec<(State, u32)> = {
            let mut v: Vec<_> = cost[i].iter().map(|(&s, &(c, _))| (s, c)).collect();
            v.sort();
            v
        };
        for &c2 in &layers[i + 1] {
            let n2 = attached_subgraph(pipe, cx, c2);
            for &((c1, p1), c) in &current {
                if !g.adjacent(c1, c2) {
                    continue;
                }
                let meet = attached_subgraph(pipe, cx, c1).intersection(n2);
                for p2 in meet.iter() {
                    let total = c + dx.at(p1, p2);
                    let entry = cost[i + 1].entry((c2, p2)).or_insert((u32::MAX, None));
                    if total < entry.0 {
                        *entry = (total, Some((c1, p1)));
                    }
                }
            }
        }
    }
    let (&(_, pm), &(best, _)) = cost[m]
        .iter()
        .filter(|((c, _), _)| *c == b)
        .min_by_key(|(&(c, pt), &(cst, _))| (cst + dx.at(pt, q), c, pt))
        .ok_or_else(|| Error::internal("no waypoint sequence along any geodesic"))?;
    let length = best + dx.at(pm, q);
    let mut state = (b, pm);
    let mut domains = vec![b];
    let mut points = vec![pm];
    for i in (1..=m).rev() {
        state = cost[i][&state].1.expect("non-initial states have a predecessor");
        domains.push(state.0);
        points.push(state.1);
    }
    domains.reverse();
    points.reverse();
    points.push(q);
    let d_pq = dx.at(p, q);
    if length != d_pq {
        return Err(Error::internal(format!(
            "minimal hierarchy path length {length} differs from d(p, q) = {d_pq}"
        )));
    }
    Ok(HierarchyPath { domains, points, length })
}

/// Comparison of the prism graph `W` with `X` under the map sending a
/// maximal prism to its smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrismDistortion {
    /// `max(d_X / (d_W + 1), d_W / (d_X + 1))` over all prism pairs.
    pub multiplicative: Ratio,
    /// `max |d_X − d_W|` over all prism pairs.
    pub additive: u64,
    /// Largest diameter of a maximal prism in `X`.
    pub max_prism_diameter: u32,
    pub witness_multiplicative: Option<(usize, usize)>,
    pub witness_additive: Option<(usize, usize)>,
}

impl PrismDistortion {
    /// Both distortions are at most the largest prism diameter plus one.
    pub fn within_prism_bound(&self) -> bool {
        let bound = u64::from(self.max_prism_diameter) + 1;
        self.multiplicative <= Ratio::new(bound, 1) && self.additive <= bound
    }
}

pub fn prism_graph_distortion(pipe: &QmPipeline) -> Result<PrismDistortion> {
    let dx = pipe.geometry.distances();
    let dw = pipe.w.graph().distances();
    if !dw.is_connected() {
        return Err(Error::pre("the prism graph is disconnected"));
    }
    let reps: Vec<Vertex> = pipe.prisms.iter().map(|p| p.vertices.first().expect("prisms are nonempty")).collect();
    let max_prism_diameter =
        pipe.prisms.iter().map(|p| dx.set_diameter(&p.vertices).unwrap_or(0)).max().unwrap_or(0);
    let mut mult: (Ratio, Option<(usize, usize)>) = (Ratio::new(0, 1), None);
    let mut add: (u64, Option<(usize, usize)>) = (0, None);
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let (a, b) = (u64::from(dx.at(reps[i], reps[j])), u64::from(dw.at(i, j)));
            let r = Ratio::new(a, b + 1).max(Ratio::new(b, a + 1));
            if r > mult.0 {
                mult = (r, Some((i, j)));
            }
            if a.abs_diff(b) > add.0 {
                add = (a.abs_diff(b), Some((i, j)));
            }
        }
    }
    Ok(PrismDistortion {
        multiplicative: mult.0,
        additive: add.0,
        max_prism_diameter,
        witness_multiplicative: mult.1,
        witness_additive: add.1,
    })
}
