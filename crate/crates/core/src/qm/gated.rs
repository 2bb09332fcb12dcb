//! Gates, gated subgraphs, gated hulls and gated projections.

use fixedbitset::FixedBitSet;

use super::Geometry;
use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};

/// Vertex set of an induced subgraph verified to be gated in its host.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GatedSubgraph {
    vertices: VertexSet,
}

impl GatedSubgraph {
    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn into_vertices(self) -> VertexSet {
        self.vertices
    }
}

/// Outcome of a gatedness test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateCheck {
    Gated,
    /// `x` has no gate: its distance-minimizer misses the geodesic to `z`.
    NoGate { x: Vertex, z: Vertex },
}

impl Geometry {
    /// Gate of `x` in `set`: the distance minimizer, checked against every member.
    pub(crate) fn gate_in(&self, set: &VertexSet, x: Vertex) -> Result<Vertex> {
        let d = &self.dist;
        let y = set
            .iter()
            .filter_map(|y| d.get(x, y).map(|dy| (dy, y)))
            .min()
            .map(|(_, y)| y)
            .ok_or_else(|| Error::pre(format!("vertex {x} cannot reach the subgraph")))?;
        let dxy = d.at(x, y);
        for z in set.iter() {
            if d.get(x, z) != Some(dxy + d.at(y, z)) {
                return Err(Error::NotGated { x, z });
            }
        }
        Ok(y)
    }

    /// The unique gate of `x` in `y`.
    pub fn gate(&self, y: &GatedSubgraph, x: Vertex) -> Result<Vertex> {
        self.gate_in(&y.vertices, x)
    }

    /// Whether every host vertex has a gate in `s`.
    pub fn is_gated(&self, s: &VertexSet) -> Result<GateCheck> {
        if s.is_empty() {
            return Err(Error::pre("gatedness of the empty subgraph is undefined"));
        }
        if let Some(v) = s.iter().find(|&v| v >= self.graph.n()) {
            return Err(Error::pre(format!("vertex {v} is not in the host")));
        }
        if !self.graph.is_connected_set(s) {
            return Err(Error::pre("gatedness requires a connected subgraph"));
        }
        for x in self.graph.vertices() {
            match self.gate_in(s, x) {
                Ok(_) => {}
                Err(Error::NotGated { x, z }) => return Ok(GateCheck::NoGate { x, z }),
                Err(e) => return Err(e),
            }
        }
        Ok(GateCheck::Gated)
    }

    /// Promotes a vertex set to a [`GatedSubgraph`] after verification.
    pub fn gated(&self, s: VertexSet) -> Result<GatedSubgraph> {
        match self.is_gated(&s)? {
            GateCheck::Gated => Ok(GatedSubgraph { vertices: s }),
            GateCheck::NoGate { x, z } => Err(Error::NotGated { x, z }),
        }
    }

    /// Smallest gated subgraph containing `s`.
    ///
    /// Alternates interval closure and triangle closure to a fixpoint and
    /// verifies the result.
    pub fn gated_hull(&self, s: &VertexSet) -> Result<GatedSubgraph> {
        if s.is_empty() {
            return Err(Error::pre("gated hull of the empty set is undefined"));
        }
        let n = self.graph.n();
        let mut cur = s.to_bitset(n);
        loop {
            let before = cur.count_ones(..);
            let members: Vec<Vertex> = cur.ones().collect();
            let mut next = cur.clone();
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    if self.dist.get(a, b).is_none() {
                        return Err(Error::pre("gated hull of vertices in different components"));
                    }
                    next.union_with(&self.dist.interval_bits(a, b));
                }
            }
            close_triangles(self, &mut next);
            cur = next;
            if cur.count_ones(..) == before {
                break;
            }
        }
        let hull = VertexSet::from_bitset(&cur);
        match self.is_gated(&hull)? {
            GateCheck::Gated => Ok(GatedSubgraph { vertices: hull }),
            GateCheck::NoGate { x, z } => Err(Error::internal(format!(
                "closure of {s:?} is not gated (vertex {x}, witness {z}); host is not quasi-median"
            ))),
        }
    }

    /// Gated hull of the gates in `y2` of the vertices of `y1`.
    ///
    /// Asserts that the hyperplanes meeting the result are exactly those
    /// meeting both `y1` and `y2`.
    pub fn gate_projection(&self, y1: &GatedSubgraph, y2: &GatedSubgraph) -> Result<GatedSubgraph> {
        let gates: VertexSet =
            y1.vertices.iter().map(|v| self.gate(y2, v)).collect::<Result<_>>()?;
        let out = self.gated_hull(&gates)?;
        let expected = self.hyperplanes_of(&y1.vertices).intersection(&self.hyperplanes_of(&y2.vertices));
        let got = self.hyperplanes_of(&out.vertices);
        if got != expected {
            return Err(Error::internal(format!(
                "gated projection meets hyperplanes {got:?}, expected {expected:?}"
            )));
        }
        Ok(out)
    }
}

fn close_triangles(geo: &Geometry, set: &mut FixedBitSet) {
    let members: Vec<Vertex> = set.ones().collect();
    for &u in &members {
        for &v in geo.graph.neighbors(u) {
            if v > u && set.contains(v) {
                let mut apex = geo.graph.row(u).clone();
                apex.intersect_with(geo.graph.row(v));
                set.union_with(&apex);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::graph::maximal_cliques;

    fn q3() -> Geometry {
        Geometry::new(generate::hypercube(3).unwrap())
    }

    #[test]
    fn gate_of_member_is_itself() {
        let geo = q3();
        let face = geo.gated(VertexSet::from([0, 1, 2, 3])).unwrap();
        for v in face.vertices().iter() {
            assert_eq!(geo.gate(&face, v).unwrap(), v);
        }
        // 0b111 projects to 0b011 on the face z = 0
        assert_eq!(geo.gate(&face, 7).unwrap(), 3);
    }

    #[test]
    fn cliques_are_gated() {
        let geo = Geometry::new(generate::hamming(3, 2).unwrap());
        for c in maximal_cliques(geo.graph()) {
            assert_eq!(geo.is_gated(&c).unwrap(), GateCheck::Gated);
        }
    }

    #[test]
    fn non_gated_path_in_cube() {
        let geo = q3();
        // 000 - 001 - 011 on the face z = 0; 010 has two closest vertices
        let check = geo.is_gated(&VertexSet::from([0, 1, 3])).unwrap();
        assert_eq!(check, GateCheck::NoGate { x: 2, z: 3 });
        assert!(geo.is_gated(&VertexSet::from([0, 3])).is_err());
        assert!(geo.is_gated(&VertexSet::new()).is_err());
    }

    #[test]
    fn hulls() {
        let geo = q3();
        assert_eq!(geo.gated_hull(&VertexSet::from([5])).unwrap().vertices(), &VertexSet::from([5]));
        assert_eq!(geo.gated_hull(&VertexSet::from([0, 7])).unwrap().vertices().len(), 8);
        let k3 = Geometry::new(generate::complete(3));
        assert_eq!(k3.gated_hull(&VertexSet::from([0, 1])).unwrap().vertices().len(), 3);
    }

    #[test]
    fn projections() {
        let geo = q3();
        let bottom = geo.gated(VertexSet::from([0, 1, 2, 3])).unwrap();
        let top = geo.gated(VertexSet::from([4, 5, 6, 7])).unwrap();
        assert_eq!(geo.gate_projection(&bottom, &top).unwrap().vertices(), top.vertices());
        let edge = geo.gated(VertexSet::from([0, 1])).unwrap();
        assert_eq!(geo.gate_projection(&edge, &bottom).unwrap().vertices(), edge.vertices());
    }
}
