//! Maximal prisms: products of maximal cliques, one per maximal family of
//! pairwise-crossing hyperplanes.

use std::collections::HashMap;

use serde::Serialize;

use super::Geometry;
use crate::error::{Error, Result};
use crate::graph::{maximal_cliques, Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prism {
    /// The pairwise-crossing hyperplanes dual to the prism's edges.
    pub hyperplanes: VertexSet,
    pub vertices: VertexSet,
    /// One clique factor per hyperplane, all through the prism's smallest vertex.
    pub factors: Vec<VertexSet>,
}

impl Geometry {
    /// Realizes every maximal clique of the crossing graph as a prism of the host
    /// and checks the correspondence in both directions.
    pub fn maximal_prisms(&self) -> Result<Vec<Prism>> {
        let g = &self.graph;
        if self.hyperplanes.is_empty() {
            // edgeless host: a prism is a single vertex, and only a connected host has one
            return match g.n() {
                0 => Ok(Vec::new()),
                1 => Ok(vec![Prism { hyperplanes: VertexSet::new(), vertices: VertexSet::singleton(0), factors: Vec::new() }]),
                _ => Err(Error::pre("maximal prisms of a disconnected graph")),
            };
        }
        let delta = self.crossing_graph();
        let mut prisms = Vec::new();
        for family in maximal_cliques(&delta) {
            prisms.push(self.realize_prism(&family)?);
        }
        for (i, p) in prisms.iter().enumerate() {
            for (j, q) in prisms.iter().enumerate() {
                if i != j && p.vertices.is_subset(&q.vertices) {
                    return Err(Error::internal(format!(
                        "prism of {:?} lies inside prism of {:?}",
                        p.hyperplanes, q.hyperplanes
                    )));
                }
            }
        }
        for (u, v) in g.edges() {
            if !prisms.iter().any(|p| p.vertices.contains(u) && p.vertices.contains(v)) {
                return Err(Error::internal(format!("edge ({u},{v}) lies in no maximal prism")));
            }
        }
        Ok(prisms)
    }

    /// The prism dual to a maximal crossing family: the intersection of carriers,
    /// verified to be a gated product of cliques whose hyperplanes are exactly `family`.
    fn realize_prism(&self, family: &VertexSet) -> Result<Prism> {
        let g = &self.graph;
        let mut vertices = g.all_vertices();
        for h in family.iter() {
            vertices = vertices.intersection(&self.carriers[h]);
        }
        let fail = |what: &str| Error::internal(format!("crossing family {family:?}: {what}"));
        let base = vertices.first().ok_or_else(|| fail("carriers have empty intersection"))?;
        if self.hyperplanes_of(&vertices) != *family {
            return Err(fail("carrier intersection has the wrong hyperplanes"));
        }
        let factors: Vec<VertexSet> = family
            .iter()
            .map(|h| {
                std::iter::once(base)
                    .chain(g.neighbors(base).iter().copied().filter(|&v| self.dual(base, v) == Some(h)))
                    .collect()
            })
            .collect();
        let expected: usize = factors.iter().map(VertexSet::len).product();
        if expected != vertices.len() {
            return Err(fail("vertex count is not the product of the clique factors"));
        }
        // sector coordinates must identify vertices, and adjacency must be Hamming adjacency
        let coords: HashMap<Vertex, Vec<usize>> = vertices
            .iter()
            .map(|v| (v, family.iter().map(|h| self.sector_of[h][v]).collect()))
            .collect();
        let mut seen: HashMap<&Vec<usize>, Vertex> = HashMap::new();
        for (v, c) in &coords {
            if let Some(u) = seen.insert(c, *v) {
                return Err(fail(&format!("vertices {u} and {v} share sector coordinates")));
            }
        }
        let vs = vertices.as_slice();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                let differ = coords[&u].iter().zip(&coords[&v]).filter(|(a, b)| a != b).count();
                if (differ == 1) != g.adjacent(u, v) {
                    return Err(fail(&format!("adjacency of {u},{v} breaks the product structure")));
                }
            }
        }
        let gated = self.gated(vertices)?;
        Ok(Prism { hyperplanes: family.clone(), vertices: gated.into_vertices(), factors })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::graph::Graph;

    #[test]
    fn tree_prisms_are_edges() {
        let geo = Geometry::new(generate::random_tree(10, 1));
        let prisms = geo.maximal_prisms().unwrap();
        assert_eq!(prisms.len(), 9);
        assert!(prisms.iter().all(|p| p.vertices.len() == 2));
    }

    #[test]
    fn cube_is_one_prism() {
        let geo = Geometry::new(generate::hypercube(3).unwrap());
        let prisms = geo.maximal_prisms().unwrap();
        assert_eq!(prisms.len(), 1);
        assert_eq!(prisms[0].vertices.len(), 8);
        assert_eq!(prisms[0].factors.len(), 3);
    }

    #[test]
    fn rook_graph_with_pendant() {
        let rook = generate::hamming(3, 2).unwrap();
        let mut edges: Vec<_> = rook.edges().collect();
        edges.push((0, 9));
        let g = Graph::from_edges(10, edges).unwrap();
        let prisms = Geometry::new(g).maximal_prisms().unwrap();
        let mut sizes: Vec<usize> = prisms.iter().map(|p| p.vertices.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 9]);
    }

    #[test]
    fn single_vertex() {
        let prisms = Geometry::new(Graph::empty(1)).maximal_prisms().unwrap();
        assert_eq!(prisms.len(), 1);
    }
}
