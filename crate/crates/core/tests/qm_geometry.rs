mod common;

use chhf::generate;
use chhf::graph::{Graph, InducedSpace, VertexSet};
use chhf::metrics::nearest_point_projection;
use chhf::qm::{is_quasi_median, quasi_median_of_triple, GateCheck, Geometry};

use common::all_pairs;

fn q3() -> Geometry {
    Geometry::new(generate::hypercube(3).unwrap())
}

/// The bottom face of `Q3`: ids with the highest bit clear.
fn bottom() -> VertexSet {
    VertexSet::from([0, 1, 2, 3])
}

#[test]
fn tree_triples_have_a_unique_median() {
    let t = generate::random_tree(15, 1);
    let d = all_pairs(&t);
    for (a, b, c) in [(0, 5, 9), (3, 11, 14), (2, 2, 7)] {
        let m = quasi_median_of_triple(&t, [a, b, c]).unwrap();
        assert_eq!(m.k, Some(0));
        assert_eq!(m.triples.len(), 1);
        let v = m.triples[0][0];
        assert_eq!(d[a][v] + d[v][b], d[a][b]);
        assert_eq!(d[b][v] + d[v][c], d[b][c]);
        assert_eq!(d[a][v] + d[v][c], d[a][c]);
    }
}

#[test]
fn quasi_median_of_disconnected_triple_is_an_error() {
    assert!(quasi_median_of_triple(&Graph::empty(3), [0, 1, 2]).is_err());
}

#[test]
fn recognition_of_examples() {
    assert!(is_quasi_median(&generate::hypercube(3).unwrap()).is_quasi_median);
    assert!(is_quasi_median(&generate::hamming(3, 2).unwrap()).is_quasi_median);
    assert!(is_quasi_median(&generate::random_tree(25, 3)).is_quasi_median);
    assert!(!is_quasi_median(&generate::cycle(5).unwrap()).is_quasi_median);
}

#[test]
fn hyperplane_counts() {
    let t = generate::random_tree(10, 4);
    let geo = Geometry::new(t.clone());
    assert_eq!(geo.hyperplane_count(), t.edge_count());
    assert!(geo.hyperplanes().iter().all(|h| h.edges.len() == 1));

    let k3 = Geometry::new(generate::complete(3));
    assert_eq!(k3.hyperplane_count(), 1);
    assert_eq!(k3.hyperplanes()[0].edges.len(), 3);

    let cube = q3();
    assert_eq!(cube.hyperplane_count(), 3);
    assert!(cube.hyperplanes().iter().all(|h| h.edges.len() == 4));
}

#[test]
fn carrier_fibres_and_sectors() {
    let t = Geometry::new(generate::path(2));
    assert_eq!(t.carrier(0), &VertexSet::from([0, 1]));
    assert_eq!(t.fibres(0), vec![VertexSet::singleton(0), VertexSet::singleton(1)]);
    assert_eq!(t.sectors(0).len(), 2);

    let k3 = Geometry::new(generate::complete(3));
    assert_eq!(k3.carrier(0).len(), 3);
    assert_eq!(k3.fibres(0).len(), 3);
    assert_eq!(k3.sectors(0).len(), 3);

    let cube = q3();
    for h in 0..3 {
        assert_eq!(cube.carrier(h).len(), 8);
        let fibres = cube.fibres(h);
        assert_eq!(fibres.len(), 2);
        for f in &fibres {
            assert_eq!(f.len(), 4);
            assert_eq!(cube.graph().induced(f).edge_count(), 4);
        }
        assert_eq!(cube.sectors(h).len(), 2);
    }
}

#[test]
fn crossing_and_osculation() {
    let q2 = Geometry::new(generate::hypercube(2).unwrap());
    assert!(q2.crosses(0, 1).unwrap());
    assert!(q2.crosses(0, 0).is_err());

    let p = Geometry::new(generate::path(3));
    assert!(!p.crosses(0, 1).unwrap());
    assert!(p.osculates(0, 1).unwrap());

    let rook = Geometry::new(generate::hamming(3, 2).unwrap());
    assert_eq!(rook.hyperplane_count(), 2);
    assert!(rook.crosses(0, 1).unwrap());
}

#[test]
fn gate_of_member_and_of_outside_vertex() {
    let cube = q3();
    let face = cube.gated(bottom()).unwrap();
    assert_eq!(cube.gate(&face, 2).unwrap(), 2);
    let d = cube.distances();
    for x in 4..8 {
        let g = cube.gate(&face, x).unwrap();
        // the minimizer, through which every member is reached
        let nearest = bottom().iter().min_by_key(|&y| d.get(x, y)).unwrap();
        assert_eq!(g, nearest);
        for y in bottom().iter() {
            assert_eq!(d.get(x, y), Some(d.get(x, g).unwrap() + d.get(g, y).unwrap()));
        }
    }
}

#[test]
fn gate_in_a_tree_is_the_closest_vertex() {
    let p = Geometry::new(generate::path(6));
    let sub = p.gated(VertexSet::from([3, 4, 5])).unwrap();
    assert_eq!(p.gate(&sub, 0).unwrap(), 3);
}

#[test]
fn gatedness() {
    let cube = q3();
    for c in chhf::graph::maximal_cliques(cube.graph()) {
        assert_eq!(cube.is_gated(&c).unwrap(), GateCheck::Gated);
    }
    // two antipodal vertices of a square induce no edge
    let q2 = Geometry::new(generate::hypercube(2).unwrap());
    assert!(q2.is_gated(&VertexSet::from([0, 3])).is_err());
    assert!(cube.is_gated(&VertexSet::new()).is_err());
    // a path along two edges of a face: the fourth face vertex has no gate
    match cube.is_gated(&VertexSet::from([0, 1, 3])).unwrap() {
        GateCheck::NoGate { x, .. } => assert_eq!(x, 2),
        GateCheck::Gated => panic!("a bent path in a square is not gated"),
    }
}

#[test]
fn gated_hulls() {
    let cube = q3();
    assert_eq!(cube.gated_hull(&VertexSet::singleton(5)).unwrap().vertices(), &VertexSet::singleton(5));
    assert_eq!(cube.gated_hull(&VertexSet::from([0, 7])).unwrap().vertices().len(), 8);
    let k3 = Geometry::new(generate::complete(3));
    assert_eq!(k3.gated_hull(&VertexSet::from([0, 1])).unwrap().vertices(), &VertexSet::from([0, 1, 2]));
}

#[test]
fn gate_projections() {
    let cube = q3();
    let low = cube.gated(bottom()).unwrap();
    let high = cube.gated(VertexSet::from([4, 5, 6, 7])).unwrap();
    assert_eq!(cube.gate_projection(&low, &high).unwrap().vertices(), high.vertices());
    let edge = cube.gated(VertexSet::from([0, 1])).unwrap();
    assert_eq!(cube.gate_projection(&edge, &low).unwrap().vertices(), edge.vertices());

    let p = Geometry::new(generate::path(7));
    let left = p.gated(VertexSet::from([0, 1])).unwrap();
    let right = p.gated(VertexSet::from([4, 5, 6])).unwrap();
    assert_eq!(p.gate_projection(&left, &right).unwrap().vertices(), &VertexSet::singleton(4));
}

#[test]
fn maximal_prisms() {
    let t = Geometry::new(generate::random_tree(9, 2));
    let prisms = t.maximal_prisms().unwrap();
    assert_eq!(prisms.len(), 8);
    assert!(prisms.iter().all(|p| p.vertices.len() == 2));

    assert_eq!(q3().maximal_prisms().unwrap().len(), 1);

    // rook's graph with a pendant vertex at a corner
    let rook = generate::hamming(3, 2).unwrap();
    let mut edges: Vec<(usize, usize)> = rook.edges().collect();
    edges.push((0, 9));
    let g = Graph::from_edges(10, edges).unwrap();
    assert!(is_quasi_median(&g).is_quasi_median);
    let prisms = Geometry::new(g).maximal_prisms().unwrap();
    let mut sizes: Vec<usize> = prisms.iter().map(|p| p.vertices.len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![2, 9]);
}

#[test]
fn separating_hyperplanes() {
    let cube = q3();
    assert!(cube.separating_hyperplanes(3, 3).is_empty());
    assert_eq!(cube.separating_hyperplanes(0, 7).len(), 3);
    let t = generate::random_tree(12, 6);
    let geo = Geometry::new(t.clone());
    let d = all_pairs(&t);
    for (x, y) in [(0, 11), (4, 9), (1, 2)] {
        let s = geo.separating_hyperplanes(x, y);
        assert_eq!(s.len() as u32, d[x][y]);
    }
}

#[test]
fn nearest_point_projection_onto_a_face() {
    let g = generate::hypercube(3).unwrap();
    let space = InducedSpace::new(&g, g.all_vertices());
    let d = all_pairs(&g);
    let x = 7;
    let near = bottom().iter().map(|y| d[x][y]).min().unwrap();
    let expected: VertexSet = bottom().iter().filter(|&y| d[x][y] <= near + 1).collect();
    let p = nearest_point_projection(&space, &bottom(), x).unwrap();
    assert_eq!(p.distance, Some(near));
    assert_eq!(p.set, expected);
    assert_eq!(p.set, VertexSet::from([1, 2, 3]));

    let member = nearest_point_projection(&space, &bottom(), 0).unwrap();
    assert_eq!(member.set, VertexSet::from([0, 1, 2]));
}

#[test]
fn nearest_point_projection_on_a_path() {
    let g = generate::path(4);
    let space = InducedSpace::new(&g, g.all_vertices());
    let p = nearest_point_projection(&space, &VertexSet::singleton(0), 3).unwrap();
    assert_eq!(p.set, VertexSet::singleton(0));
    assert!(nearest_point_projection(&space, &VertexSet::new(), 3).is_err());
}
