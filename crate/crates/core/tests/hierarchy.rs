use std::collections::BTreeSet;

use chhf::factor::{Augmented, EdgeKind, FactorSystem, QmPipeline, Relation, XGraph, DEFAULT_CLOSURE_CAP};
use chhf::generate;
use chhf::graph::{Graph, VertexSet};
use chhf::pipeline::Triple;
use chhf::qm::Geometry;
use chhf::verify::check_hierarchy_condition;

const CAP: usize = DEFAULT_CLOSURE_CAP;

/// Closure of the host and its vertex links under nonempty intersection, by fixpoint.
fn oracle_domains(g: &Graph) -> BTreeSet<VertexSet> {
    let mut out: BTreeSet<VertexSet> = BTreeSet::from([g.all_vertices()]);
    for v in g.vertices() {
        let lk: VertexSet = g.vertices().filter(|&u| g.adjacent(u, v)).collect();
        if !lk.is_empty() {
            out.insert(lk);
        }
    }
    loop {
        let list: Vec<VertexSet> = out.iter().cloned().collect();
        let before = out.len();
        for a in &list {
            for b in &list {
                let c = a.intersection(b);
                if !c.is_empty() {
                    out.insert(c);
                }
            }
        }
        if out.len() == before {
            return out;
        }
    }
}

fn qm(g: Graph) -> QmPipeline {
    QmPipeline::build(g, CAP).unwrap()
}

#[test]
fn discrete_host_has_only_itself() {
    let fs = FactorSystem::minimal(Graph::empty(4), CAP).unwrap();
    assert_eq!(fs.len(), 1);
    assert_eq!(fs.complexity(), 1);
}

#[test]
fn triangle_system_has_all_subcliques() {
    let fs = FactorSystem::minimal(generate::complete(3), CAP).unwrap();
    assert_eq!(fs.len(), 7);
    assert_eq!(fs.complexity(), 3);
    let got: BTreeSet<VertexSet> = fs.domains().iter().cloned().collect();
    assert_eq!(got, oracle_domains(fs.host()));
}

#[test]
fn factor_systems_match_closure_oracle() {
    let hosts = [
        generate::cycle(5).unwrap(),
        generate::cycle(6).unwrap(),
        generate::path(6),
        generate::hamming(3, 2).unwrap(),
        generate::complete(5),
        Geometry::new(generate::hypercube(4).unwrap()).crossing_graph(),
    ];
    for g in hosts {
        let fs = FactorSystem::minimal(g.clone(), CAP).unwrap();
        let got: BTreeSet<VertexSet> = fs.domains().iter().cloned().collect();
        assert_eq!(got.len(), fs.len());
        assert_eq!(got, oracle_domains(&g));
        assert_eq!(fs.domain(0), &g.all_vertices());
    }
}

#[test]
fn crossing_graph_systems() {
    assert_eq!(qm(generate::random_tree(10, 0)).factor_system.len(), 1);
    assert_eq!(qm(generate::hypercube(3).unwrap()).factor_system.len(), 7);
    let rook = qm(generate::hamming(3, 2).unwrap());
    let mut sizes: Vec<usize> = rook.factor_system.domains().iter().map(VertexSet::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 1, 2]);
}

#[test]
fn closure_cap_is_enforced() {
    let err = FactorSystem::minimal(generate::complete(6), 10).unwrap_err();
    assert_eq!(err.exit_code(), 4);
}

#[test]
fn relations_in_the_cube_system() {
    let fs = qm(generate::hypercube(3).unwrap()).factor_system;
    let singles: Vec<usize> = (0..fs.len()).filter(|&i| fs.domain(i).len() == 1).collect();
    assert_eq!(singles.len(), 3);
    for &a in &singles {
        for &b in singles.iter().filter(|&&b| b != a) {
            assert_eq!(fs.relation(a, b), Relation::Orthogonal);
        }
        assert_eq!(fs.relation(a, 0), Relation::NestedIn);
        assert_eq!(fs.relation(0, a), Relation::Contains);
    }
    // two edges of the triangle share a vertex, and neither lies in the other's link
    for a in 0..fs.len() {
        for b in 0..fs.len() {
            let both_edges = a != b && fs.domain(a).len() == 2 && fs.domain(b).len() == 2;
            assert_eq!(fs.relation(a, b) == Relation::Transverse, both_edges);
        }
    }
}

#[test]
fn overlapping_links_are_transverse() {
    let fs = FactorSystem::minimal(generate::cycle(5).unwrap(), CAP).unwrap();
    let a = fs.index_of(&VertexSet::from([0, 2])).unwrap();
    let b = fs.index_of(&VertexSet::from([2, 4])).unwrap();
    assert_eq!(fs.relation(a, b), Relation::Transverse);
    assert!(fs.contains(&VertexSet::singleton(2)));
}

#[test]
fn nesting_into_orthogonal_domain_stays_orthogonal() {
    for g in [generate::complete(4), generate::hamming(3, 2).unwrap(), generate::cycle(6).unwrap()] {
        let fs = FactorSystem::minimal(g, CAP).unwrap();
        for u in 0..fs.len() {
            for v in 0..fs.len() {
                for w in 0..fs.len() {
                    if fs.nested(u, v) && fs.orthogonal(v, w) {
                        assert!(fs.orthogonal(u, w));
                    }
                }
            }
        }
    }
}

#[test]
fn co_levels() {
    let fs = qm(generate::hypercube(3).unwrap()).factor_system;
    for i in 1..fs.len() {
        let want = if fs.domain(i).len() == 2 { 1 } else { 2 };
        assert_eq!(fs.co_level(i), want);
    }
    assert_eq!(fs.co_level(0), 0);
}

#[test]
fn x_graphs() {
    let t = generate::random_tree(9, 3);
    let tree = qm(t.clone());
    assert_eq!(tree.w.len(), t.edge_count());
    for (a, b) in (0..tree.w.len()).flat_map(|a| (a + 1..tree.w.len()).map(move |b| (a, b))) {
        let (e, f) = (&tree.prisms[a].vertices, &tree.prisms[b].vertices);
        assert_eq!(tree.w.graph().adjacent(a, b), !e.is_disjoint(f));
    }
    let cube = qm(generate::hypercube(3).unwrap());
    assert_eq!((cube.w.len(), cube.w.graph().edge_count()), (1, 0));
    let glued = qm(generate::glued_squares(2).unwrap());
    assert_eq!((glued.w.len(), glued.w.graph().edge_count()), (2, 1));
}

#[test]
fn adjacency_pairs_are_validated() {
    let g = generate::cycle(5).unwrap();
    assert_eq!(XGraph::parse_adjacency("[[0,1],[1,2]]").unwrap(), vec![(0, 1), (1, 2)]);
    assert!(XGraph::parse_adjacency("[[0]").is_err());
    assert!(XGraph::new(&g, &[(0, 9)]).is_err());
}

/// `PF` unfolded: `lk(F)`, the projection vertices of domains inside the
/// link and of every non-host domain containing `F`.
fn oracle_projection_part(fs: &FactorSystem, cx: &Augmented, i: usize) -> VertexSet {
    let lk = fs.link(i);
    let mut out: Vec<usize> = lk.iter().collect();
    for j in 1..fs.len() {
        let d = fs.domain(j);
        if d.is_subset(lk) || fs.domain(i).is_subset(d) {
            out.push(cx.b(j));
        }
    }
    out.into_iter().collect()
}

#[test]
fn projection_parts() {
    for g in [generate::hypercube(3).unwrap(), generate::hamming(3, 3).unwrap(), generate::glued_squares(3).unwrap()] {
        let p = qm(g);
        let cx = Augmented::build(&p.factor_system, &p.w).unwrap();
        for i in 1..p.factor_system.len() {
            let pf = cx.projection_part(&p.factor_system, i);
            assert_eq!(pf, oracle_projection_part(&p.factor_system, &cx, i));
            assert!(pf.contains(cx.b(i)));
        }
    }
}

#[test]
fn projection_parts_shrink_up_the_nesting() {
    let p = qm(generate::hamming(3, 3).unwrap());
    let fs = &p.factor_system;
    let cx = Augmented::build(fs, &p.w).unwrap();
    for a in 1..fs.len() {
        for b in 1..fs.len() {
            if fs.nested(a, b) {
                assert!(cx.projection_part(fs, b).is_subset(&cx.projection_part(fs, a)));
            }
        }
    }
}

#[test]
fn augmented_cube() {
    let p = qm(generate::hypercube(3).unwrap());
    let cx = Augmented::build(&p.factor_system, &p.w).unwrap();
    assert_eq!(cx.graph().n(), 9);
    assert_eq!(cx.graph().edge_count(), 3 + 3 + 6);
    let dot = cx.to_dot(None, "cx");
    assert_eq!(dot.matches("shape=box").count(), 6);
    assert_eq!(dot.matches("shape=ellipse").count(), 3);
    assert_eq!(dot.matches("kind=\"cone\"").count(), 9);
    assert_eq!(dot.matches("kind=\"w\"").count(), 0);
}

#[test]
fn augmented_tree_is_the_contact_graph() {
    let t = generate::random_tree(14, 8);
    let p = qm(t.clone());
    let cx = Augmented::build(&p.factor_system, &p.w).unwrap();
    let contact = p.geometry.contact_graph();
    assert_eq!(cx.graph().n(), contact.n());
    assert_eq!(cx.graph().edges().collect::<Vec<_>>(), contact.edges().collect::<Vec<_>>());
    assert!(cx.graph().edges().all(|(u, v)| cx.kind(u, v) == Some(EdgeKind::W)));
}

#[test]
fn leveled_complement_at_own_level_is_the_complement() {
    let p = qm(generate::hamming(3, 3).unwrap());
    let fs = &p.factor_system;
    let cx = Augmented::build(fs, &p.w).unwrap();
    for i in 1..fs.len() {
        assert_eq!(cx.leveled_complement(fs, i, fs.co_level(i)).unwrap(), cx.complement(fs, i).unwrap());
        let y0 = cx.leveled_complement(fs, i, 0).unwrap();
        assert!(cx.complement(fs, i).unwrap().is_subset(&y0));
    }
}

#[test]
fn cube_face_maps_into_the_cube_prism() {
    let triple = Triple::quasi_median(generate::hypercube(3).unwrap(), CAP).unwrap();
    let ph = triple.proto().unwrap();
    let (report, maps) = check_hierarchy_condition(&ph, &triple.family, true, CAP).unwrap();
    assert!(report.passed());
    let fs = &triple.fs;
    for sub in (1..fs.len()).filter(|&i| fs.domain(i).len() == 2) {
        let m = maps.iter().find(|m| m.domain == 0 && m.sub == sub).unwrap();
        assert_eq!(&m.clique, &fs.domain(0).difference(fs.domain(sub)));
        assert_eq!(m.image, vec![0]);
    }
}

#[test]
fn rook_row_maps_into_the_rook_prism() {
    let triple = Triple::quasi_median(generate::hamming(3, 2).unwrap(), CAP).unwrap();
    let ph = triple.proto().unwrap();
    let (report, maps) = check_hierarchy_condition(&ph, &triple.family, true, CAP).unwrap();
    assert!(report.passed());
    for sub in 1..triple.fs.len() {
        let m = maps.iter().find(|m| m.domain == 0 && m.sub == sub).unwrap();
        assert_eq!(m.clique.len(), 1);
        assert_eq!(m.image, vec![0]);
    }
}

#[test]
fn generic_families_satisfy_the_hierarchy_condition() {
    for g in [generate::cycle(6).unwrap(), generate::path(5), generate::hamming(3, 2).unwrap()] {
        let triple = Triple::generic(g, None, CAP).unwrap();
        let ph = triple.proto().unwrap();
        let (report, _) = check_hierarchy_condition(&ph, &triple.family, false, CAP).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}

#[test]
fn family_of_wrong_length_is_rejected() {
    let triple = Triple::quasi_median(generate::hypercube(3).unwrap(), CAP).unwrap();
    let ph = triple.proto().unwrap();
    assert!(check_hierarchy_condition(&ph, &triple.family[..1], true, CAP).is_err());
}
