use chhf::factor::DEFAULT_CLOSURE_CAP;
use chhf::generate;
use chhf::graph::{Graph, VertexSet};
use chhf::metrics::HalfInt;
use chhf::pipeline::Triple;
use chhf::verify::{
    check_bgi, check_consistency, check_containers, check_orthogonality, check_partial_realization, check_projections,
    check_uniqueness, full_report, realize_tuple, replay, ConsistentTuple, ProtoHierarchy, Status, VerifyConfig,
    DEFAULT_CHOICE_CAP, DEFAULT_DAG_CAP,
};

const CAP: usize = DEFAULT_CLOSURE_CAP;

fn qm(g: Graph) -> (Triple, ProtoHierarchy) {
    let t = Triple::quasi_median(g, CAP).unwrap();
    let ph = t.proto().unwrap();
    (t, ph)
}

#[test]
fn single_domain_system_is_vacuous() {
    let t = Triple::generic(Graph::empty(3), None, CAP).unwrap();
    let ph = t.proto().unwrap();
    assert_eq!(ph.domain_count(), 1);
    for w in 0..ph.w_count() {
        assert_eq!(ph.pi(0, w), ph.x_graph().clique(w));
    }
    assert!(ph.rho_pairs().is_empty());
    assert_eq!(check_consistency(&ph).constant, Some(HalfInt::ZERO));
    let bgi = check_bgi(&ph, DEFAULT_DAG_CAP);
    assert!(bgi.passed());
}

#[test]
fn host_coordinates_of_the_cube() {
    let (_, ph) = qm(generate::hypercube(3).unwrap());
    assert_eq!(ph.w_count(), 1);
    assert_eq!(ph.pi(0, 0), &VertexSet::from([0, 1, 2]));
    for i in 0..ph.domain_count() {
        assert!(!ph.pi(i, 0).is_empty());
    }
}

#[test]
fn glued_squares_projections_onto_the_shared_hyperplane() {
    // the two squares share the hyperplane dual to the glue edge
    let (t, ph) = qm(generate::glued_squares(2).unwrap());
    let pipe = t.qm.as_ref().unwrap();
    let fs = &t.fs;
    let shared = (0..pipe.geometry.hyperplane_count())
        .find(|&h| pipe.prisms.iter().all(|p| p.hyperplanes.contains(h)))
        .unwrap();
    let i = fs.index_of(&VertexSet::singleton(shared)).unwrap();
    // CF of a singleton domain is the hyperplane vertex alone
    for w in 0..ph.w_count() {
        assert_eq!(ph.pi(i, w), &VertexSet::singleton(shared));
    }
}

#[test]
fn consistency_on_the_cube_system() {
    let (_, ph) = qm(generate::hypercube(3).unwrap());
    let r = check_consistency(&ph);
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.constant, Some(HalfInt::ZERO));
}

#[test]
fn containers_of_the_cube_system() {
    let (t, ph) = qm(generate::hypercube(3).unwrap());
    let fs = &t.fs;
    for u in (1..fs.len()).filter(|&i| fs.domain(i).len() == 1) {
        let container = fs.link(u).intersection(fs.domain(0));
        assert_eq!(container.len(), 2);
        assert!(fs.contains(&container));
        assert!(container.is_disjoint(fs.domain(u)));
    }
    let r = check_containers(&ph);
    assert!(r.passed());
    assert!(r.checked > 0);
}

#[test]
fn orthogonality_axioms_hold_on_corpus() {
    for g in [generate::hypercube(4).unwrap(), generate::hamming(3, 3).unwrap(), generate::glued_squares(4).unwrap()] {
        let (_, ph) = qm(g);
        assert!(check_orthogonality(&ph).passed());
    }
}

#[test]
fn partial_realization_on_the_cube() {
    let (_, ph) = qm(generate::hypercube(3).unwrap());
    let r = check_partial_realization(&ph, DEFAULT_CHOICE_CAP, 0).unwrap();
    assert_eq!(r.constant, Some(HalfInt::ZERO));
}

#[test]
fn uniqueness_table_of_a_tree_is_the_identity() {
    let (_, ph) = qm(generate::random_tree(12, 3));
    let (r, table) = check_uniqueness(&ph);
    assert_eq!(r.constant, Some(HalfInt::ZERO));
    assert!(table.rows.iter().all(|&(k, theta)| k == theta));
    assert_eq!(table.disconnected_pairs, 0);
}

#[test]
fn uniqueness_table_of_glued_squares_is_finite() {
    let (_, ph) = qm(generate::glued_squares(3).unwrap());
    let (_, table) = check_uniqueness(&ph);
    assert_eq!(table.disconnected_pairs, 0);
    assert!(!table.rows.is_empty());
}

#[test]
fn every_witness_replays_to_its_constant() {
    for g in [
        generate::hypercube(3).unwrap(),
        generate::hamming(3, 2).unwrap(),
        generate::glued_squares(3).unwrap(),
        generate::random_tree(15, 7),
    ] {
        let (t, ph) = qm(g);
        let report = full_report(&t, &VerifyConfig::default(), "corpus").unwrap();
        let mut replayed = 0;
        for r in &report.axioms {
            if let (Some(c), Some(w)) = (r.constant, &r.witness) {
                if let Some(v) = replay(&ph, w) {
                    assert_eq!(v, c, "{}", r.name);
                    replayed += 1;
                }
            }
        }
        assert!(replayed > 0);
    }
}

#[test]
fn full_reports_pass_on_the_corpus() {
    let graphs = [
        generate::hypercube(3).unwrap(),
        generate::hypercube(4).unwrap(),
        generate::hamming(3, 2).unwrap(),
        generate::hamming(3, 3).unwrap(),
        generate::glued_squares(2).unwrap(),
        generate::glued_squares(5).unwrap(),
        generate::random_tree(30, 11),
    ];
    for g in graphs {
        let (t, _) = qm(g);
        let report = full_report(&t, &VerifyConfig::default(), "corpus").unwrap();
        assert!(report.verdict.pass, "{:?}", report.verdict.failed);
        assert_eq!(report.exit_code(), 0);
    }
}

#[test]
fn tree_constants_are_small() {
    let (t, _) = qm(generate::random_tree(25, 4));
    let report = full_report(&t, &VerifyConfig::default(), "tree").unwrap();
    for r in &report.axioms {
        if let Some(c) = r.constant {
            assert!(c <= HalfInt::from_int(4), "{} = {c}", r.name);
        }
    }
}

#[test]
fn generic_pipeline_passes_on_small_hosts() {
    for g in [generate::cycle(6).unwrap(), generate::cycle(5).unwrap(), generate::path(5), generate::complete(4)] {
        let t = Triple::generic(g, None, CAP).unwrap();
        let report = full_report(&t, &VerifyConfig::default(), "generic").unwrap();
        assert!(report.verdict.pass, "{:?}", report.verdict.failed);
        assert!(report.prism_distortion.is_none());
    }
}

#[test]
fn bounds_turn_constants_into_failures() {
    let (t, _) = qm(generate::hypercube(3).unwrap());
    let mut config = VerifyConfig::default();
    config.bounds.insert("projection_diameter".into(), HalfInt::from_int(2));
    let report = full_report(&t, &config, "Q3").unwrap();
    assert!(!report.verdict.pass);
    assert_eq!(report.verdict.failed, vec!["projection_diameter".to_string()]);
    assert_eq!(report.exit_code(), 5);
    config.bounds.insert("projection_diameter".into(), HalfInt::from_int(3));
    assert!(full_report(&t, &config, "Q3").unwrap().verdict.pass);
}

#[test]
fn reports_are_deterministic() {
    let (t, _) = qm(generate::glued_squares(3).unwrap());
    let config = VerifyConfig { seed: 17, ..VerifyConfig::default() };
    let a = serde_json::to_string(&full_report(&t, &config, "x").unwrap()).unwrap();
    let b = serde_json::to_string(&full_report(&t, &config, "x").unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn points_realize_at_deviation_zero() {
    let (_, ph) = qm(generate::glued_squares(4).unwrap());
    for w in 0..ph.w_count() {
        let tuple = ConsistentTuple::from_point(&ph, w).unwrap();
        let r = realize_tuple(&ph, &tuple).unwrap();
        assert_eq!(r.deviation, 0);
    }
}

#[test]
fn perturbed_tuples_realize_within_the_projection_bound() {
    let (_, ph) = qm(generate::hamming(3, 2).unwrap());
    let bound = check_projections(&ph)[0].constant.unwrap().doubled() / 2;
    for w in 0..ph.w_count() {
        let coords = ConsistentTuple::perturbed_coords(&ph, w);
        let kappa = ConsistentTuple::minimal_kappa(&ph, &coords).unwrap();
        let tuple = ConsistentTuple::new(&ph, coords, kappa).unwrap();
        assert!(u64::from(realize_tuple(&ph, &tuple).unwrap().deviation) <= 1 + bound);
    }
}

#[test]
fn inconsistent_tuple_reports_the_offending_pair() {
    let (_, ph) = qm(generate::glued_squares(2).unwrap());
    let coords = ConsistentTuple::perturbed_coords(&ph, 0);
    let kappa = ConsistentTuple::minimal_kappa(&ph, &coords).unwrap();
    if kappa == 0 {
        return;
    }
    let err = ConsistentTuple::new(&ph, coords, kappa - 1).unwrap_err();
    assert_eq!(err.exit_code(), 3);
    match err {
        chhf::error::Error::InconsistentTuple { value, kappa: k, .. } => assert!(value > k),
        other => panic!("unexpected error {other}"),
    }
}

#[test]
fn malformed_tuples_are_rejected() {
    let (_, ph) = qm(generate::hypercube(3).unwrap());
    assert!(ConsistentTuple::new(&ph, vec![VertexSet::singleton(0)], 10).is_err());
    let mut coords: Vec<VertexSet> = (0..ph.domain_count()).map(|u| ph.pi(u, 0).clone()).collect();
    coords[1] = VertexSet::new();
    assert!(ConsistentTuple::new(&ph, coords, 10).is_err());
}
