mod common;

use proptest::prelude::*;

use chhf::factor::{FactorSystem, DEFAULT_CLOSURE_CAP};
use chhf::generate;
use chhf::graph::{link_set, maximal_cliques, Graph, VertexSet};
use chhf::metrics::{gromov_delta, HalfInt};
use chhf::qm::{is_quasi_median, Geometry};

use common::{all_pairs, doubled_delta};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("connected", Graph::is_connected)
}

/// Products of a random tree with a clique or a second tree: always quasi-median.
fn arb_quasi_median() -> impl Strategy<Value = Graph> {
    (2usize..7, any::<u64>(), 1usize..4, any::<bool>()).prop_map(|(n, seed, q, two_trees)| {
        let t = generate::random_tree(n, seed);
        let other = if two_trees { generate::random_tree(q + 1, seed ^ 0x5a5a) } else { generate::complete(q) };
        generate::cartesian_product(&t, &other)
    })
}

fn subset_of(g: &Graph, mask: u64) -> VertexSet {
    g.vertices().filter(|&v| mask >> (v % 64) & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn links_shrink_as_sets_grow(g in arb_graph(10), a in any::<u64>(), b in any::<u64>()) {
        let s = subset_of(&g, a);
        let t = s.union(&subset_of(&g, b));
        prop_assume!(!s.is_empty());
        let ls = link_set(&g, &s).unwrap();
        let lt = link_set(&g, &t).unwrap();
        prop_assert!(lt.is_subset(&ls));
        prop_assert!(ls.is_disjoint(&s));
    }

    #[test]
    fn cliques_are_maximal_and_cover_every_edge(g in arb_graph(10)) {
        let cliques = maximal_cliques(&g);
        for c in &cliques {
            prop_assert!(g.is_clique(c));
            let extendable = g.vertices().any(|v| !c.contains(v) && c.iter().all(|u| g.adjacent(u, v)));
            prop_assert!(!extendable);
        }
        for (u, v) in g.edges() {
            prop_assert!(cliques.iter().any(|c| c.contains(u) && c.contains(v)));
        }
        for v in g.vertices() {
            prop_assert!(cliques.iter().any(|c| c.contains(v)));
        }
    }

    #[test]
    fn distances_form_a_metric(g in arb_connected(10)) {
        let d = g.distances();
        let oracle = all_pairs(&g);
        for x in g.vertices() {
            for y in g.vertices() {
                prop_assert_eq!(d.get(x, y), Some(oracle[x][y]));
                prop_assert_eq!(d.get(x, y), d.get(y, x));
                for z in g.vertices() {
                    prop_assert!(oracle[x][z] <= oracle[x][y] + oracle[y][z]);
                }
            }
        }
    }

    #[test]
    fn trees_are_zero_hyperbolic(n in 1usize..60, seed in any::<u64>()) {
        prop_assert_eq!(gromov_delta(&generate::random_tree(n, seed)).unwrap().delta, HalfInt::ZERO);
    }

    #[test]
    fn delta_matches_oracle(g in arb_connected(8)) {
        prop_assert_eq!(gromov_delta(&g).unwrap().delta.doubled(), doubled_delta(&g));
    }

    #[test]
    fn factor_systems_are_closed(g in arb_graph(8)) {
        let fs = FactorSystem::minimal(g.clone(), DEFAULT_CLOSURE_CAP).unwrap();
        for v in g.vertices() {
            let lk = link_set(&g, &VertexSet::singleton(v)).unwrap();
            prop_assert!(lk.is_empty() || fs.contains(&lk));
        }
        for a in fs.domains() {
            for b in fs.domains() {
                let c = a.intersection(b);
                prop_assert!(c.is_empty() || fs.contains(&c));
            }
        }
    }

    #[test]
    fn products_are_quasi_median(g in arb_quasi_median()) {
        prop_assert!(is_quasi_median(&g).is_quasi_median);
    }

    #[test]
    fn distance_counts_separating_hyperplanes(g in arb_quasi_median()) {
        let geo = Geometry::new(g.clone());
        let d = all_pairs(&g);
        for x in g.vertices() {
            for y in g.vertices() {
                prop_assert_eq!(geo.separating_hyperplanes(x, y).len() as u32, d[x][y]);
            }
        }
    }

    #[test]
    fn gates_are_idempotent(g in arb_quasi_median(), mask in any::<u64>()) {
        let geo = Geometry::new(g.clone());
        let s = subset_of(&g, mask);
        prop_assume!(!s.is_empty());
        let hull = geo.gated_hull(&s).unwrap();
        let d = all_pairs(&g);
        for x in g.vertices() {
            let gx = geo.gate(&hull, x).unwrap();
            prop_assert!(hull.vertices().contains(gx));
            prop_assert_eq!(geo.gate(&hull, gx).unwrap(), gx);
            for y in hull.vertices().iter() {
                prop_assert_eq!(d[x][y], d[x][gx] + d[gx][y]);
            }
        }
    }

    #[test]
    fn hulls_are_closed(g in arb_quasi_median(), mask in any::<u64>()) {
        let geo = Geometry::new(g.clone());
        let s = subset_of(&g, mask);
        prop_assume!(!s.is_empty());
        let hull = geo.gated_hull(&s).unwrap();
        prop_assert!(s.is_subset(hull.vertices()));
        let again = geo.gated_hull(hull.vertices()).unwrap();
        prop_assert_eq!(again.vertices(), hull.vertices());
    }
}
