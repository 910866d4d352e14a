use proptest::prelude::*;

use super::*;
use crate::census::GraphCensusOptions;

fn coeff(s: &Series, n: u32, e: u32) -> Rational {
    s.coeff(&[n, e])
}

#[test]
fn series_set_low_order_terms() {
    let s = GraphSeriesSet::build(4).unwrap();
    assert_eq!(coeff(&s.g[0], 0, 0), int(1));
    assert_eq!(coeff(&s.c[0], 1, 0), int(1));
    assert_eq!(coeff(&s.b[0], 2, 1), rat(1, 2));
    assert_eq!(coeff(&s.b[0], 1, 0), int(0));
    // the labelled triangle, and the three labelled paths on three vertices
    assert_eq!(coeff(&s.b[0], 3, 3), rat(1, 6));
    assert_eq!(coeff(&s.c[0], 3, 2), rat(3, 6));
    assert_eq!(coeff(&s.t[0], 4, 6), rat(1, 24));
    assert!(s.g[1].is_zero());
    assert_eq!(coeff(&s.f, 1, 0), int(1));
    assert_eq!(coeff(&s.f, 2, 1), int(1));
}

#[test]
fn pointing_without_edges_is_a_single_vertex() {
    let s = GraphSeriesSet::build(5).unwrap();
    let f0 = s.f.specialize("y", &int(0)).unwrap();
    assert_eq!(f0.coeff(&[1, 0]), int(1));
    assert_eq!(f0.len(), 1);
}

#[test]
fn small_networks() {
    assert_eq!(network_counts(0).unwrap(), BTreeMap::from([(1, 1)]));
    // the path through the internal vertex, with or without the pole edge
    assert_eq!(network_counts(1).unwrap(), BTreeMap::from([(2, 1), (3, 1)]));
    assert!(network_counts(NETWORK_VERTEX_BOUND + 1).is_err());
}

#[test]
fn torus_series_at_five_vertices() {
    let s = GraphSeriesSet::build(5).unwrap();
    assert_eq!(coeff(&s.g[1], 5, 10), rat(1, 120));
    assert_eq!(coeff(&s.c[1], 5, 10), rat(1, 120));
    assert_eq!(coeff(&s.b[1], 5, 10), rat(1, 120));
    assert_eq!(coeff(&s.t[1], 5, 10), rat(1, 120));
    let total: Rational = (0..=10).map(|e| coeff(&s.g[0], 5, e) + coeff(&s.g[1], 5, e)).sum();
    assert_eq!(total * int(120), int(1024));
}

#[test]
fn identities_hold_to_seven_vertices() {
    let r = verify_identities(7).unwrap();
    for c in &r.checks {
        assert!(c.passed, "{}: {:?}", c.name, c.first_mismatch);
    }
    assert_eq!(r.checks.len(), 5);
    assert!(r.to_json().contains("G_1 = C_1 G_0"));
}

#[test]
fn identities_at_one_vertex() {
    let r = verify_identities(1).unwrap();
    assert!(r.passed());
    assert_eq!(r.checks.len(), 4);
    assert!(verify_identities(8).is_err());
}

#[test]
fn a_broken_series_is_detected() {
    let mut s = GraphSeriesSet::build(4).unwrap();
    s.c[0] = s.c[0].checked_add(&s.c[0].monomial_like(&[3, 1], int(1))).unwrap();
    let checks = exp_identity_checks(&s).unwrap();
    assert!(!checks[0].passed);
    assert!(checks[0].first_mismatch.as_deref().unwrap().starts_with("[3, 1]"));
}

#[test]
fn k5_with_a_pendant_vertex() {
    let mut g = LabelledGraph::complete(6);
    for v in 1..5 {
        g = LabelledGraph::from_edges(6, &g.edges().into_iter().filter(|&e| e != (v, 5)).collect::<Vec<_>>())
            .unwrap();
    }
    assert_eq!(g.n_edges(), 11);
    let part = rv_inspect(&g, SearchBudget::default()).unwrap();
    assert_eq!(part.toroidal, 1);
    assert!(part.violations.is_empty());
    assert_eq!(part.fw_two, 1);
}

#[test]
fn planar_graphs_pass_vacuously() {
    let part = rv_inspect(&LabelledGraph::complete(4), SearchBudget::default()).unwrap();
    assert_eq!((part.connected, part.toroidal), (1, 0));
    assert!(rv_inspect(&LabelledGraph::empty(3).unwrap(), SearchBudget::default()).is_none());
}

#[test]
fn block_structure_up_to_six_vertices() {
    let r = robertson_vitray_check(6, SearchBudget::default()).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
    // connected labelled graphs on 1..=6 vertices
    assert_eq!(r.connected_graphs, 1 + 1 + 4 + 38 + 728 + 26704);
    assert!(r.toroidal_graphs > 0);
    assert_eq!(r.face_width_exact + r.face_width_partial.len() as u64, r.toroidal_graphs);
    assert!(robertson_vitray_check(7, SearchBudget::default()).is_err());
}

#[test]
fn planar_stats_at_three_and_five() {
    let r = stats(3, GraphClass::Planar).unwrap();
    assert_eq!(r.total, 8);
    assert_eq!(r.counts["edges"], BTreeMap::from([(0, 1), (1, 3), (2, 3), (3, 1)]));
    let r = stats(5, GraphClass::Planar).unwrap();
    assert_eq!(r.total, 1023);
    // 728 connected graphs on five vertices, of which only K5 is non-planar
    assert_eq!(r.probability("components", 1), rat(727, 1023));
    assert!(r.to_csv().starts_with("statistic,value,count,probability\nedges,0,1,1/1023\n"));
}

#[test]
fn torus_stats_at_five() {
    let r = stats(5, GraphClass::TorusEmbeddable).unwrap();
    assert_eq!(r.total, 1024);
    assert_eq!(r.counts["chromatic_number"][&5], 1);
    let r = stats(5, GraphClass::Genus1).unwrap();
    assert_eq!(r.total, 1);
    assert_eq!(r.counts["largest_block"], BTreeMap::from([(5, 1)]));
    assert!(stats(7, GraphClass::Genus1).is_err());
    assert!(stats(0, GraphClass::Planar).is_err());
}

#[test]
fn class_names_round_trip() {
    for c in [GraphClass::Planar, GraphClass::Genus1, GraphClass::TorusEmbeddable] {
        assert_eq!(c.to_string().parse::<GraphClass>().unwrap(), c);
    }
    assert!("sphere".parse::<GraphClass>().is_err());
}

#[test]
fn genus_classes_partition_all_graphs() {
    for n in 1..=GENUS_VERTEX_BOUND {
        let opts = GraphCensusOptions { genus: true, ..Default::default() };
        let c = labelled_graph_census(n, &GraphPredicate::ALL, &opts).unwrap();
        let low: u64 = c.by_genus().iter().filter(|(g, _)| g.unwrap() <= 1).map(|(_, c)| c).sum();
        let high: u64 = c.by_genus().iter().filter(|(g, _)| g.unwrap() >= 2).map(|(_, c)| c).sum();
        assert_eq!(low + high, 1 << (n * (n - 1) / 2));
    }
}

fn arb_class() -> impl Strategy<Value = GraphClass> {
    prop_oneof![
        Just(GraphClass::Planar),
        Just(GraphClass::Genus1),
        Just(GraphClass::TorusEmbeddable)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stats_tables_are_distributions(n in 1usize..=5, class in arb_class()) {
        let r = stats(n, class).unwrap();
        if r.total > 0 {
            for s in STATISTICS {
                prop_assert_eq!(r.mass(s), int(1));
            }
            prop_assert!(r.mean("components") >= int(1));
            let census = labelled_graph_census(
                n,
                &GraphPredicate::ALL.with_max_genus(1),
                &GraphCensusOptions::default(),
            )
            .unwrap();
            if class == GraphClass::TorusEmbeddable {
                prop_assert_eq!(r.total, census.total());
            }
        }
    }

    #[test]
    fn classes_are_consistent(n in 1usize..=6, mask in any::<u64>()) {
        let g = LabelledGraph::from_edge_mask(n, mask & ((1u64 << (n * (n - 1) / 2)) - 1));
        let planar = GraphClass::Planar.admits(&g).unwrap();
        let torus = GraphClass::Genus1.admits(&g).unwrap();
        prop_assert_eq!(planar || torus, GraphClass::TorusEmbeddable.admits(&g).unwrap());
        prop_assert!(!(planar && torus));
        let [e, k, b, chi] = statistics_of(&g);
        prop_assert_eq!(e, g.n_edges());
        prop_assert!(k >= 1 && b >= 1 && b <= n && chi <= n);
    }
}
