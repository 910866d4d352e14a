use proptest::prelude::*;

use super::*;
use crate::mapkernel::Width;

#[test]
fn rooted_map_totals() {
    let expected = [1u64, 2, 10, 74, 706, 8162];
    for (m, &e) in expected.iter().enumerate() {
        assert_eq!(rooted_map_counts(m, None).unwrap().total(), e, "m={}", m);
    }
}

#[test]
fn rooted_map_genus_split() {
    let planar = [1u64, 2, 9, 54, 378, 2916];
    let torus = [0u64, 0, 1, 20, 307, 4280];
    for m in 0..=5 {
        let c = rooted_map_counts(m, None).unwrap();
        assert_eq!(c.genus(0), planar[m], "m={}", m);
        assert_eq!(c.genus(1), torus[m], "m={}", m);
        assert_eq!(c.by_genus().values().sum::<u64>(), c.total());
    }
    assert_eq!(rooted_map_counts(2, Some(1)).unwrap().total(), 1);
}

#[test]
fn canonical_generator_matches_reference() {
    for m in 0..=4 {
        assert_eq!(rooted_map_counts(m, None).unwrap(), reference_rooted_counts(m).unwrap());
    }
}

#[test]
fn bound_is_enforced() {
    assert!(matches!(rooted_maps(7), Err(CensusError::BoundExceeded { .. })));
    assert!(matches!(rooted_general_maps(5), Err(CensusError::BoundExceeded { .. })));
}

#[test]
fn general_maps_match_flag_enumeration() {
    let expected = [1u64, 3, 24, 297];
    for m in 0..=3 {
        let c = rooted_general_counts(m).unwrap();
        assert_eq!(c.total(), expected[m]);
        assert_eq!(reference_general_count(m).unwrap(), expected[m]);
    }
    // the projective loop and the two planar maps on one edge
    let c = rooted_general_counts(1).unwrap();
    assert_eq!(c.genus(0), 2);
    assert_eq!(c.genus(1), 1);
}

#[test]
fn quadrangulations_match_maps() {
    for m in 0..=5 {
        let maps = rooted_map_counts(m, None).unwrap();
        let quads = quad_counts(m, None, QuadClass::All).unwrap();
        assert_eq!(maps.by_genus(), quads.by_genus(), "m={}", m);
    }
}

#[test]
fn near_simple_equals_simple_in_the_plane() {
    for m in 0..=5 {
        let a = quad_counts(m, Some(0), QuadClass::Simple).unwrap();
        let b = quad_counts(m, Some(0), QuadClass::NearSimple).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn torus_quadrangulations_with_edge_width_two_are_not_simple() {
    let recs = quadrangulations(3, Some(1)).unwrap();
    let narrow: Vec<&QuadRecord> = recs.iter().filter(|r| r.tags.ew == Width::Finite(2)).collect();
    assert!(!narrow.is_empty());
    assert!(narrow.iter().all(|r| !r.tags.simple));
}

#[test]
fn labelled_graph_counts() {
    let opts = GraphCensusOptions::default();
    let planar: Vec<u64> = (1..=5)
        .map(|n| labelled_graph_census(n, &GraphPredicate::PLANAR, &opts).unwrap().total())
        .collect();
    assert_eq!(planar, vec![1, 2, 8, 64, 1023]);
    let torus = GraphPredicate::ALL.with_max_genus(1);
    assert_eq!(labelled_graph_census(5, &torus, &opts).unwrap().total(), 1024);
    let three = labelled_graph_census(3, &GraphPredicate::ALL, &opts).unwrap();
    assert_eq!(three.total(), 8);
    let connected = GraphPredicate::ALL.with_connectivity(1);
    assert_eq!(labelled_graph_census(4, &connected, &opts).unwrap().total(), 38);
}

#[test]
fn graph_census_edge_sums() {
    let opts = GraphCensusOptions {
        genus: true,
        ..Default::default()
    };
    let c = labelled_graph_census(5, &GraphPredicate::ALL, &opts).unwrap();
    assert_eq!(c.by_edges().values().sum::<u64>(), 1 << 10);
    assert_eq!(c.by_genus()[&Some(1)], 1);
}

#[test]
fn graph_census_resumes_from_checkpoint() {
    let dir = std::env::temp_dir().join(format!("surfenum-cp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cp.json");
    let opts = GraphCensusOptions {
        checkpoint: Some(path.clone()),
        ..Default::default()
    };
    let first = labelled_graph_census(6, &GraphPredicate::PLANAR, &opts).unwrap();
    let again = labelled_graph_census(6, &GraphPredicate::PLANAR, &opts).unwrap();
    assert_eq!(first, again);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn predicate_names_round_trip() {
    for s in ["all", "connected", "2-connected+planar", "genus<=1", "3-connected+genus<=2"] {
        let p: GraphPredicate = s.parse().unwrap();
        assert_eq!(p.to_string(), s);
    }
    assert!("toroidal".parse::<GraphPredicate>().is_err());
}

#[test]
fn csv_round_trip() {
    let t = map_table(Family::RootedMaps, &[rooted_map_counts(2, None).unwrap()], &[]);
    let back = CensusTable::from_csv(&t.to_csv()).unwrap();
    assert_eq!(t, back);
    assert!(back.is_complete(Family::RootedMaps, 2));
}

#[test]
fn rooted_ogf_from_census() {
    let counts: Vec<MapCounts> = (0..=4).map(|m| rooted_map_counts(m, Some(0)).unwrap()).collect();
    let t = map_table(Family::RootedMaps, &counts, &[]);
    let s = series_from_census(&t, Family::RootedMaps, Some(0), &[], Convention::RootedOgf, 5).unwrap();
    let at1 = s.specialize("x", &crate::int(1)).unwrap();
    let coeffs: Vec<i64> = (0..5).map(|m| at1.coeff(&[m]).to_integer().try_into().unwrap()).collect();
    assert_eq!(coeffs, vec![1, 2, 9, 54, 378]);
    assert!(matches!(
        series_from_census(&t, Family::RootedMaps, Some(0), &[], Convention::RootedOgf, 6),
        Err(CensusError::MissingRecords { .. })
    ));
}

#[test]
fn edge_labelled_convention_round_trip() {
    // 2u dQ/du recovers the rooted counts
    let counts: Vec<MapCounts> = (0..=4).map(|m| rooted_map_counts(m, Some(0)).unwrap()).collect();
    let t = map_table(Family::RootedMaps, &counts, &[]);
    let q = series_from_census(&t, Family::RootedMaps, Some(0), &[], Convention::EdgeLabelledEgf, 5).unwrap();
    let back = q.derive("u").unwrap().shift(&[0, 1]).scale(&crate::int(2));
    let rooted = series_from_census(&t, Family::RootedMaps, Some(0), &[], Convention::RootedOgf, 5).unwrap();
    assert_eq!(back, rooted.checked_sub(&rooted.monomial_like(&[1, 0], crate::int(1))).unwrap());
}

#[test]
fn planar_graph_egf() {
    let mut t = CensusTable::new();
    for n in 0..=5 {
        t.merge(&labelled_graph_census(n, &GraphPredicate::PLANAR, &GraphCensusOptions::default()).unwrap().to_table());
    }
    let s = series_from_census(&t, Family::LabelledGraphs, None, &[("predicate", "planar")], Convention::VertexLabelledEgf, 6).unwrap();
    let at1 = s.specialize("y", &crate::int(1)).unwrap();
    let fact = [1i64, 1, 2, 6, 24, 120];
    let counts: Vec<i64> = (1..=5)
        .map(|n| (at1.coeff(&[n as u32]) * crate::int(fact[n])).to_integer().try_into().unwrap())
        .collect();
    assert_eq!(counts, vec![1, 2, 8, 64, 1023]);
    assert!(series_from_census(&CensusTable::new(), Family::LabelledGraphs, None, &[], Convention::VertexLabelledEgf, 0).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn genus_invariant_under_dart_relabelling(idx in 0usize..706, seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let maps = rooted_maps(4).unwrap();
        let m = &maps[idx % maps.len()];
        let mut perm: Vec<usize> = (0..m.n_darts()).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let r = m.relabel(&perm);
        prop_assert_eq!(r.genus().unwrap(), m.genus().unwrap());
        prop_assert_eq!(r.n_vertices(), m.n_vertices());
    }
}
