use surfenum::census::{
    labelled_graph_census, map_table, rooted_map_counts, series_from_census, CensusTable, Convention, Family,
    GraphCensusOptions, GraphPredicate,
};
use surfenum::genuschain::{planar_maps, IdentityCheck};
use surfenum::graphkernel::LabelledGraph;
use surfenum::mapkernel::CombMap;
use surfenum::{int, Series};

#[test]
fn census_table_feeds_the_closed_form_check() {
    let counts: Vec<_> = (0..=4).map(|m| rooted_map_counts(m, Some(0)).unwrap()).collect();
    let table = map_table(Family::RootedMaps, &counts, &[]);
    let back = CensusTable::from_csv(&table.to_csv()).unwrap();
    assert_eq!(back.to_csv(), table.to_csv());
    let census = series_from_census(&back, Family::RootedMaps, Some(0), &[], Convention::RootedOgf, 5).unwrap();
    let formula = planar_maps(5).unwrap();
    let check = IdentityCheck::compare("planar maps", &census, &formula);
    assert!(check.passed, "{:?}", check.first_mismatch);
}

#[test]
fn missing_sizes_are_reported() {
    let counts = vec![rooted_map_counts(1, Some(0)).unwrap()];
    let table = map_table(Family::RootedMaps, &counts, &[]);
    assert!(series_from_census(&table, Family::RootedMaps, Some(0), &[], Convention::RootedOgf, 3).is_err());
}

#[test]
fn graph_census_round_trips_through_csv() {
    let c = labelled_graph_census(4, &GraphPredicate::ALL.with_connectivity(1), &GraphCensusOptions::default())
        .unwrap();
    assert_eq!(c.total(), 38);
    let table = CensusTable::from_csv(&c.to_table().to_csv()).unwrap();
    assert!(table.is_complete(Family::LabelledGraphs, 4));
}

#[test]
fn interchange_formats() {
    let s = Series::from_terms(&["x", "y"], "x", 3, vec![(vec![1, 2], int(3))]).unwrap();
    assert_eq!(Series::from_json(&s.to_json()).unwrap(), s);
    let g = LabelledGraph::complete_bipartite(3, 3);
    assert_eq!(LabelledGraph::parse(&g.to_graph6()).unwrap(), g);
    let torus = CombMap::new(vec![1, 2, 3, 0], vec![2, 3, 0, 1]).unwrap();
    assert_eq!(torus.genus().unwrap(), 1);
    let j = torus.to_json();
    assert_eq!(CombMap::from_json(&j).unwrap().to_json(), j);
}
