use proptest::prelude::*;

use super::*;
use crate::mapkernel::Width;

fn budget() -> SearchBudget {
    SearchBudget::default()
}

#[test]
fn connectivity_examples() {
    assert!(LabelledGraph::complete(4).is_k_connected(3));
    assert!(!LabelledGraph::path(3).is_k_connected(2));
    assert!(LabelledGraph::cycle(5).is_k_connected(2));
    assert!(!LabelledGraph::cycle(5).is_k_connected(3));
    assert!(!LabelledGraph::complete(3).is_k_connected(3));
    assert!(LabelledGraph::empty(1).unwrap().is_k_connected(0));
}

#[test]
fn bowtie_has_two_blocks() {
    let g = LabelledGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
    let t = block_decomposition(&g);
    assert_eq!(t.blocks.len(), 2);
    assert_eq!(t.cut_vertices, vec![2]);
    assert!(t.is_forest(1));
    assert_eq!(block_decomposition(&LabelledGraph::complete(4)).blocks.len(), 1);
}

#[test]
fn tutte_examples() {
    let k4 = three_connected_components(&LabelledGraph::complete(4)).unwrap();
    assert_eq!(k4.len(), 1);
    assert_eq!(k4[0].kind, ComponentKind::ThreeConnected);
    let c5 = three_connected_components(&LabelledGraph::cycle(5)).unwrap();
    assert_eq!(c5.len(), 1);
    assert_eq!(c5[0].kind, ComponentKind::Polygon);
    let mut k5e = LabelledGraph::complete(5);
    k5e = LabelledGraph::from_edges(5, &k5e.edges().into_iter().filter(|&e| e != (0, 1)).collect::<Vec<_>>()).unwrap();
    let comps = three_connected_components(&k5e).unwrap();
    assert_eq!(recompose(&comps), k5e.edges());
    assert_eq!(
        three_connected_components(&LabelledGraph::path(3)),
        Err(GraphError::NotBiconnected)
    );
}

#[test]
fn theta_graph_is_a_bond_of_paths() {
    // two vertices joined by three paths of length 2
    let g = LabelledGraph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
    let comps = three_connected_components(&g).unwrap();
    let kinds: Vec<ComponentKind> = comps.iter().map(|c| c.kind).collect();
    assert_eq!(
        kinds,
        vec![ComponentKind::Bond, ComponentKind::Polygon, ComponentKind::Polygon, ComponentKind::Polygon]
    );
    assert_eq!(recompose(&comps), g.edges());
}

#[test]
fn genus_examples() {
    assert_eq!(genus(&LabelledGraph::complete(4)), Bound::Exact(0));
    assert_eq!(genus(&LabelledGraph::complete(5)), Bound::Exact(1));
    assert_eq!(genus(&LabelledGraph::complete_bipartite(3, 3)), Bound::Exact(1));
    assert_eq!(genus(&LabelledGraph::complete(6)), Bound::Exact(1));
    assert_eq!(genus(&LabelledGraph::complete(7)), Bound::Exact(1));
    assert_eq!(genus(&LabelledGraph::empty(3).unwrap()), Bound::Exact(0));
}

#[test]
fn genus_budget_gives_interval() {
    let b = genus_whole(&LabelledGraph::complete(8), SearchBudget::nodes(1000));
    match b {
        Bound::Interval { lo, hi } => assert!(lo <= 2 && 2 <= hi && lo < hi),
        Bound::Exact(_) => panic!("budget should run out"),
    }
}

#[test]
fn euler_and_nonorientable_genus() {
    let k5 = LabelledGraph::complete(5);
    assert_eq!(euler_genus_graph(&k5, budget()), Bound::Exact(1));
    assert_eq!(nonorientable_genus(&k5, budget()), Bound::Exact(1));
    let k4 = LabelledGraph::complete(4);
    assert_eq!(euler_genus_graph(&k4, budget()), Bound::Exact(0));
    assert_eq!(nonorientable_genus(&k4, budget()), Bound::Exact(1));
    let k33 = LabelledGraph::complete_bipartite(3, 3);
    assert_eq!(euler_genus_graph(&k33, budget()), Bound::Exact(1));
    assert_eq!(nonorientable_genus(&LabelledGraph::complete(6), budget()), Bound::Exact(1));
    assert_eq!(nonorientable_genus(&LabelledGraph::path(4), budget()), Bound::Exact(1));
}

#[test]
fn face_width_examples() {
    assert_eq!(
        face_width_graph(&LabelledGraph::complete(4), None, budget()),
        Bound::Exact(Width::Infinite)
    );
    let k5 = face_width_graph(&LabelledGraph::complete(5), None, budget());
    assert_eq!(k5, Bound::Exact(Width::Finite(2)));
    let k7 = face_width_graph(&LabelledGraph::complete(7), None, SearchBudget::nodes(100_000));
    assert!(matches!(k7, Bound::Interval { .. }));
}

#[test]
fn rotation_map_of_planar_k4() {
    let g = LabelledGraph::complete(4);
    let rot = vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]];
    let m = rotation_map(&g, &rot, &[]).unwrap();
    assert_eq!(m.n_faces(), 4);
    assert_eq!(m.genus().unwrap(), 0);
}

#[test]
fn chromatic_examples() {
    assert_eq!(LabelledGraph::complete(4).chromatic_number(), 4);
    assert_eq!(LabelledGraph::cycle(5).chromatic_number(), 3);
    assert_eq!(LabelledGraph::complete(5).chromatic_number(), 5);
    assert_eq!(LabelledGraph::complete_bipartite(3, 3).chromatic_number(), 2);
}

#[test]
fn graph6_round_trip_and_known_codes() {
    assert_eq!(LabelledGraph::complete(4).to_graph6(), "C~");
    assert_eq!(LabelledGraph::complete(5).to_graph6(), "D~{");
    let p = LabelledGraph::from_graph6("Bw").unwrap();
    assert_eq!(p.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    assert!(LabelledGraph::from_graph6("C").is_err());
    let j = LabelledGraph::cycle(4).to_json();
    assert_eq!(j, r#"{"n":4,"edges":[[1,2],[1,4],[2,3],[3,4]]}"#);
    assert_eq!(LabelledGraph::parse(&j).unwrap(), LabelledGraph::cycle(4));
}

#[test]
fn planarity_agrees_with_genus_up_to_six_vertices() {
    for n in 1..=6 {
        let m = n * (n - 1) / 2;
        let step = if n == 6 { 7 } else { 1 };
        for mask in (0u64..1 << m).step_by(step) {
            let g = LabelledGraph::from_edge_mask(n, mask);
            let planar = genus(&g) == Bound::Exact(0);
            assert_eq!(is_planar(&g), planar, "n={} mask={}", n, mask);
        }
    }
}

fn arb_graph() -> impl Strategy<Value = LabelledGraph> {
    (1usize..=6).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        (Just(n), 0u64..(1u64 << m)).prop_map(|(n, mask)| LabelledGraph::from_edge_mask(n, mask))
    })
}

proptest! {
    #[test]
    fn blocks_partition_edges(g in arb_graph()) {
        let t = block_decomposition(&g);
        let mut all: Vec<(usize, usize)> = t.blocks.iter().flat_map(|b| b.edges.clone()).collect();
        all.sort_unstable();
        prop_assert_eq!(all, g.edges());
        prop_assert!(t.is_forest(g.components().len()));
    }

    #[test]
    fn genus_is_additive_over_blocks(g in arb_graph()) {
        prop_assert_eq!(genus_blockwise(&g, budget()), genus_whole(&g, budget()));
    }

    #[test]
    fn euler_genus_relations(g in arb_graph()) {
        let gg = genus(&g).exact().unwrap();
        let eg = euler_genus_graph(&g, budget()).exact().unwrap();
        let ng = nonorientable_genus(&g, budget()).exact().unwrap();
        prop_assert!(eg <= 2 * gg);
        prop_assert!(eg <= ng);
        prop_assert_eq!(eg, (2 * gg).min(ng));
    }

    #[test]
    fn tutte_recomposition_is_identity(g in arb_graph()) {
        if g.is_k_connected(2) {
            let comps = three_connected_components(&g).unwrap();
            prop_assert_eq!(recompose(&comps), g.edges());
            for c in &comps {
                if c.kind == ComponentKind::ThreeConnected {
                    prop_assert!(c.vertices().len() >= 4);
                }
            }
        }
    }

    #[test]
    fn graph6_round_trip(g in arb_graph()) {
        prop_assert_eq!(LabelledGraph::from_graph6(&g.to_graph6()).unwrap(), g.clone());
        prop_assert_eq!(LabelledGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn chromatic_number_is_a_proper_minimum(g in arb_graph()) {
        let k = g.chromatic_number();
        prop_assert!(k <= g.n());
        if g.n_edges() > 0 {
            prop_assert!(k >= 2);
        }
    }
}
