use super::*;

fn loop_map() -> CombMap {
    CombMap::new(perm_from_cycles(2, &[&[1, 2]]), perm_from_cycles(2, &[&[1, 2]])).unwrap()
}

fn link() -> CombMap {
    CombMap::new(vec![0, 1], vec![1, 0]).unwrap()
}

fn torus() -> CombMap {
    CombMap::new(
        perm_from_cycles(4, &[&[1, 3, 2, 4]]),
        perm_from_cycles(4, &[&[1, 2], &[3, 4]]),
    )
    .unwrap()
}

#[test]
fn construction_checks() {
    assert!(matches!(
        CombMap::new(vec![0, 1], vec![0, 1]),
        Err(MapError::FixedPoint(0))
    ));
    assert!(matches!(
        CombMap::new(vec![0, 1, 2, 3], vec![1, 0, 3, 2]),
        Err(MapError::Disconnected)
    ));
    assert!(CombMap::new(vec![0, 0], vec![1, 0]).is_err());
    assert!(matches!(
        CombMap::new_signed(vec![1, 0], vec![1, 0], vec![1, -1]),
        Err(MapError::SignMismatch(0, 1))
    ));
}

#[test]
fn face_counts() {
    assert_eq!(loop_map().n_faces(), 2);
    assert_eq!(link().n_faces(), 1);
    assert_eq!(torus().n_faces(), 1);
    assert_eq!(CombMap::vertex_map().n_faces(), 1);
    assert_eq!(CombMap::vertex_map().n_vertices(), 1);
}

#[test]
fn euler_genus_examples() {
    assert_eq!(loop_map().euler_genus(), 0);
    assert_eq!(torus().euler_genus(), 2);
    assert_eq!(torus().genus().unwrap(), 1);
    let proj = CombMap::new_signed(vec![1, 0], vec![1, 0], vec![-1, -1]).unwrap();
    assert_eq!(proj.n_faces(), 1);
    assert_eq!(proj.euler_genus(), 1);
    assert!(!proj.is_orientable());
    assert!(proj.genus().is_err());
}

#[test]
fn switching_a_link_is_orientable() {
    let m = CombMap::new_signed(vec![0, 1], vec![1, 0], vec![-1, -1]).unwrap();
    assert!(m.is_orientable());
    assert_eq!(m.euler_genus(), 0);
    let n = m.normalize_signs();
    assert!(!n.has_negative_edges());
    assert_eq!(n.n_faces(), 1);
}

#[test]
fn quadrangulation_of_vertex_map() {
    let q = quadrangulation_of(&CombMap::vertex_map()).unwrap();
    assert_eq!(q.n_edges(), 1);
    assert_eq!(q.n_vertices(), 2);
    assert_eq!(primal_of_quadrangulation(&q).unwrap(), CombMap::vertex_map());
}

#[test]
fn quadrangulation_of_link() {
    let q = quadrangulation_of(&link()).unwrap();
    assert_eq!(q.n_vertices(), 3);
    assert_eq!(q.n_edges(), 2);
    let f = q.faces();
    assert_eq!(f.count, 1);
    assert_eq!(f.faces[0].len(), 4);
    let black = black_darts(&q).unwrap();
    let vof = q.vertex_of();
    let mut bv: Vec<usize> = (0..4).filter(|&d| black[d]).map(|d| vof[d]).collect();
    bv.dedup();
    assert_eq!(bv.len(), 2);
    // a path b-w-b: its only face is a 4-walk, not a 2-cycle
    assert!(is_simple(&q));
    assert!(cycles_of_length(&q, 2).is_empty());
    assert_eq!(primal_of_quadrangulation(&q).unwrap(), link());
}

#[test]
fn quadrangulation_of_torus() {
    let q = quadrangulation_of(&torus()).unwrap();
    assert_eq!((q.n_vertices(), q.n_edges(), q.n_faces()), (2, 4, 2));
    assert_eq!(q.euler_genus(), 2);
    assert!(q.faces().faces.iter().all(|f| f.len() == 4));
    assert_eq!(primal_of_quadrangulation(&q).unwrap(), torus());
}

#[test]
fn contractibility_examples() {
    let t = torus();
    assert!(!is_contractible(&t, &[0]).unwrap());
    assert!(!is_contractible(&t, &[2]).unwrap());
    let l = loop_map();
    assert!(is_contractible(&l, &[0]).unwrap());
    assert!(is_contractible(&t, &[0, 1]).is_err());
}

#[test]
fn cut_torus_along_loop() {
    let cut = cut_along_cycle(&torus(), &[0], false).unwrap();
    assert_eq!(cut.kind, CutKind::Handle);
    assert_eq!(cut.pieces.len(), 1);
    let p = &cut.pieces[0].map;
    assert_eq!(p.euler_genus(), 0);
    assert_eq!(p.n_vertices(), 2);
    assert_eq!(p.n_edges(), 3);
}

#[test]
fn cut_planar_loop() {
    let cut = cut_along_cycle(&loop_map(), &[0], false).unwrap();
    assert_eq!(cut.kind, CutKind::Separating);
    assert_eq!(cut.pieces.len(), 2);
    for p in &cut.pieces {
        assert_eq!(p.map.euler_genus(), 0);
        assert_eq!(p.boundary.len(), 1);
    }
}

#[test]
fn cut_projective_loop() {
    let proj = CombMap::new_signed(vec![1, 0], vec![1, 0], vec![-1, -1]).unwrap();
    let cut = cut_along_cycle(&proj, &[0], false).unwrap();
    assert_eq!(cut.kind, CutKind::Crosscap);
    assert_eq!(cut.pieces.len(), 1);
    assert_eq!(cut.pieces[0].map.euler_genus(), 0);
}

#[test]
fn widths_of_torus() {
    assert_eq!(edge_width(&torus()), Width::Finite(1));
    let q = quadrangulation_of(&torus()).unwrap();
    assert_eq!(edge_width(&q), Width::Finite(2));
    assert_eq!(face_width(&torus()).unwrap(), Width::Finite(1));
    assert_eq!(edge_width(&loop_map()), Width::Infinite);
    assert_eq!(face_width(&loop_map()).unwrap(), Width::Infinite);
    assert!(Width::Finite(1000) < Width::Infinite);
}

#[test]
fn special_vertices_close_boundaries_with_quadrangles() {
    let q = quadrangulation_of(&torus()).unwrap();
    let cyc = cycles_of_length(&q, 2);
    let nc = cyc
        .iter()
        .find(|c| !is_contractible(&q, c).unwrap())
        .expect("torus quadrangulation has a non-contractible 2-cycle");
    let cut = cut_along_cycle(&q, nc, true).unwrap();
    assert_eq!(cut.kind, CutKind::Handle);
    let p = &cut.pieces[0];
    assert_eq!(p.special.len(), 2);
    assert!(p.map.faces().faces.iter().all(|f| f.len() == 4));
    assert_eq!(p.map.euler_genus(), 0);
}

#[test]
fn json_round_trip_and_canonical_form() {
    let t = torus().with_root(2).unwrap();
    let s = t.to_json();
    let back = CombMap::from_json(&s).unwrap();
    assert_eq!(back, t.canonical());
    assert_eq!(back.to_json(), s);
    let proj = CombMap::new_signed(vec![1, 0], vec![1, 0], vec![-1, -1]).unwrap();
    let s = proj.to_json();
    assert_eq!(s, r#"{"n_darts":2,"sigma":[2,1],"alpha":[2,1],"signs":{"1":-1}}"#);
    assert_eq!(CombMap::from_json(&s).unwrap().euler_genus(), 1);
    assert!(CombMap::from_json(r#"{"n_darts":2,"sigma":[1,2],"alpha":[1,2]}"#).is_err());
}

#[test]
fn gem_code_is_switch_invariant() {
    let m = CombMap::new_signed(
        perm_from_cycles(4, &[&[1, 3], &[2, 4]]),
        perm_from_cycles(4, &[&[1, 2], &[3, 4]]),
        vec![1, 1, -1, -1],
    )
    .unwrap()
    .with_root(0)
    .unwrap();
    let s = m.switch_at(1);
    assert_ne!(m.signs(), s.signs());
    // switching the root vertex moves the root flag to the other side
    let s0 = m.switch_at(0).switch_at(0);
    assert_eq!(m.gem_code(), s0.gem_code());
    assert_eq!(m.gem_code(), s.gem_code());
    assert_eq!(m.n_faces(), s.n_faces());
}

#[test]
fn near_simple_core_of_planar_map() {
    // quadrangulation of the loop map: two nested digons around the root
    let q = quadrangulation_of(&loop_map().with_root(0).unwrap()).unwrap();
    let r = near_simple_core(&q).unwrap();
    assert!(is_near_simple(&r));
    assert_eq!(near_simple_core(&r).unwrap(), r);
}
