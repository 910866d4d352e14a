use proptest::prelude::*;

use super::*;

fn poly(s: &Series, k: u32) -> Vec<(u32, Rational)> {
    s.terms()
        .filter(|(e, _)| e[1] == k)
        .map(|(e, c)| (e[0], c.clone()))
        .collect()
}

fn at_one(s: &Series) -> Vec<Rational> {
    s.specialize("x", &int(1)).unwrap().principal_coefficients()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&n| int(n)).collect()
}

#[test]
fn pq_low_order_terms() {
    let pq = build_pq(3).unwrap();
    assert_eq!(poly(&pq.p, 1), vec![(1, int(1))]);
    assert_eq!(poly(&pq.p, 2), vec![(1, int(2)), (2, int(1))]);
    assert_eq!(poly(&pq.q, 1), vec![(0, int(1))]);
    assert_eq!(poly(&pq.q, 2), vec![(0, int(1)), (1, int(2))]);
    assert_eq!(pq.delta.coeff(&[0, 0]), int(1));
    assert!(matches!(build_pq(0), Err(ChainError::Order)));
}

#[test]
fn planar_maps_closed_form() {
    let m0 = planar_maps(7).unwrap();
    assert_eq!(at_one(&m0), ints(&[1, 2, 9, 54, 378, 2916, 24057]));
    // vertices minus one: 1 + (1 + x)u
    let shifted = m0.divide_by_monomial(&[1, 0]).unwrap();
    assert_eq!(poly(&shifted, 0), vec![(0, int(1))]);
    assert_eq!(poly(&shifted, 1), vec![(0, int(1)), (1, int(1))]);
}

#[test]
fn planar_maps_at_one_is_univariate() {
    let m = planar_maps_at(&int(1), 7).unwrap();
    assert_eq!(m.principal_coefficients(), ints(&[1, 2, 9, 54, 378, 2916, 24057]));
    let two = planar_maps_at(&int(2), 5).unwrap();
    let full = planar_maps(5).unwrap().specialize("x", &int(2)).unwrap();
    assert_eq!(two, full);
}

#[test]
fn chain_series_agree_two_ways() {
    let chain = build_chain(7).unwrap();
    assert_eq!(chain.v, chain.v_direct().unwrap());
    assert_eq!(chain.h, chain.h_direct().unwrap());
    assert_eq!(chain.h.principal_valuation(), Some(1));
    assert_eq!(poly(&chain.h, 1), vec![(0, int(1))]);
    assert_eq!(at_one(&chain.h), ints(&[0, 1, 6, 44, 358, 3108, 28220]));
}

#[test]
fn near_simple_planar_series_matches_census() {
    let chain = build_chain(6).unwrap();
    assert_eq!(chain.r0, census_near_simple(0, 6).unwrap());
}

#[test]
fn change_of_variables_to_order_twelve() {
    let chain = build_chain(12).unwrap();
    for check in verify_change_of_variables(&chain).unwrap() {
        assert!(check.passed, "{:?}", check);
        assert_eq!(check.order, 12);
    }
}

#[test]
fn rs_symmetry_and_constant_terms() {
    let rs = build_rs(8).unwrap();
    assert_eq!(
        rs.r.specialize("x", &int(1)).unwrap(),
        rs.s.specialize("x", &int(1)).unwrap()
    );
    assert_eq!(rs.delta.coeff(&[0, 0]), int(1));
}

#[test]
fn extraction_of_zero_is_zero() {
    let chain = build_chain(5).unwrap();
    let z = chain.h.zero_like();
    assert!(extract_sg(&z, &chain.h).unwrap().is_zero());
}

#[test]
fn torus_extraction_matches_census() {
    let chain = build_chain(5).unwrap();
    let s1 = extract_sg(&census_q(1, 5).unwrap(), &chain.h).unwrap();
    assert_eq!(s1, census_class(1, S_CLASS, 5).unwrap());
    // one rooted core with two faces: the one-vertex torus map's image
    assert_eq!(s1.coeff(&[1, 2]), rat(1, 4));
}

#[test]
fn planar_extraction_agrees_only_in_degree_one() {
    // the substitutions are stated for positive genus; at genus 0 the
    // inversion through H keeps the one-face terms and nothing more
    let chain = build_chain(4).unwrap();
    let s0 = extract_sg(&census_q(0, 4).unwrap(), &chain.h).unwrap();
    let census = census_class(0, S_CLASS, 4).unwrap();
    assert_eq!(s0.truncate(2), census.truncate(2));
    assert_eq!(s0.first_difference(&census).unwrap().unwrap().0, vec![1, 2]);
}

#[test]
fn rooted_identity_holds() {
    assert!(rooted_identity_check(0, 5).unwrap().passed);
    assert!(rooted_identity_check(1, 5).unwrap().passed);
    assert!(rooted_identity_check(1, 0).unwrap().passed);
}

#[test]
fn report_lists_every_identity() {
    let r = verify_chain(6, Some(1), 5).unwrap();
    assert!(r.passed(), "{}", r.to_json());
    assert_eq!(r.census_order, 5);
    assert!(r.identities.iter().any(|c| c.name == "R_1 = S_1(W)"));
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(json["near_irreducible_class"], "near-irreducible-core");
    let planar = verify_chain(6, Some(0), 5).unwrap();
    let failed: Vec<&str> = planar
        .identities
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    assert_eq!(failed, vec!["S_0 = Q_0(H^-1) against the census"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn solved_systems_resubstitute(order in 1u32..10) {
        let pq = build_pq(order).unwrap();
        let x = pq.p.var_like("x").unwrap();
        let u = pq.p.var_like("u").unwrap();
        let two_pq = (&pq.p * &pq.q).scale(&int(2));
        prop_assert_eq!(&pq.p, &(&(&(&x * &u) + &two_pq) + &(&pq.p * &pq.p)));
        prop_assert_eq!(&pq.q, &(&(&u + &two_pq) + &(&pq.q * &pq.q)));
        let rs = build_rs(order).unwrap();
        let x = rs.r.var_like("x").unwrap();
        let w = rs.r.var_like("w").unwrap();
        let one = rs.r.one_like();
        let s1 = &one + &rs.s;
        let r1 = &one + &rs.r;
        prop_assert_eq!(&rs.r, &(&(&x * &w) * &(&s1 * &s1)));
        prop_assert_eq!(&rs.s, &(&w * &(&r1 * &r1)));
    }

    #[test]
    fn chain_is_consistent_at_every_order(order in 2u32..9) {
        let chain = build_chain(order).unwrap();
        prop_assert_eq!(&chain.h, &chain.h_direct().unwrap());
        prop_assert!(verify_change_of_variables(&chain).unwrap().iter().all(|c| c.passed));
    }
}
