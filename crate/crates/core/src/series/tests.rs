use super::*;
use crate::{int, rat, Rational, Series};
use proptest::prelude::*;

fn uni(coeffs: &[i64], order: u32) -> Series {
    Series::from_terms(
        &["u"],
        "u",
        order,
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (vec![i as u32], int(*c))),
    )
    .unwrap()
}

/// Bivariate series in (x, u) from `(x-exp, u-exp, coeff)` triples.
fn xu(terms: &[(u32, u32, i64)], order: u32) -> Series {
    Series::from_terms(
        &["x", "u"],
        "u",
        order,
        terms.iter().map(|(a, b, c)| (vec![*a, *b], int(*c))),
    )
    .unwrap()
}

#[test]
fn addition_cancels() {
    let a = uni(&[1, 1], 5);
    let b = uni(&[1, -1], 5);
    assert_eq!(&a + &b, uni(&[2], 5));
}

#[test]
fn product_and_truncation() {
    let a = uni(&[1, 1], 3);
    assert_eq!(&a * &a, uni(&[1, 2, 1], 3));
    let b = uni(&[1, 1], 2);
    assert_eq!(&b * &b, uni(&[1, 2], 2));
    // mixed orders take the minimum
    assert_eq!((&a * &b).order(), 2);
}

#[test]
fn mismatched_variables_are_rejected() {
    let a = uni(&[1, 1], 3);
    let b = xu(&[(0, 1, 1)], 3);
    assert!(matches!(
        a.checked_add(&b),
        Err(SeriesError::VariableMismatch { .. })
    ));
    let c = Series::from_terms(&["x", "u"], "x", 3, vec![]).unwrap();
    assert!(b.checked_mul(&c).is_err());
}

#[test]
fn scale_by_rational() {
    let a = uni(&[2, 4], 3);
    assert_eq!(a.scale(&rat(1, 2)), uni(&[1, 2], 3));
    assert!(a.scale(&int(0)).is_zero());
}

#[test]
fn substitute_examples() {
    // f = 1 + t, g = u + u^2
    let f = Series::from_terms(&["t"], "t", 6, vec![(vec![0], int(1)), (vec![1], int(1))]).unwrap();
    let g = uni(&[0, 1, 1], 6);
    assert_eq!(f.substitute("t", &g).unwrap(), uni(&[1, 1, 1], 6));
    // f = t^2 at order 4
    let f2 = Series::from_terms(&["t"], "t", 6, vec![(vec![2], int(1))]).unwrap();
    let g4 = uni(&[0, 1, 1], 4);
    assert_eq!(f2.substitute("t", &g4).unwrap(), uni(&[0, 0, 1, 2, 1], 4));
}

#[test]
fn substitute_rejects_constant_term_in_principal() {
    let f = uni(&[1, 1, 1], 4).rename("u", "t").unwrap();
    let g = uni(&[1, 1], 4);
    assert!(matches!(
        f.substitute("t", &g),
        Err(SeriesError::InfiniteSubstitution { .. })
    ));
}

#[test]
fn substitute_non_principal_variable() {
    // f(x,u) = x u + x^2 u^2, x := 1 + u  (polynomial in x, so allowed)
    let f = xu(&[(1, 1, 1), (2, 2, 1)], 4);
    let g = xu(&[(0, 0, 1), (0, 1, 1)], 4);
    let h = f.substitute("x", &g).unwrap();
    // (1+u)u + (1+u)^2 u^2 = u + 2u^2 + 2u^3 + O(u^4)
    assert_eq!(h, xu(&[(0, 1, 1), (0, 2, 2), (0, 3, 2)], 4));
}

#[test]
fn derive_and_integrate() {
    let c = uni(&[0, 0, 0, 1], 6);
    assert_eq!(c.derive("u").unwrap(), uni(&[0, 0, 3], 5));
    let d = uni(&[0, 0, 3], 6);
    assert_eq!(d.integrate("u").unwrap(), uni(&[0, 0, 0, 1], 7));
    assert!(matches!(
        c.derive("z"),
        Err(SeriesError::UnknownVariable(_))
    ));
}

#[test]
fn revert_examples() {
    let f = uni(&[0, 1, 1], 5);
    assert_eq!(f.revert("u").unwrap(), uni(&[0, 1, -1, 2, -5], 5));
    let id = uni(&[0, 1], 5);
    assert_eq!(id.revert("u").unwrap(), id);
    let g = uni(&[0, 1, 3, 1], 6);
    assert_eq!(g.revert("u").unwrap().revert("u").unwrap(), g);
}

#[test]
fn revert_errors() {
    assert!(matches!(
        uni(&[0, 0, 1], 5).revert("u"),
        Err(SeriesError::Valuation { found: Some(2), .. })
    ));
    assert!(matches!(
        uni(&[1, 1], 5).revert("u"),
        Err(SeriesError::Valuation { found: Some(0), .. })
    ));
    // leading coefficient x is not a unit
    let f = xu(&[(1, 1, 1), (0, 2, 1)], 5);
    assert!(matches!(f.revert("u"), Err(SeriesError::NotInvertible(_))));
}

fn system_pq(template: &Series) -> PolySystem<Rational> {
    let one = template.one_like();
    let xu_ = template.monomial_like(&[1, 1], int(1));
    let u = template.monomial_like(&[0, 1], int(1));
    PolySystem::new(&["p", "q"])
        .term(0, xu_, &[])
        .term(0, one.scale(&int(2)), &[1, 1])
        .term(0, one.clone(), &[2, 0])
        .term(1, u, &[])
        .term(1, one.scale(&int(2)), &[1, 1])
        .term(1, one, &[0, 2])
}

#[test]
fn fixed_point_of_map_system() {
    let t = Series::zero(&["x", "u"], "u", 4).unwrap();
    let sys = system_pq(&t);
    let sol = sys.solve_fixed_point(4).unwrap();
    let p = xu(
        &[(1, 1, 1), (1, 2, 2), (2, 2, 1), (3, 3, 2), (2, 3, 10), (1, 3, 6)],
        4,
    );
    let q = xu(
        &[(0, 1, 1), (1, 2, 2), (0, 2, 1), (2, 3, 6), (1, 3, 10), (0, 3, 2)],
        4,
    );
    assert_eq!(sol[0], p);
    assert_eq!(sol[1], q);
    sys.verify(&sol).unwrap();
}

#[test]
fn newton_agrees_with_picard() {
    let t = Series::zero(&["x", "u"], "u", 9).unwrap();
    let sys = system_pq(&t);
    let a = sys.solve_fixed_point(9).unwrap();
    let b = sys.solve_newton(9).unwrap();
    assert_eq!(a, b);
}

#[test]
fn symmetric_system_at_x_equal_one() {
    // r = w (1+s)^2, s = w (1+r)^2
    let t = Series::zero(&["w"], "w", 8).unwrap();
    let w = t.var_like("w").unwrap();
    let sys = PolySystem::new(&["r", "s"])
        .term(0, w.clone(), &[])
        .term(0, w.scale(&int(2)), &[0, 1])
        .term(0, w.clone(), &[0, 2])
        .term(1, w.clone(), &[])
        .term(1, w.scale(&int(2)), &[1, 0])
        .term(1, w, &[2, 0]);
    let sol = sys.solve_fixed_point(8).unwrap();
    assert_eq!(sol[0], sol[1]);
    assert_eq!(sol[0].coeff(&[1]), int(1));
    assert_eq!(sol[0].coeff(&[2]), int(2));
}

#[test]
fn non_contractive_system_diverges() {
    let t = Series::zero(&["u"], "u", 5).unwrap();
    let sys = PolySystem::new(&["y"])
        .term(0, t.one_like(), &[])
        .term(0, t.one_like(), &[1]);
    assert!(matches!(
        sys.solve_fixed_point(5),
        Err(SeriesError::Divergence(_))
    ));
}

#[test]
fn reciprocal_and_division() {
    let a = uni(&[1, -1], 6);
    assert_eq!(a.recip().unwrap(), uni(&[1, 1, 1, 1, 1, 1], 6));
    let b = uni(&[0, 1], 6);
    assert!(b.recip().is_err());
    let c = uni(&[1, 1], 6);
    assert_eq!(c.checked_div(&c).unwrap(), uni(&[1], 6));
}

#[test]
fn monomial_division() {
    let a = xu(&[(1, 2, 3), (2, 3, 1)], 6);
    let d = a.divide_by_monomial(&[1, 2]).unwrap();
    assert_eq!(d, xu(&[(0, 0, 3), (1, 1, 1)], 4));
    assert!(matches!(
        a.divide_by_monomial(&[2, 0]),
        Err(SeriesError::NegativeExponent { .. })
    ));
}

#[test]
fn exponential() {
    // exp(u) = 1 + u + u^2/2 + u^3/6
    let e = uni(&[0, 1], 4).exp().unwrap();
    let expected = Series::from_terms(
        &["u"],
        "u",
        4,
        vec![
            (vec![0], int(1)),
            (vec![1], int(1)),
            (vec![2], rat(1, 2)),
            (vec![3], rat(1, 6)),
        ],
    )
    .unwrap();
    assert_eq!(e, expected);
}

#[test]
fn specialize_removes_variable() {
    let a = xu(&[(1, 1, 1), (2, 1, 1), (0, 2, 5)], 4);
    let s = a.specialize("x", &int(1)).unwrap();
    assert_eq!(s, uni(&[0, 2, 5], 4));
    assert!(a.specialize("u", &int(1)).is_err());
}

#[test]
fn float_instantiation() {
    let a: PowerSeries<f64> =
        PowerSeries::from_terms(&["u"], "u", 4, vec![(vec![0], 1.0), (vec![1], -1.0)]).unwrap();
    let inv = a.recip().unwrap();
    assert_eq!(inv.principal_coefficients(), vec![1.0; 4]);
}

#[test]
fn json_canonical_form() {
    let a = Series::from_terms(
        &["x", "u"],
        "u",
        3,
        vec![(vec![1, 1], rat(-3, 2)), (vec![0, 0], int(1))],
    )
    .unwrap();
    let s = a.to_json();
    assert_eq!(
        s,
        r#"{"vars":["x","u"],"principal":"u","order":3,"terms":[[[0,0],"1/1"],[[1,1],"-3/2"]]}"#
    );
    assert_eq!(Series::from_json(&s).unwrap(), a);
    assert!(Series::from_json(r#"{"vars":["u"],"principal":"u","order":1,"terms":[[[4],"1/1"]]}"#).is_err());
}

fn arb_series(order: u32) -> impl Strategy<Value = Series> {
    prop::collection::vec(((0u32..3, 0u32..order), -5i64..6, 1i64..4), 0..8).prop_map(
        move |ts| {
            Series::from_terms(
                &["x", "u"],
                "u",
                order,
                ts.into_iter()
                    .map(|((a, b), n, d)| (vec![a, b], rat(n, d))),
            )
            .unwrap()
        },
    )
}

fn arb_positive_valuation(order: u32) -> impl Strategy<Value = Series> {
    prop::collection::vec((1u32..order, -4i64..5), 1..5).prop_map(move |ts| {
        Series::from_terms(
            &["x", "u"],
            "u",
            order,
            ts.into_iter().map(|(b, n)| (vec![0, b], int(n))),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_series(5), b in arb_series(5), c in arb_series(5)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn derive_inverts_integrate(a in arb_series(5)) {
        let back = a.integrate("u").unwrap().derive("u").unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn chain_rule(f in arb_series(5), g in arb_positive_valuation(5)) {
        // d/du f(x, g) = f_t(x, g) * g'
        let ft = f.rename("u", "t").unwrap();
        let lhs = ft.substitute("t", &g).unwrap().derive("u").unwrap();
        let dft = ft.derive("t").unwrap();
        let rhs = &dft.substitute("t", &g).unwrap() * &g.derive("u").unwrap();
        let o = lhs.order().min(rhs.order());
        prop_assert_eq!(lhs.truncate(o), rhs.truncate(o));
    }

    #[test]
    fn revert_round_trip(cs in prop::collection::vec(-3i64..4, 1..6)) {
        let mut coeffs = vec![0, 1];
        coeffs.extend(cs);
        let f = uni(&coeffs, 7);
        let g = f.revert("u").unwrap();
        let id = f.substitute("u", &g.rename("u", "u").unwrap()).unwrap();
        prop_assert_eq!(id, uni(&[0, 1], 7));
    }

    #[test]
    fn json_round_trip(a in arb_series(6)) {
        let s = a.to_json();
        let b = Series::from_json(&s).unwrap();
        prop_assert_eq!(b.to_json(), s);
        prop_assert_eq!(b, a);
    }
}
