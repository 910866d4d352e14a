use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::genuschain::{build_chain, planar_maps_at};
use crate::int;

fn binomial_central(n: u64) -> f64 {
    // [x^n] (1-x)^{-1/2} = C(2n, n) / 4^n
    let mut v = 1.0f64;
    for k in 1..=n {
        v *= (2 * k - 1) as f64 / (2 * k) as f64;
    }
    v
}

#[test]
fn transfer_of_inverse_square_root() {
    let e = SingularExpansion::new(1.0f64, (-1, 0), vec![1.0]).unwrap();
    let t = transfer(&e).unwrap();
    let n = 10_000;
    let rel = (t.predict(n) - binomial_central(n)).abs() / binomial_central(n);
    assert!(rel < 0.01, "relative error {}", rel);
}

#[test]
fn transfer_of_square_root() {
    let e = SingularExpansion::new(1.0f64, (1, 0), vec![1.0]).unwrap();
    let t = transfer(&e).unwrap();
    assert_eq!(t.alpha, 0.5);
    // [x^n] sqrt(1-x) = -C(2n,n)/(4^n (2n-1))
    let n = 5000u64;
    let exact = -binomial_central(n) / (2 * n - 1) as f64;
    assert!(t.predict(n) < 0.0);
    assert!(((t.predict(n) - exact) / exact).abs() < 0.01);
}

#[test]
fn transfer_of_logarithm() {
    // [x^n] ln(1-x) = -1/n and [x^n] (1-x) ln(1-x) = 1/(n(n-1))
    let l = transfer(&SingularExpansion::new(1.0f64, (0, 1), vec![1.0]).unwrap()).unwrap();
    assert!((l.predict(1000) + 1e-3).abs() < 1e-9);
    let l1 = transfer(&SingularExpansion::new(1.0f64, (2, 1), vec![1.0]).unwrap()).unwrap();
    let exact = 1.0 / (1000.0 * 999.0);
    assert!(((l1.predict(1000) - exact) / exact).abs() < 0.01);
}

#[test]
fn transfer_rejects_excluded_types() {
    assert!(matches!(
        SingularExpansion::new(1.0f64, (2, 0), vec![1.0]),
        Err(AsymptoticsError::NotInD { .. })
    ));
    assert!(matches!(
        SingularExpansion::new(1.0f64, (0, 0), vec![1.0]),
        Err(AsymptoticsError::NotInD { .. })
    ));
    let e = SingularExpansion::new(1.0f64, (1, 2), vec![1.0]).unwrap();
    assert!(matches!(transfer(&e), Err(AsymptoticsError::Unsupported(_))));
}

#[test]
fn local_limit_examples() {
    // rho(u) = 1/(1+u): mu(u) = u/(1+u)
    let ll = local_limit(|u: f64| 1.0 / (1.0 + u), 0.5, (0.01, 10.0), 1.5, 200).unwrap();
    assert!((ll.u0 - 1.0).abs() < 1e-6);
    assert!((ll.gamma - 2.0).abs() < 1e-6);
    assert_eq!(ll.exponent, -3.0);
    let flat = local_limit(|_u: f64| 0.25, 0.5, (0.01, 10.0), 1.5, 50);
    assert!(matches!(flat, Err(AsymptoticsError::NotIncreasing)));
    let out = local_limit(|u: f64| 1.0 / (1.0 + u), 0.95, (0.01, 10.0), 1.5, 50);
    assert!(matches!(out, Err(AsymptoticsError::OutOfRange { .. })));
    let g1 = local_limit(|u: f64| 1.0 / (1.0 + u), 0.5, (0.01, 10.0), 1.5, 50).unwrap();
    let g2 = local_limit(|u: f64| 1.0 / (1.0 + u), 0.501, (0.01, 10.0), 1.5, 50).unwrap();
    assert!(g2.gamma > g1.gamma && g2.gamma - g1.gamma < 0.02);
}

#[test]
fn singular_points_at_one() {
    let pq = singular_point_pq(1.0f64).unwrap();
    assert!((pq.point - 1.0 / 12.0).abs() < 1e-10);
    assert!(pq.residual < 1e-12);
    assert!(pq.bracket[0] <= pq.point + 1e-12);
    let rs = singular_point_rs(1.0f64).unwrap();
    assert!((rs.point - 0.25).abs() < 1e-10);
    assert!((rs.y[0] - 1.0).abs() < 1e-8 && (rs.y[1] - 1.0).abs() < 1e-8);
    assert!(singular_point_pq(-1.0f64).is_err());
}

#[test]
fn scaled_h_matches_exact_chain() {
    let chain = build_chain(8).unwrap();
    let exact = chain.h.specialize("x", &int(1)).unwrap().principal_coefficients();
    let approx = h_at_one_scaled(8).unwrap();
    for (k, (e, a)) in exact.iter().zip(&approx).enumerate() {
        let e = e.to_f64().unwrap() / 12f64.powi(k as i32);
        assert!((e - a).abs() < 1e-12 * e.abs().max(1.0), "k={} {} vs {}", k, e, a);
    }
}

#[test]
fn h_is_increasing_and_critical() {
    let a = h_at_one_scaled(400).unwrap();
    assert!(a[1..].iter().all(|&v| v > 0.0));
    let crit = h_criticality(1500).unwrap();
    assert!(crit.error < 1e-8, "{:?}", crit);
    assert!(crit.tail_bound < 1e-6);
}

#[test]
fn fit_growth_on_planar_maps() {
    let m0 = planar_maps_at(&int(1), 200).unwrap();
    let seq: Vec<BigInt> = m0
        .principal_coefficients()
        .iter()
        .map(|c| c.to_integer())
        .collect();
    let fit: FitResult<f64> = fit_growth(&seq).unwrap();
    assert!((11.99..=12.01).contains(&fit.gamma_hat), "{:?}", fit);
    assert!((-2.55..=-2.45).contains(&fit.exponent_hat), "{:?}", fit);
}

#[test]
fn fit_growth_trivial_laws() {
    let pow2: Vec<BigInt> = (0..60).map(|n| BigInt::from(2).pow(n)).collect();
    let f: FitResult<f64> = fit_growth(&pow2).unwrap();
    assert!((f.gamma_hat - 2.0).abs() < 1e-9 && f.exponent_hat.abs() < 1e-6);
    let lin: Vec<BigInt> = (1..61u32).map(|n| BigInt::from(n) * BigInt::from(3).pow(n)).collect();
    let f: FitResult<f64> = fit_growth(&lin).unwrap();
    assert!((f.gamma_hat - 3.0).abs() < 1e-6 && (f.exponent_hat - 1.0).abs() < 1e-3);
    assert!(matches!(fit_growth::<f64>(&pow2[..5]), Err(AsymptoticsError::TooFewTerms { .. })));
    let mut bad = pow2.clone();
    bad[3] = BigInt::from(0);
    assert!(matches!(fit_growth::<f64>(&bad), Err(AsymptoticsError::NonPositive(3))));
}

proptest! {
    #[test]
    fn transfer_is_homogeneous(h in 0.1f64..10.0, k in 0.1f64..10.0, n in 10u64..1000) {
        let e1 = SingularExpansion::new(1.0, (3, 0), vec![h]).unwrap();
        let e2 = SingularExpansion::new(1.0, (3, 0), vec![h * k]).unwrap();
        let (t1, t2) = (transfer(&e1).unwrap(), transfer(&e2).unwrap());
        prop_assert!((t2.c / t1.c - k).abs() < 1e-9 * k);
        let half = SingularExpansion::new(0.5, (3, 0), vec![h]).unwrap();
        let th = transfer(&half).unwrap();
        let ratio = (th.ln_predict(n) - t1.ln_predict(n)) / n as f64;
        prop_assert!((ratio - 2f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn fit_recovers_synthetic_laws(g in 1.5f64..20.0, a in -3.0f64..2.0) {
        let seq: Vec<BigInt> = (1..=200)
            .map(|n| {
                let ln = (n as f64).ln() * a + n as f64 * g.ln() + 40.0;
                let top = (ln / std::f64::consts::LN_2 - 60.0).max(0.0).floor();
                let mant = (ln - top * std::f64::consts::LN_2).exp();
                BigInt::from(mant as u128) << (top as usize)
            })
            .collect();
        let f: FitResult<f64> = fit_growth(&seq).unwrap();
        prop_assert!((f.gamma_hat / g - 1.0).abs() < 0.01);
        prop_assert!((f.exponent_hat - a).abs() < 0.05);
    }

    #[test]
    fn singular_point_residuals_are_small(x in 0.2f64..5.0) {
        let pq = singular_point_pq(x).unwrap();
        prop_assert!(pq.residual < 1e-12);
        let rs = singular_point_rs(x).unwrap();
        prop_assert!(rs.residual < 1e-12);
    }
}
