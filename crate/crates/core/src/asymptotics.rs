//! Singularity analysis in floating point: coefficient transfer, the local
//! limit calculator, singular points of the quadrangulation systems and
//! growth fitting of exact sequences.

use num_bigint::{BigInt, Sign};
use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::series::SeriesError;
use crate::FloatSeries;

#[derive(Debug, thiserror::Error)]
pub enum AsymptoticsError {
    #[error("type ({a},{b}) is not in D: (2k, 0) is excluded")]
    NotInD { a: i32, b: u32 },
    #[error("unsupported expansion: {0}")]
    Unsupported(String),
    #[error("mu(u) is not strictly increasing on the sampled range")]
    NotIncreasing,
    #[error("mu = {mu} lies outside ({lo}, {hi})")]
    OutOfRange { mu: f64, lo: f64, hi: f64 },
    #[error("no root in bracket: {0}")]
    NoRoot(String),
    #[error("need at least {need} terms, got {got}")]
    TooFewTerms { got: usize, need: usize },
    #[error("entry {0} is not positive")]
    NonPositive(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Result<T> = std::result::Result<T, AsymptoticsError>;

fn c<T: Float + FromPrimitive>(x: f64) -> T {
    T::from_f64(x).expect("representable constant")
}

/// `h(X, L)` around `rho` with `X = sqrt(1 - x/rho)`, `L = ln(1 - x/rho)`;
/// `coeffs[0]` is the coefficient of the dominating monomial `X^a L^b`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularExpansion<T> {
    pub rho: T,
    pub a: i32,
    pub b: u32,
    pub coeffs: Vec<T>,
}

impl<T: Float + FromPrimitive> SingularExpansion<T> {
    pub fn new(rho: T, (a, b): (i32, u32), coeffs: Vec<T>) -> Result<Self> {
        if b == 0 && a % 2 == 0 {
            return Err(AsymptoticsError::NotInD { a, b });
        }
        if coeffs.first().is_none_or(|c| c.is_zero()) {
            return Err(AsymptoticsError::Unsupported("zero dominating coefficient".into()));
        }
        Ok(SingularExpansion { rho, a, b, coeffs })
    }

    /// `a/2`: the order of `X^a` and of `X^a L`.
    pub fn order(&self) -> T {
        c::<T>(self.a as f64) / c(2.0)
    }
}

/// `f_n ~ c rho^-n n^(-alpha-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Transfer<T> {
    pub c: T,
    pub rho: T,
    pub alpha: T,
}

impl<T: Float + FromPrimitive> Transfer<T> {
    pub fn predict(&self, n: u64) -> T {
        self.ln_predict(n).exp() * self.c.signum()
    }

    /// `ln |f_n|` of the prediction, for sizes where `f_n` overflows.
    pub fn ln_predict(&self, n: u64) -> T {
        let n = c::<T>(n as f64);
        self.c.abs().ln() - n * self.rho.ln() - (self.alpha + T::one()) * n.ln()
    }
}

/// Gamma transfer for `X^a` (`c = h/Gamma(-a/2)`) and logarithmic transfer
/// for `X^{2k} L` (`c = h (-1)^{k+1} k!`), `k >= 0`.
pub fn transfer<T: Float + FromPrimitive>(e: &SingularExpansion<T>) -> Result<Transfer<T>> {
    let h = e.coeffs[0];
    let alpha = e.order();
    let cst = match e.b {
        0 => {
            if e.a % 2 == 0 && e.a >= 0 {
                return Err(AsymptoticsError::NotInD { a: e.a, b: e.b });
            }
            h / c(gamma(-alpha.to_f64().expect("finite order")))
        }
        1 if e.a >= 0 && e.a % 2 == 0 => {
            let k = e.a / 2;
            let fact: f64 = (1..=k).map(f64::from).product();
            let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
            h * c(sign * fact)
        }
        _ => {
            return Err(AsymptoticsError::Unsupported(format!(
                "transfer of X^{} L^{} is not a pure power law",
                e.a, e.b
            )))
        }
    };
    Ok(Transfer {
        c: cst,
        rho: e.rho,
        alpha,
    })
}

/// Local limit constants at edge density `mu`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalLimit<T> {
    pub u0: T,
    pub mu: T,
    pub gamma: T,
    pub exponent: T,
}

/// `mu(u) = -u rho'(u) / rho(u)` with a central difference.
pub fn mu_of<T: Float + FromPrimitive>(rho: &impl Fn(T) -> T, u: T) -> T {
    let h = c::<T>(1e-6) * u.max(T::one());
    let d = (rho(u + h) - rho(u - h)) / (h + h);
    -u * d / rho(u)
}

/// Solves `mu(u0) = mu` on `range` by bisection after checking that `mu` is
/// strictly increasing on `samples` grid points; returns
/// `gamma(mu) = 1/rho(u0)` and the exponent `-alpha - 3/2`.
pub fn local_limit<T: Float + FromPrimitive>(
    rho: impl Fn(T) -> T,
    mu: T,
    range: (T, T),
    alpha: T,
    samples: usize,
) -> Result<LocalLimit<T>> {
    let (lo, hi) = range;
    let n = samples.max(2);
    let grid: Vec<T> = (0..=n)
        .map(|i| lo + (hi - lo) * c(i as f64) / c(n as f64))
        .collect();
    let mus: Vec<T> = grid.iter().map(|&u| mu_of(&rho, u)).collect();
    if mus.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(AsymptoticsError::NotIncreasing);
    }
    let (mlo, mhi) = (mus[0], mus[n]);
    if !(mu > mlo && mu < mhi) {
        return Err(AsymptoticsError::OutOfRange {
            mu: mu.to_f64().unwrap_or(f64::NAN),
            lo: mlo.to_f64().unwrap_or(f64::NAN),
            hi: mhi.to_f64().unwrap_or(f64::NAN),
        });
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..200 {
        let m = (a + b) / c(2.0);
        if mu_of(&rho, m) < mu {
            a = m;
        } else {
            b = m;
        }
        if b - a <= T::epsilon() * b.abs() {
            break;
        }
    }
    let u0 = (a + b) / c(2.0);
    Ok(LocalLimit {
        u0,
        mu,
        gamma: rho(u0).recip(),
        exponent: -alpha - c(1.5),
    })
}

/// A fold of a two-equation system `y = F(t, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingularPoint<T> {
    pub x: T,
    /// `u0` for the `(p, q)` system, `w0` for `(r, s)`.
    pub point: T,
    pub y: [T; 2],
    /// Last bracket `[good, bad]` of the continuation from `t = 0`.
    pub bracket: [T; 2],
    /// Largest absolute residual of the three defining equations.
    pub residual: T,
}

struct FoldSystem<T> {
    /// Residuals of the two equations and the singular condition.
    f: Box<dyn Fn(T, [T; 2]) -> [T; 3]>,
    /// Rows: equations; columns: `y0, y1, t`.
    jac: Box<dyn Fn(T, [T; 2]) -> [[T; 3]; 3]>,
}

fn det3<T: Float>(m: &[[T; 3]; 3]) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Cramer's rule for the 3x3 Newton steps.
fn solve3<T: Float>(m: &[[T; 3]; 3], r: [T; 3]) -> Option<[T; 3]> {
    let d = det3(m);
    if d.abs() < T::min_positive_value() {
        return None;
    }
    let mut out = [T::zero(); 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut mk = *m;
        for i in 0..3 {
            mk[i][k] = r[i];
        }
        *o = det3(&mk) / d;
    }
    Some(out)
}

impl<T: Float + FromPrimitive> FoldSystem<T> {
    /// Newton in `y` at fixed `t`; `Some` only on convergence with a positive
    /// Jacobian determinant (the branch through the origin).
    fn branch(&self, t: T, start: [T; 2]) -> Option<[T; 2]> {
        let mut y = start;
        for _ in 0..100 {
            let f = (self.f)(t, y);
            let j = (self.jac)(t, y);
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det.abs() < T::min_positive_value() {
                return None;
            }
            let dy0 = (f[0] * j[1][1] - f[1] * j[0][1]) / det;
            let dy1 = (j[0][0] * f[1] - j[1][0] * f[0]) / det;
            y = [y[0] - dy0, y[1] - dy1];
            if !(y[0].is_finite() && y[1].is_finite()) {
                return None;
            }
            if dy0.abs().max(dy1.abs()) < c(1e-15) {
                let j = (self.jac)(t, y);
                // Jacobian of y - F(t, y) is positive on the origin branch
                let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
                return (det > T::zero()).then_some(y);
            }
        }
        None
    }

    fn fold(&self, x: T) -> Result<SingularPoint<T>> {
        // continuation from the origin with step control: a step is
        // accepted when Newton converges close to the previous point
        let mut good = (T::zero(), [T::zero(); 2]);
        let mut step = c::<T>(1e-3);
        let mut bad = None;
        for _ in 0..100_000 {
            if step <= c::<T>(1e-15) * good.0.max(T::min_positive_value()) {
                break;
            }
            if good.0 > c(1e6) {
                return Err(AsymptoticsError::NoRoot("branch never ends".into()));
            }
            let t = good.0 + step;
            let scale = T::one() + good.1[0].abs().max(good.1[1].abs());
            match self.branch(t, good.1) {
                Some(y) if (y[0] - good.1[0]).abs().max((y[1] - good.1[1]).abs()) <= c::<T>(0.25) * scale => {
                    good = (t, y);
                    step = step + step;
                }
                _ => {
                    bad = Some(t);
                    step = step / c(2.0);
                }
            }
        }
        let bad = bad.ok_or_else(|| AsymptoticsError::NoRoot("branch never ends".into()))?;
        let mut z = [good.1[0], good.1[1], good.0];
        for _ in 0..50 {
            let f = (self.f)(z[2], [z[0], z[1]]);
            let j = (self.jac)(z[2], [z[0], z[1]]);
            let Some(d) = solve3(&j, f) else { break };
            for i in 0..3 {
                z[i] = z[i] - d[i];
            }
            if d.iter().all(|v| v.abs() < c(1e-17)) {
                break;
            }
        }
        let f = (self.f)(z[2], [z[0], z[1]]);
        let residual = f.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        if !(residual < c(1e-12)) || z[2] <= T::zero() {
            return Err(AsymptoticsError::NoRoot(format!(
                "Newton on the fold left residual {:e}",
                residual.to_f64().unwrap_or(f64::NAN)
            )));
        }
        Ok(SingularPoint {
            x,
            point: z[2],
            y: [z[0], z[1]],
            bracket: [good.0, bad],
            residual,
        })
    }
}

/// Smallest positive `u` where the branch of `p = xu + 2pq + p^2`,
/// `q = u + 2pq + q^2` through the origin meets `(1-2p-2q)^2 - 4pq = 0`.
pub fn singular_point_pq<T: Float + FromPrimitive + 'static>(x0: T) -> Result<SingularPoint<T>> {
    if !(x0 > T::zero()) {
        return Err(AsymptoticsError::NoRoot("x0 must be positive".into()));
    }
    let two: T = c(2.0);
    let one = T::one();
    let sys = FoldSystem {
        f: Box::new(move |u, [p, q]| {
            let l = one - two * p - two * q;
            [
                x0 * u + two * p * q + p * p - p,
                u + two * p * q + q * q - q,
                l * l - c::<T>(4.0) * p * q,
            ]
        }),
        jac: Box::new(move |_, [p, q]| {
            let l = one - two * p - two * q;
            [
                [two * q + two * p - one, two * p, x0],
                [two * q, two * p + two * q - one, one],
                [-c::<T>(4.0) * l - c::<T>(4.0) * q, -c::<T>(4.0) * l - c::<T>(4.0) * p, T::zero()],
            ]
        }),
    };
    sys.fold(x0)
}

/// Smallest positive `w` where the branch of `r = xw(1+s)^2`,
/// `s = w(1+r)^2` meets `1 + r + s - 3rs = 0`.
pub fn singular_point_rs<T: Float + FromPrimitive + 'static>(x0: T) -> Result<SingularPoint<T>> {
    if !(x0 > T::zero()) {
        return Err(AsymptoticsError::NoRoot("x0 must be positive".into()));
    }
    let two: T = c(2.0);
    let three: T = c(3.0);
    let one = T::one();
    let sys = FoldSystem {
        f: Box::new(move |w, [r, s]| {
            [
                x0 * w * (one + s) * (one + s) - r,
                w * (one + r) * (one + r) - s,
                one + r + s - three * r * s,
            ]
        }),
        jac: Box::new(move |w, [r, s]| {
            [
                [-one, two * x0 * w * (one + s), x0 * (one + s) * (one + s)],
                [two * w * (one + r), -one, (one + r) * (one + r)],
                [one - three * s, one - three * r, T::zero()],
            ]
        }),
    };
    sys.fold(x0)
}

/// Coefficients of `H(1, u)` scaled by `12^-n`, from
/// `p = q = t = (1 - sqrt(1 - 12u))/6` at `x = 1`.
pub fn h_at_one_scaled(n_terms: u32) -> Result<Vec<f64>> {
    // z = 12u; t = (1 - sqrt(1 - z))/6 and M0 = 144 t^2 (1 - 4t)/z^2
    let order = n_terms + 3;
    let mut sqrt = Vec::with_capacity(order as usize);
    let mut a = 1.0f64;
    for k in 0..order {
        sqrt.push(a);
        let k = k as f64;
        a *= (k - 0.5) / (k + 1.0);
    }
    let terms = sqrt
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, v)| (vec![k as u32], -v / 6.0));
    let t = FloatSeries::from_terms(&["z"], "z", order, terms)?;
    let one = t.one_like();
    let m0 = (&(&t * &t) * &(&one - &t.scale(&4.0)))
        .scale(&144.0)
        .divide_by_monomial(&[2])?;
    let m0 = m0.truncate(n_terms + 1);
    let num = (&m0 - &m0.one_like()).divide_by_monomial(&[1])?;
    let h = num.checked_div(&(&m0 * &m0).truncate(n_terms))?.scale(&12.0);
    let h = &h - &h.constant_like(2.0);
    let mut out = h.principal_coefficients();
    out.resize(n_terms as usize, 0.0);
    Ok(out)
}

/// `H(1, 1/12)` from a partial sum and a tail fitted to
/// `n^-5/2 (C + C1/n + C2/n^2)`, the shape forced by the order-3/2 singularity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Criticality {
    pub terms: u32,
    pub partial_sum: f64,
    pub tail_estimate: f64,
    /// Size of the last fitted correction, as an estimate of the model error.
    pub tail_bound: f64,
    pub value: f64,
    pub target: f64,
    pub error: f64,
}

/// `sum_{n > N} n^-s` by Euler-Maclaurin.
fn zeta_tail(s: f64, n: f64) -> f64 {
    n.powf(1.0 - s) / (s - 1.0) - n.powf(-s) / 2.0 + s * n.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0
}

pub fn h_criticality(n_terms: u32) -> Result<Criticality> {
    if n_terms < 64 {
        return Err(AsymptoticsError::TooFewTerms {
            got: n_terms as usize,
            need: 64,
        });
    }
    let a = h_at_one_scaled(n_terms)?;
    let last = n_terms as usize - 1;
    // a_k k^{5/2} = C + C1/k + C2/k^2 through three sample points
    let ks = [last, last - last / 8, last - last / 4];
    let rows = ks.map(|k| {
        let kf = k as f64;
        [1.0, 1.0 / kf, 1.0 / (kf * kf)]
    });
    let rhs = ks.map(|k| a[k] * (k as f64).powf(2.5));
    let fit = solve3(&rows, rhs).ok_or_else(|| AsymptoticsError::NoRoot("singular tail fit".into()))?;
    let n = last as f64;
    let parts = [
        fit[0] * zeta_tail(2.5, n),
        fit[1] * zeta_tail(3.5, n),
        fit[2] * zeta_tail(4.5, n),
    ];
    let tail: f64 = parts.iter().sum();
    let partial: f64 = a.iter().sum();
    let target = singular_point_rs(1.0f64)?.point;
    let value = partial + tail;
    Ok(Criticality {
        terms: n_terms,
        partial_sum: partial,
        tail_estimate: tail,
        tail_bound: parts[2].abs() + (fit[2] / (n * n)).abs() * parts[0].abs(),
        value,
        target,
        error: (value - target).abs(),
    })
}

/// `ln n` for a positive big integer.
pub fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitResult<T> {
    pub gamma_hat: T,
    pub exponent_hat: T,
    pub c_hat: T,
    /// `ln f_n - ln(c n^exponent gamma^n)` on the last ten terms.
    pub residuals: Vec<T>,
    /// Rows `(n, ratio, Richardson-1, Richardson-2)` for the last terms.
    pub ratio_table: Vec<[T; 4]>,
    /// Rows `(n, local exponent, Richardson-2)` for the last terms.
    pub exponent_table: Vec<[T; 3]>,
}

/// Richardson extrapolation of order `k` in `1/n` ending at index `n`.
fn richardson<T: Float + FromPrimitive>(s: &[T], n: usize, k: usize) -> T {
    let mut acc = T::zero();
    let fact = |m: usize| (1..=m).map(|i| i as f64).product::<f64>();
    for j in 0..=k {
        let idx = n - k + j;
        let sign = if (k - j).is_multiple_of(2) { 1.0 } else { -1.0 };
        let w = sign * (idx as f64).powi(k as i32) / (fact(j) * fact(k - j));
        acc = acc + c::<T>(w) * s[idx];
    }
    acc
}

/// Fits `f_n ~ c n^exponent gamma^n` by the ratio method with Richardson
/// extrapolation.
pub fn fit_growth<T: Float + FromPrimitive>(seq: &[BigInt]) -> Result<FitResult<T>> {
    const NEED: usize = 20;
    if seq.len() < NEED {
        return Err(AsymptoticsError::TooFewTerms {
            got: seq.len(),
            need: NEED,
        });
    }
    if let Some(i) = seq.iter().position(|v| v.sign() != Sign::Plus) {
        return Err(AsymptoticsError::NonPositive(i));
    }
    let ln: Vec<f64> = seq.iter().map(ln_big).collect();
    let last = seq.len() - 1;
    // ratios r_n = f_n / f_{n-1}, indexed by n (r_0 unused)
    let mut ratio = vec![T::zero(); seq.len()];
    for n in 1..=last {
        ratio[n] = c((ln[n] - ln[n - 1]).exp());
    }
    let gamma_hat = richardson(&ratio, last, 2);
    let lg = gamma_hat.to_f64().expect("finite").ln();
    let mut local = vec![T::zero(); seq.len()];
    for n in 2..=last {
        let nf = n as f64;
        local[n] = c((ln[n] - ln[n - 1] - lg) / (nf.ln() - (nf - 1.0).ln()));
    }
    let exponent_hat = richardson(&local, last, 2);
    let ef = exponent_hat.to_f64().expect("finite");
    let model = |n: usize| (n as f64).ln() * ef + n as f64 * lg;
    let c_ln = ln[last] - model(last);
    let residuals = (last - 9..=last).map(|n| c(ln[n] - model(n) - c_ln)).collect();
    let ratio_table = (last - 4..=last)
        .map(|n| {
            [
                c(n as f64),
                ratio[n],
                richardson(&ratio, n, 1),
                richardson(&ratio, n, 2),
            ]
        })
        .collect();
    let exponent_table = (last - 4..=last)
        .map(|n| [c(n as f64), local[n], richardson(&local, n, 2)])
        .collect();
    Ok(FitResult {
        gamma_hat,
        exponent_hat,
        c_hat: c(c_ln.exp()),
        residuals,
        ratio_table,
        exponent_table,
    })
}

#[cfg(test)]
mod tests;
