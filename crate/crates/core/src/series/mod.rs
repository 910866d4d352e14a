//! Truncated multivariate power series.
//!
//! A series is graded by one *principal* variable: every stored term has
//! principal exponent `< order`, and the remaining variables appear
//! polynomially in each coefficient. Coefficients are generic; the exact
//! rational instantiation is [`crate::Series`], the floating point one
//! [`crate::FloatSeries`].

mod json;
mod system;

pub use system::{PolySystem, SystemTerm};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, Num};
use thiserror::Error;

/// Maximum number of variables a series may carry.
pub const MAX_VARS: usize = 4;

/// Exponent vector, indexed like [`PowerSeries::vars`]; unused slots are zero.
pub type Exps = [u32; MAX_VARS];

/// Requirements on series coefficients.
pub trait Coeff:
    Clone + PartialEq + fmt::Debug + fmt::Display + Num + Neg<Output = Self> + FromPrimitive + Send + Sync
{
}

impl<T> Coeff for T where
    T: Clone + PartialEq + fmt::Debug + fmt::Display + Num + Neg<Output = T> + FromPrimitive + Send + Sync
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable sets differ: {left:?} vs {right:?} (principal {lp} vs {rp})")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
        lp: String,
        rp: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("at most {MAX_VARS} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("substituting a series with non-zero constant term for `{var}` needs infinitely many terms")]
    InfiniteSubstitution { var: String },
    #[error("`{var}` must be the principal variable for this operation")]
    NotPrincipal { var: String },
    #[error("expected valuation 1 in `{var}`, found {found:?}")]
    Valuation { var: String, found: Option<u32> },
    #[error("coefficient is not invertible: {0}")]
    NotInvertible(String),
    #[error("fixed-point iteration does not converge: {0}")]
    Divergence(String),
    #[error("division by {monomial} leaves a negative exponent in term {term}")]
    NegativeExponent { monomial: String, term: String },
    #[error("identity check failed: {0}")]
    Verification(String),
    #[error("malformed series: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;

/// A multivariate power series truncated in its principal variable.
#[derive(Clone, PartialEq)]
pub struct PowerSeries<C> {
    vars: Vec<String>,
    principal: usize,
    order: u32,
    terms: BTreeMap<Exps, C>,
}

fn check_vars(vars: &[&str]) -> Result<()> {
    if vars.len() > MAX_VARS {
        return Err(SeriesError::TooManyVariables(vars.len()));
    }
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return Err(SeriesError::DuplicateVariable(v.to_string()));
        }
    }
    Ok(())
}

fn exps_add(a: &Exps, b: &Exps) -> Exps {
    let mut r = [0; MAX_VARS];
    for i in 0..MAX_VARS {
        r[i] = a[i] + b[i];
    }
    r
}

impl<C: Coeff> PowerSeries<C> {
    /// The zero series over `vars`, graded by `principal`, known below `order`.
    pub fn zero(vars: &[&str], principal: &str, order: u32) -> Result<Self> {
        check_vars(vars)?;
        let principal = vars
            .iter()
            .position(|v| *v == principal)
            .ok_or_else(|| SeriesError::UnknownVariable(principal.to_string()))?;
        Ok(PowerSeries {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            principal,
            order,
            terms: BTreeMap::new(),
        })
    }

    /// Builds a series from `(exponents, coefficient)` pairs; exponent
    /// vectors must have one entry per variable. Terms at or above the
    /// order are dropped and repeated exponents are summed.
    pub fn from_terms<I>(vars: &[&str], principal: &str, order: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut s = Self::zero(vars, principal, order)?;
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(SeriesError::Parse(format!(
                    "exponent vector {:?} does not match {} variables",
                    e,
                    vars.len()
                )));
            }
            let mut k = [0; MAX_VARS];
            k[..e.len()].copy_from_slice(&e);
            s.add_term(k, c);
        }
        Ok(s)
    }

    /// A series with the same variables and order as `self`, and no terms.
    pub fn zero_like(&self) -> Self {
        PowerSeries {
            vars: self.vars.clone(),
            principal: self.principal,
            order: self.order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_like(&self, c: C) -> Self {
        let mut s = self.zero_like();
        s.add_term([0; MAX_VARS], c);
        s
    }

    pub fn one_like(&self) -> Self {
        self.constant_like(C::one())
    }

    /// The variable `name` as a series shaped like `self`.
    pub fn var_like(&self, name: &str) -> Result<Self> {
        let i = self.index_of(name)?;
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        let mut s = self.zero_like();
        s.add_term(e, C::one());
        Ok(s)
    }

    /// `c * prod vars^exps` shaped like `self`.
    pub fn monomial_like(&self, exps: &[u32], c: C) -> Self {
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        let mut s = self.zero_like();
        s.add_term(e, c);
        s
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn principal(&self) -> &str {
        &self.vars[self.principal]
    }

    pub fn principal_index(&self) -> usize {
        self.principal
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| SeriesError::UnknownVariable(name.to_string()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Non-zero terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> + '_ {
        let n = self.vars.len();
        self.terms.iter().map(move |(e, c)| (&e[..n], c))
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of `principal^k` as a series in the remaining variables
    /// (the principal slot is kept, with exponent zero).
    pub fn principal_coeff(&self, k: u32) -> Self {
        let mut s = self.zero_like();
        s.order = self.order.max(1);
        for (e, c) in &self.terms {
            if e[self.principal] == k {
                let mut e2 = *e;
                e2[self.principal] = 0;
                s.terms.insert(e2, c.clone());
            }
        }
        s
    }

    /// Smallest exponent of `var` among the stored terms.
    pub fn valuation(&self, var: &str) -> Result<Option<u32>> {
        let i = self.index_of(var)?;
        Ok(self.terms.keys().map(|e| e[i]).min())
    }

    pub fn principal_valuation(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[self.principal]).min()
    }

    fn add_term(&mut self, e: Exps, c: C) {
        if e[self.principal] >= self.order || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let v = old.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = v;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Lowers the order to `order` (never raises it).
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        let p = self.principal;
        PowerSeries {
            vars: self.vars.clone(),
            principal: self.principal,
            order,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[p] < order)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars || self.principal != other.principal {
            return Err(SeriesError::VariableMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
                lp: self.principal().to_string(),
                rp: other.principal().to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut r = self.truncate(other.order);
        for (e, c) in &other.terms {
            r.add_term(*e, c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut r = self.truncate(other.order);
        for (e, c) in &other.terms {
            r.add_term(*e, -c.clone());
        }
        Ok(r)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(self.mul_trunc(other, self.order.min(other.order)))
    }

    /// Product truncated at `order` (assumed ≤ both operand orders).
    pub(crate) fn mul_trunc(&self, other: &Self, order: u32) -> Self {
        let p = self.principal;
        let mut r = self.zero_like();
        r.order = order;
        // Bucket the right operand by principal degree so the inner loop
        // stops as soon as the degree bound is hit.
        let mut buckets: Vec<Vec<(&Exps, &C)>> = vec![Vec::new(); order as usize];
        for (e, c) in &other.terms {
            if e[p] < order {
                buckets[e[p] as usize].push((e, c));
            }
        }
        for (ea, ca) in &self.terms {
            if ea[p] >= order {
                continue;
            }
            for bucket in &buckets[..(order - ea[p]) as usize] {
                for (eb, cb) in bucket {
                    r.add_term(exps_add(ea, eb), ca.clone() * (*cb).clone());
                }
            }
        }
        r
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut r = self.zero_like();
        if c.is_zero() {
            return r;
        }
        for (e, a) in &self.terms {
            r.add_term(*e, a.clone() * c.clone());
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_trunc(&base, acc.order.min(base.order));
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_trunc(&base, base.order);
            }
        }
        acc
    }

    /// Multiplies by the monomial `prod vars^exps`. The order grows by the
    /// principal exponent, since the shifted series is known that much further.
    pub fn shift(&self, exps: &[u32]) -> Self {
        let mut m = [0; MAX_VARS];
        m[..exps.len()].copy_from_slice(exps);
        let mut r = self.zero_like();
        r.order = self.order + m[self.principal];
        for (e, c) in &self.terms {
            r.add_term(exps_add(e, &m), c.clone());
        }
        r
    }

    /// Exact division by the monomial `prod vars^exps`.
    pub fn divide_by_monomial(&self, exps: &[u32]) -> Result<Self> {
        let mut m = [0; MAX_VARS];
        m[..exps.len()].copy_from_slice(exps);
        let p = self.principal;
        let mut r = self.zero_like();
        r.order = self.order.saturating_sub(m[p]);
        for (e, c) in &self.terms {
            let mut e2 = *e;
            for i in 0..MAX_VARS {
                if e[i] < m[i] {
                    return Err(SeriesError::NegativeExponent {
                        monomial: self.fmt_monomial(&m),
                        term: self.fmt_monomial(e),
                    });
                }
                e2[i] = e[i] - m[i];
            }
            r.add_term(e2, c.clone());
        }
        Ok(r)
    }

    /// Multiplicative inverse. The principal-degree-zero part must be a
    /// non-zero constant.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.principal_coeff(0);
        let unit = match (c0.terms.len(), c0.terms.get(&[0; MAX_VARS])) {
            (1, Some(c)) => c.clone(),
            _ => {
                return Err(SeriesError::NotInvertible(format!(
                    "constant part {} is not a non-zero constant",
                    c0
                )))
            }
        };
        let inv0 = C::one() / unit;
        // Newton: g <- g (2 - f g), doubling the precision each round.
        let mut g = self.constant_like(inv0);
        let mut prec = 1u32;
        let two = C::one() + C::one();
        while prec < self.order {
            prec = (2 * prec).min(self.order);
            let f = self.truncate(prec);
            let gt = g.truncate(prec);
            let fg = f.mul_trunc(&gt, prec);
            let corr = fg.constant_like(two.clone()).checked_sub(&fg)?;
            g = gt.mul_trunc(&corr, prec);
        }
        g.order = self.order;
        Ok(g.truncate(self.order))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let inv = other.recip()?;
        Ok(self.mul_trunc(&inv, self.order.min(other.order)))
    }

    /// Formal partial derivative. Differentiating in the principal variable
    /// lowers the order by one.
    pub fn derive(&self, var: &str) -> Result<Self> {
        let i = self.index_of(var)?;
        let mut r = self.zero_like();
        if i == self.principal {
            r.order = self.order.saturating_sub(1);
        }
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[i] -= 1;
            let k = C::from_u32(e[i]).expect("exponent fits the coefficient type");
            r.add_term(e2, c.clone() * k);
        }
        Ok(r)
    }

    /// Formal antiderivative with zero constant of integration. In the
    /// principal variable the result is known one order further.
    pub fn integrate(&self, var: &str) -> Result<Self> {
        let i = self.index_of(var)?;
        let mut r = self.zero_like();
        if i == self.principal {
            r.order = self.order + 1;
        }
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[i] += 1;
            let k = C::from_u32(e2[i]).expect("exponent fits the coefficient type");
            r.add_term(e2, c.clone() / k);
        }
        Ok(r)
    }

    /// Sets a non-principal variable to a constant; the variable is removed.
    pub fn specialize(&self, var: &str, value: &C) -> Result<Self> {
        let i = self.index_of(var)?;
        if i == self.principal {
            return Err(SeriesError::NotPrincipal {
                var: format!("{} (cannot specialize the principal variable)", var),
            });
        }
        let vars: Vec<&str> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.as_str())
            .collect();
        let mut r = Self::zero(&vars, self.principal(), self.order)?;
        for (e, c) in &self.terms {
            let mut e2 = [0; MAX_VARS];
            let mut k = 0;
            for (j, x) in e.iter().enumerate().take(self.vars.len()) {
                if j != i {
                    e2[k] = *x;
                    k += 1;
                }
            }
            let mut v = c.clone();
            for _ in 0..e[i] {
                v = v * value.clone();
            }
            r.add_term(e2, v);
        }
        Ok(r)
    }

    /// Renames a variable.
    pub fn rename(&self, from: &str, to: &str) -> Result<Self> {
        let i = self.index_of(from)?;
        if from != to && self.vars.iter().any(|v| v == to) {
            return Err(SeriesError::DuplicateVariable(to.to_string()));
        }
        let mut r = self.clone();
        r.vars[i] = to.to_string();
        Ok(r)
    }

    /// Re-expresses the series over a (super)set of variable names.
    pub fn embed(&self, vars: &[&str], principal: &str) -> Result<Self> {
        if principal != self.principal() {
            return Err(SeriesError::NotPrincipal {
                var: principal.to_string(),
            });
        }
        let mut r = Self::zero(vars, principal, self.order)?;
        let map = self.index_map(&r)?;
        for (e, c) in &self.terms {
            r.add_term(remap(e, &map), c.clone());
        }
        Ok(r)
    }

    fn index_map(&self, target: &Self) -> Result<Vec<usize>> {
        self.vars.iter().map(|v| target.index_of(v)).collect()
    }

    /// Splits the series by powers of `var` (kept with exponent zero).
    fn split_by(&self, i: usize) -> BTreeMap<u32, Vec<(Exps, C)>> {
        let mut out: BTreeMap<u32, Vec<(Exps, C)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[i] = 0;
            out.entry(e[i]).or_default().push((e2, c.clone()));
        }
        out
    }

    /// Replaces `var` by the series `g`. The result lives in `g`'s variables.
    ///
    /// When `var` is principal, `g` must have positive principal valuation.
    /// Otherwise `self` is polynomial in `var` and the two principal variables
    /// must coincide.
    pub fn substitute(&self, var: &str, g: &Self) -> Result<Self> {
        let vi = self.index_of(var)?;
        let order = if vi == self.principal {
            match g.principal_valuation() {
                None => g.order,
                Some(0) => {
                    return Err(SeriesError::InfiniteSubstitution {
                        var: var.to_string(),
                    })
                }
                Some(v) => g.order.min(self.order.saturating_mul(v)),
            }
        } else {
            if self.principal() != g.principal() {
                return Err(SeriesError::VariableMismatch {
                    left: self.vars.clone(),
                    right: g.vars.clone(),
                    lp: self.principal().to_string(),
                    rp: g.principal().to_string(),
                });
            }
            self.order.min(g.order)
        };
        // Position of every remaining variable of `self` inside `g`.
        let mut map = vec![usize::MAX; self.vars.len()];
        for (j, v) in self.vars.iter().enumerate() {
            if j != vi {
                map[j] = g.index_of(v).map_err(|_| SeriesError::VariableMismatch {
                    left: self.vars.clone(),
                    right: g.vars.clone(),
                    lp: self.principal().to_string(),
                    rp: g.principal().to_string(),
                })?;
            }
        }
        let gt = g.truncate(order);
        let mut result = gt.zero_like();
        result.order = order;
        let mut power = gt.one_like();
        power.order = order;
        let mut current = 0u32;
        for (k, part) in self.split_by(vi) {
            while current < k {
                power = power.mul_trunc(&gt, order);
                current += 1;
            }
            if power.is_zero() {
                break;
            }
            let mut a = gt.zero_like();
            a.order = order;
            for (e, c) in part {
                let mut e2 = [0; MAX_VARS];
                for (j, x) in e.iter().enumerate().take(self.vars.len()) {
                    if j != vi {
                        e2[map[j]] += *x;
                    }
                }
                a.add_term(e2, c);
            }
            let prod = a.mul_trunc(&power, order);
            for (e, c) in prod.terms {
                result.add_term(e, c);
            }
        }
        Ok(result)
    }

    /// Compositional inverse in the principal variable `var`: returns `g`
    /// with `self(g) = var` to the truncation order.
    pub fn revert(&self, var: &str) -> Result<Self> {
        let i = self.index_of(var)?;
        if i != self.principal {
            return Err(SeriesError::NotPrincipal {
                var: var.to_string(),
            });
        }
        let val = self.principal_valuation();
        if val != Some(1) {
            return Err(SeriesError::Valuation {
                var: var.to_string(),
                found: val,
            });
        }
        let lead = self.principal_coeff(1);
        let lc = match (lead.terms.len(), lead.terms.get(&[0; MAX_VARS])) {
            (1, Some(c)) => c.clone(),
            _ => {
                return Err(SeriesError::NotInvertible(format!(
                    "leading coefficient {} of `{}`",
                    lead, var
                )))
            }
        };
        let t = self.var_like(var)?;
        let linear = t.scale(&lc);
        let higher = self.checked_sub(&linear)?;
        let inv_lc = C::one() / lc;
        // g = (t - higher(g)) / lc gains at least one order per pass.
        let mut g = t.scale(&inv_lc);
        for _ in 0..self.order {
            let hg = higher.substitute(var, &g)?;
            let next = t.checked_sub(&hg)?.scale(&inv_lc);
            if next == g {
                break;
            }
            g = next;
        }
        let check = self.substitute(var, &g)?;
        let o = check.order.min(self.order);
        if check.truncate(o) != t.truncate(o) {
            return Err(SeriesError::Verification(format!(
                "f(revert(f)) = {} is not the identity",
                check
            )));
        }
        Ok(g)
    }

    /// `exp(self)`; the principal constant part must vanish.
    pub fn exp(&self) -> Result<Self> {
        if self.principal_valuation() == Some(0) {
            return Err(SeriesError::NotInvertible(
                "exp needs a series without principal constant term".into(),
            ));
        }
        let var = self.principal().to_string();
        let df = self.derive(&var)?;
        // g = 1 + ∫ f' g, one extra correct order per pass.
        let mut g = self.one_like();
        for _ in 0..self.order {
            let next = self
                .one_like()
                .checked_add(&df.mul_trunc(&g, df.order).integrate(&var)?)?
                .truncate(self.order);
            if next == g {
                break;
            }
            g = next;
        }
        Ok(g)
    }

    /// Converts coefficients to another type.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> PowerSeries<D> {
        let mut r = PowerSeries {
            vars: self.vars.clone(),
            principal: self.principal,
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            r.add_term(*e, f(c));
        }
        r
    }

    /// Evaluates the truncated polynomial at the given point.
    pub fn eval(&self, point: &[C]) -> C {
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (j, x) in point.iter().enumerate() {
                for _ in 0..e[j] {
                    v = v * x.clone();
                }
            }
            acc = acc + v;
        }
        acc
    }

    /// Coefficients of a univariate series, indexed by principal degree.
    pub fn principal_coefficients(&self) -> Vec<C> {
        let mut out = vec![C::zero(); self.order as usize];
        for (e, c) in &self.terms {
            if e.iter().enumerate().all(|(j, x)| j == self.principal || *x == 0) {
                out[e[self.principal] as usize] = c.clone();
            }
        }
        out
    }

    /// First term (in lexicographic order) where `self` and `other`
    /// differ below their common order.
    pub fn first_difference(&self, other: &Self) -> Result<Option<(Vec<u32>, C, C)>> {
        self.same_shape(other)?;
        let order = self.order.min(other.order);
        let a = self.truncate(order);
        let b = other.truncate(order);
        let n = self.vars.len();
        let keys: std::collections::BTreeSet<&Exps> = a.terms.keys().chain(b.terms.keys()).collect();
        for k in keys {
            let ca = a.terms.get(k).cloned().unwrap_or_else(C::zero);
            let cb = b.terms.get(k).cloned().unwrap_or_else(C::zero);
            if ca != cb {
                return Ok(Some((k[..n].to_vec(), ca, cb)));
            }
        }
        Ok(None)
    }

    fn fmt_monomial(&self, e: &Exps) -> String {
        let parts: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| e[*i] > 0)
            .map(|(i, v)| {
                if e[i] == 1 {
                    v.clone()
                } else {
                    format!("{}^{}", v, e[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn remap(e: &Exps, map: &[usize]) -> Exps {
    let mut r = [0; MAX_VARS];
    for (j, t) in map.iter().enumerate() {
        r[*t] += e[j];
    }
    r
}

impl<C: Coeff> fmt::Display for PowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.principal;
        let mut keys: Vec<&Exps> = self.terms.keys().collect();
        keys.sort_by_key(|e| (e[p], **e));
        for (n, e) in keys.into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let c = &self.terms[e];
            let mono = self.fmt_monomial(e);
            if mono == "1" {
                write!(f, "{}", c)?;
            } else if *c == C::one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", c, mono)?;
            }
        }
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.principal(), self.order)
    }
}

impl<C: Coeff> fmt::Debug for PowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries[{}]({})", self.vars.join(","), self)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a, C: Coeff> $tr<&'a PowerSeries<C>> for &'a PowerSeries<C> {
            type Output = PowerSeries<C>;
            fn $m(self, rhs: &'a PowerSeries<C>) -> PowerSeries<C> {
                self.$checked(rhs).expect("series operands must share variables")
            }
        }
        impl<C: Coeff> $tr<PowerSeries<C>> for PowerSeries<C> {
            type Output = PowerSeries<C>;
            fn $m(self, rhs: PowerSeries<C>) -> PowerSeries<C> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, C: Coeff> $tr<&'a PowerSeries<C>> for PowerSeries<C> {
            type Output = PowerSeries<C>;
            fn $m(self, rhs: &'a PowerSeries<C>) -> PowerSeries<C> {
                (&self).$m(rhs)
            }
        }
        impl<'a, C: Coeff> $tr<PowerSeries<C>> for &'a PowerSeries<C> {
            type Output = PowerSeries<C>;
            fn $m(self, rhs: PowerSeries<C>) -> PowerSeries<C> {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<C: Coeff> Neg for PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn neg(self) -> PowerSeries<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coeff> Neg for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn neg(self) -> PowerSeries<C> {
        self.scale(&-C::one())
    }
}

#[cfg(test)]
mod tests;
