use super::{Coeff, PowerSeries, Result, SeriesError};

/// One monomial `coeff * Y_0^powers[0] * Y_1^powers[1] * ...` of a
/// right-hand side.
#[derive(Clone, Debug)]
pub struct SystemTerm<C: Coeff> {
    pub coeff: PowerSeries<C>,
    pub powers: Vec<u32>,
}

/// A polynomial fixed-point system `Y_i = Φ_i(Y)` whose coefficients are
/// power series sharing one variable layout.
#[derive(Clone, Debug)]
pub struct PolySystem<C: Coeff> {
    unknowns: Vec<String>,
    equations: Vec<Vec<SystemTerm<C>>>,
}

impl<C: Coeff> PolySystem<C> {
    pub fn new(unknowns: &[&str]) -> Self {
        PolySystem {
            unknowns: unknowns.iter().map(|s| s.to_string()).collect(),
            equations: vec![Vec::new(); unknowns.len()],
        }
    }

    pub fn unknowns(&self) -> &[String] {
        &self.unknowns
    }

    /// Adds `coeff * prod Y^powers` to the right-hand side of equation `eq`.
    pub fn term(mut self, eq: usize, coeff: PowerSeries<C>, powers: &[u32]) -> Self {
        let mut p = powers.to_vec();
        p.resize(self.unknowns.len(), 0);
        self.equations[eq].push(SystemTerm { coeff, powers: p });
        self
    }

    fn template(&self) -> Result<&PowerSeries<C>> {
        self.equations
            .iter()
            .flatten()
            .map(|t| &t.coeff)
            .next()
            .ok_or_else(|| SeriesError::Divergence("empty system".into()))
    }

    fn check_shapes(&self) -> Result<()> {
        let t = self.template()?;
        for term in self.equations.iter().flatten() {
            t.same_shape(&term.coeff)?;
        }
        Ok(())
    }

    fn monomial(&self, ys: &[PowerSeries<C>], powers: &[u32], order: u32) -> PowerSeries<C> {
        let mut acc = ys[0].one_like();
        acc.order = order;
        for (y, &e) in ys.iter().zip(powers) {
            for _ in 0..e {
                acc = acc.mul_trunc(y, order);
            }
        }
        acc
    }

    /// Evaluates every right-hand side at `ys`, truncated at `order`.
    pub fn evaluate(&self, ys: &[PowerSeries<C>], order: u32) -> Vec<PowerSeries<C>> {
        self.equations
            .iter()
            .map(|eq| {
                let mut acc = ys[0].zero_like();
                acc.order = order;
                for t in eq {
                    let m = self.monomial(ys, &t.powers, order);
                    let c = t.coeff.truncate(order);
                    for (e, v) in c.mul_trunc(&m, order).terms {
                        acc.add_term(e, v);
                    }
                }
                acc
            })
            .collect()
    }

    fn zeros(&self, order: u32) -> Result<Vec<PowerSeries<C>>> {
        let mut z = self.template()?.zero_like();
        z.order = order;
        Ok(vec![z; self.unknowns.len()])
    }

    /// Plain Picard iteration from zero. The working precision grows by
    /// one per pass, since each pass fixes one more principal degree; the
    /// iteration stops once two successive iterates agree at full order.
    pub fn solve_fixed_point(&self, order: u32) -> Result<Vec<PowerSeries<C>>> {
        self.check_shapes()?;
        let mut ys = self.zeros(0)?;
        for k in 0..order + 2 {
            let prec = (k + 1).min(order);
            let padded: Vec<_> = ys.iter().map(|y| y.with_order(prec)).collect();
            let next = self.evaluate(&padded, prec);
            let mut converged = true;
            for (i, (n, y)) in next.iter().zip(&padded).enumerate() {
                let corr = n.checked_sub(y)?;
                if let Some(v) = corr.principal_valuation() {
                    converged = false;
                    if v < k {
                        return Err(SeriesError::Divergence(format!(
                            "pass {}: correction to `{}` has valuation {} (needs ≥ {}); \
                             the system is not contractive in `{}`",
                            k,
                            self.unknowns[i],
                            v,
                            k,
                            n.principal()
                        )));
                    }
                }
            }
            if converged && prec == order {
                return Ok(next);
            }
            ys = next;
        }
        Err(SeriesError::Divergence(format!(
            "no agreement after {} passes",
            order + 2
        )))
    }

    /// Newton iteration, doubling the precision per step. Produces the same
    /// solution as [`Self::solve_fixed_point`] for contractive systems.
    pub fn solve_newton(&self, order: u32) -> Result<Vec<PowerSeries<C>>> {
        self.check_shapes()?;
        let k = self.unknowns.len();
        let mut ys = self.evaluate(&self.zeros(1)?, 1.min(order));
        let mut prec = 1.min(order);
        while prec < order {
            prec = (2 * prec).min(order);
            let y: Vec<_> = ys.iter().map(|s| s.with_order(prec)).collect();
            let phi = self.evaluate(&y, prec);
            let f: Vec<_> = y
                .iter()
                .zip(&phi)
                .map(|(a, b)| a.checked_sub(b))
                .collect::<Result<_>>()?;
            // A = I - dΦ/dY
            let mut a = vec![vec![y[0].zero_like(); k]; k];
            for (i, eq) in self.equations.iter().enumerate() {
                a[i][i] = y[0].one_like();
                for t in eq {
                    for j in 0..k {
                        if t.powers[j] == 0 {
                            continue;
                        }
                        let mut p = t.powers.clone();
                        p[j] -= 1;
                        let m = self.monomial(&y, &p, prec);
                        let factor = C::from_u32(t.powers[j]).expect("small exponent");
                        let d = t.coeff.truncate(prec).mul_trunc(&m, prec).scale(&factor);
                        a[i][j] = a[i][j].checked_sub(&d)?;
                    }
                }
            }
            let delta = solve_linear(a, f, prec)?;
            ys = y
                .iter()
                .zip(&delta)
                .map(|(s, d)| s.checked_sub(d))
                .collect::<Result<_>>()?;
        }
        let check = self.evaluate(&ys, order);
        for (i, (c, y)) in check.iter().zip(&ys).enumerate() {
            if c != &y.truncate(order) {
                return Err(SeriesError::Divergence(format!(
                    "Newton result for `{}` is not a fixed point",
                    self.unknowns[i]
                )));
            }
        }
        Ok(ys)
    }

    /// Checks `Y = Φ(Y)` exactly at the order of the given solution.
    pub fn verify(&self, ys: &[PowerSeries<C>]) -> Result<()> {
        let order = ys.iter().map(|y| y.order()).min().unwrap_or(0);
        let rhs = self.evaluate(ys, order);
        for (i, (r, y)) in rhs.iter().zip(ys).enumerate() {
            if let Some((e, a, b)) = r.first_difference(&y.truncate(order))? {
                return Err(SeriesError::Verification(format!(
                    "equation for `{}` differs at {:?}: {:?} vs {:?}",
                    self.unknowns[i], e, a, b
                )));
            }
        }
        Ok(())
    }
}

/// Gauss–Jordan elimination over truncated series; pivots must have an
/// invertible constant part.
fn solve_linear<C: Coeff>(
    mut a: Vec<Vec<PowerSeries<C>>>,
    mut b: Vec<PowerSeries<C>>,
    prec: u32,
) -> Result<Vec<PowerSeries<C>>> {
    let k = b.len();
    for col in 0..k {
        let inv = a[col][col].recip()?;
        for j in 0..k {
            a[col][j] = a[col][j].mul_trunc(&inv, prec);
        }
        b[col] = b[col].mul_trunc(&inv, prec);
        for row in 0..k {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone();
            for j in 0..k {
                let d = factor.mul_trunc(&a[col][j], prec);
                a[row][j] = a[row][j].checked_sub(&d)?;
            }
            let d = factor.mul_trunc(&b[col], prec);
            b[row] = b[row].checked_sub(&d)?;
        }
    }
    Ok(b)
}

impl<C: Coeff> PowerSeries<C> {
    /// Same terms, declared known up to `order` (which may exceed the
    /// current order: the missing terms are taken as zero).
    pub(crate) fn with_order(&self, order: u32) -> Self {
        let mut s = self.truncate(order);
        s.order = order;
        s
    }
}
