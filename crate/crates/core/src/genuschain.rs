//! The generating-function chain from rooted maps to near-irreducible
//! quadrangulations, with exact verification of every link.
//!
//! Map-side series use variables `(x, u)`, near-simple series `(x, v)` and
//! near-irreducible series `(x, w)`; the principal variable is always the
//! second one. `x` marks black vertices (vertices of the map).
//!
//! Calibration: the closed form for planar maps, `pq(1-2p-2q)/(xu^2)`, marks
//! vertices minus one; [`Chain::m0`] multiplies it by `x` so that every
//! series of the chain marks all vertices. The degenerate terms are
//! recorded as [`Correction`]s.

use serde::Serialize;

use crate::census::{
    map_table, quad_counts, rooted_map_counts, series_from_census, CensusError, Convention, Family,
    QuadClass,
};
use crate::series::{PolySystem, SeriesError};
use crate::{int, rat, Rational, Series};

#[derive(Debug, thiserror::Error)]
pub enum ChainError {
    #[error("convention error in {step}: {source}")]
    Convention {
        step: &'static str,
        #[source]
        source: SeriesError,
    },
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error("order must be at least 1")]
    Order,
}

pub type Result<T> = std::result::Result<T, ChainError>;

fn at(step: &'static str) -> impl Fn(SeriesError) -> ChainError {
    move |source| ChainError::Convention { step, source }
}

/// An additive term applied to reconcile a degenerate case.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Correction {
    pub identity: String,
    pub term: String,
    pub reason: String,
}

/// Outcome of one coefficientwise identity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub order: u32,
    pub passed: bool,
    /// `exponents: lhs vs rhs` at the first mismatching coefficient.
    pub first_mismatch: Option<String>,
}

impl IdentityCheck {
    pub fn compare(name: &str, lhs: &Series, rhs: &Series) -> IdentityCheck {
        let order = lhs.order().min(rhs.order());
        let first_mismatch = match lhs.first_difference(rhs) {
            Ok(d) => d.map(|(e, a, b)| format!("{:?}: {} vs {}", e, a, b)),
            Err(e) => Some(e.to_string()),
        };
        IdentityCheck {
            name: name.to_string(),
            order,
            passed: first_mismatch.is_none(),
            first_mismatch,
        }
    }
}

/// `p`, `q` and the Jacobian `Δ = (1-2p-2q)^2 - 4pq`.
#[derive(Clone, Debug)]
pub struct PQ {
    pub p: Series,
    pub q: Series,
    pub delta: Series,
}

/// `p = xu + 2pq + p^2`, `q = u + 2pq + q^2`, solved to the given order.
pub fn build_pq(order: u32) -> Result<PQ> {
    if order == 0 {
        return Err(ChainError::Order);
    }
    let t = Series::zero(&["x", "u"], "u", order).map_err(at("build_pq"))?;
    let xu = t.monomial_like(&[1, 1], int(1));
    let u = t.monomial_like(&[0, 1], int(1));
    let two = t.constant_like(int(2));
    let one = t.one_like();
    let sys = PolySystem::new(&["p", "q"])
        .term(0, xu, &[0, 0])
        .term(0, two.clone(), &[1, 1])
        .term(0, one.clone(), &[2, 0])
        .term(1, u, &[0, 0])
        .term(1, two, &[1, 1])
        .term(1, one, &[0, 2]);
    let mut sol = sys.solve_newton(order).map_err(at("build_pq"))?;
    sys.verify(&sol).map_err(at("build_pq"))?;
    let q = sol.pop().expect("two unknowns");
    let p = sol.pop().expect("two unknowns");
    let delta = delta_of(&p, &q);
    Ok(PQ { p, q, delta })
}

fn delta_of(p: &Series, q: &Series) -> Series {
    let l = p.one_like() - p.scale(&int(2)) - q.scale(&int(2));
    &l * &l - (p * q).scale(&int(4))
}

/// Rooted planar maps from the closed form, calibrated so that `x` marks
/// vertices: `x * pq(1-2p-2q)/(xu^2) = pq(1-2p-2q)/u^2`.
pub fn planar_maps(order: u32) -> Result<Series> {
    let pq = build_pq(order + 2)?;
    let l = pq.p.one_like() - pq.p.scale(&int(2)) - pq.q.scale(&int(2));
    let num = &(&pq.p * &pq.q) * &l;
    // the uncalibrated form divides by x u^2; checking it first reports
    // a convention error when the x-division fails
    num.divide_by_monomial(&[1, 2]).map_err(at("planar_maps"))?;
    Ok(num.divide_by_monomial(&[0, 2]).map_err(at("planar_maps"))?.truncate(order))
}

/// Rooted planar maps at a fixed value of `x`, as a series in `u` alone.
pub fn planar_maps_at(x0: &Rational, order: u32) -> Result<Series> {
    let t = Series::zero(&["u"], "u", order + 2).map_err(at("planar_maps_at"))?;
    let u = t.monomial_like(&[1], int(1));
    let two = t.constant_like(int(2));
    let one = t.one_like();
    let sys = PolySystem::new(&["p", "q"])
        .term(0, u.scale(x0), &[0, 0])
        .term(0, two.clone(), &[1, 1])
        .term(0, one.clone(), &[2, 0])
        .term(1, u, &[0, 0])
        .term(1, two, &[1, 1])
        .term(1, one, &[0, 2]);
    let mut sol = sys.solve_newton(order + 2).map_err(at("planar_maps_at"))?;
    let q = sol.pop().expect("two unknowns");
    let p = sol.pop().expect("two unknowns");
    let l = p.one_like() - p.scale(&int(2)) - q.scale(&int(2));
    Ok((&(&p * &q) * &l)
        .divide_by_monomial(&[2])
        .map_err(at("planar_maps_at"))?
        .truncate(order))
}

/// The chain of substitutions at genus 0.
#[derive(Clone, Debug)]
pub struct Chain {
    pub order: u32,
    pub pq: PQ,
    /// Rooted planar maps, `x` marking vertices.
    pub m0: Series,
    /// Edge-labelled planar quadrangulations: `2u Q0' = M0 - x`.
    pub q0: Series,
    /// `V(x,u) = u (1 + (2u/x) Q0')^2`.
    pub v: Series,
    /// Near-simple planar quadrangulations in `(x, v)`, defined by
    /// `Q0(x,u) = R0(x, V(x,u))`.
    pub r0: Series,
    /// `W(x,v) = (2v R0' - xv - x^2 v)/(x^2 v)`.
    pub w: Series,
    /// `H(x,u) = W(x, V(x,u))`.
    pub h: Series,
    pub corrections: Vec<Correction>,
}

pub fn build_chain(order: u32) -> Result<Chain> {
    if order == 0 {
        return Err(ChainError::Order);
    }
    // one spare order for the divisions by v
    let o = order + 1;
    let m0 = planar_maps(o)?;
    let x = m0.monomial_like(&[1, 0], int(1));
    let m0_rooted = (&m0 - &x).divide_by_monomial(&[0, 1]).map_err(at("Q0"))?;
    let q0 = m0_rooted.scale(&rat(1, 2)).integrate("u").map_err(at("Q0"))?;
    let q0p = q0.derive("u").map_err(at("V"))?;
    let inner = q0p
        .shift(&[0, 1])
        .scale(&int(2))
        .divide_by_monomial(&[1, 0])
        .map_err(at("V"))?;
    let base = inner.one_like() + inner;
    let v = (&base * &base).shift(&[0, 1]).truncate(o);
    let vinv = v.revert("u").map_err(at("V inverse"))?;
    // 2v R0'(x, v) = (M0 - x)(x, V^{-1}(x, v))
    let two_v_r0p = (&m0 - &x)
        .substitute("u", &vinv)
        .map_err(at("R0"))?
        .rename("u", "v")
        .map_err(at("R0"))?;
    let r0 = two_v_r0p
        .divide_by_monomial(&[0, 1])
        .map_err(at("R0"))?
        .scale(&rat(1, 2))
        .integrate("v")
        .map_err(at("R0"))?;
    let xv = two_v_r0p.monomial_like(&[1, 1], int(1));
    let x2v = two_v_r0p.monomial_like(&[2, 1], int(1));
    let w = (&(&two_v_r0p - &xv) - &x2v)
        .divide_by_monomial(&[2, 1])
        .map_err(at("W"))?;
    let h = w
        .rename("v", "u")
        .map_err(at("H"))?
        .substitute("u", &v)
        .map_err(at("H"))?
        .truncate(order);
    if h.principal_valuation() != Some(1) {
        return Err(ChainError::Convention {
            step: "H",
            source: SeriesError::Valuation {
                var: "u".into(),
                found: h.principal_valuation(),
            },
        });
    }
    let corrections = vec![
        Correction {
            identity: "planar maps closed form".into(),
            term: "x * pq(1-2p-2q)/(xu^2)".into(),
            reason: "the closed form marks vertices minus one; multiplied by x".into(),
        },
        Correction {
            identity: "2uQ0' = M0".into(),
            term: "-x".into(),
            reason: "the vertex map has no quadrangulation with a face".into(),
        },
        Correction {
            identity: "Q0 = R0(V)".into(),
            term: "R0 from 2vR0'(V) = 2uQ0'".into(),
            reason: "at genus 0 the substitution holds for the rooted series".into(),
        },
    ];
    Ok(Chain {
        order,
        pq: build_pq(order)?,
        m0: m0.truncate(order),
        q0: q0.truncate(order),
        v: v.truncate(order),
        r0: r0.truncate(order),
        w: w.truncate(order),
        h,
        corrections,
    })
}

impl Chain {
    /// `H` from the direct formula `(M0 - x - (x + x^2) V) / (x^2 V)`.
    pub fn h_direct(&self) -> Result<Series> {
        let o = self.order + 1;
        let m0 = planar_maps(o)?;
        let x = m0.monomial_like(&[1, 0], int(1));
        let base = m0.divide_by_monomial(&[1, 0]).map_err(at("H direct"))?;
        let v = (&base * &base).shift(&[0, 1]).truncate(o);
        let xx = m0.monomial_like(&[1, 0], int(1)) + m0.monomial_like(&[2, 0], int(1));
        let num = (&m0 - &x) - &xx * &v;
        let den = (&v * &m0.monomial_like(&[2, 0], int(1)))
            .divide_by_monomial(&[2, 1])
            .map_err(at("H direct"))?;
        let h = num
            .divide_by_monomial(&[2, 1])
            .map_err(at("H direct"))?
            .checked_div(&den)
            .map_err(at("H direct"))?;
        Ok(h.truncate(self.order))
    }

    /// `V` from `u M0^2 / x^2`, the other expansion of its definition.
    pub fn v_direct(&self) -> Result<Series> {
        let m0 = planar_maps(self.order)?;
        let base = m0.divide_by_monomial(&[1, 0]).map_err(at("V direct"))?;
        Ok((&base * &base).shift(&[0, 1]).truncate(self.order))
    }

    /// Inverse of `H` in `u`, as a series in `(x, w)`.
    pub fn h_inverse(&self) -> Result<Series> {
        self.h
            .revert("u")
            .map_err(at("H inverse"))?
            .rename("u", "w")
            .map_err(at("H inverse"))
    }
}

/// `S_g(x,w) = Q_g(x, H^{-1}(x,w))`.
pub fn extract_sg(q_g: &Series, h: &Series) -> Result<Series> {
    let hinv = h
        .revert("u")
        .map_err(at("extract S_g"))?
        .rename("u", "w")
        .map_err(at("extract S_g"))?;
    let qw = q_g
        .rename("u", "w")
        .map_err(at("extract S_g"))?;
    let s = qw.substitute("w", &hinv).map_err(at("extract S_g"))?;
    Ok(s.truncate(q_g.order().min(h.order())))
}

/// `r = xw(1+s)^2`, `s = w(1+r)^2` and
/// `Δ~ = (1+r)(1+s)(1+r+s-3rs) / D^2` with `D = 1+3r+3s+2r^2+2s^2+rs`.
#[derive(Clone, Debug)]
pub struct RS {
    pub r: Series,
    pub s: Series,
    pub denominator: Series,
    pub delta: Series,
}

pub fn build_rs(order: u32) -> Result<RS> {
    if order == 0 {
        return Err(ChainError::Order);
    }
    let t = Series::zero(&["x", "w"], "w", order).map_err(at("build_rs"))?;
    let xw = t.monomial_like(&[1, 1], int(1));
    let w = t.monomial_like(&[0, 1], int(1));
    let sys = PolySystem::new(&["r", "s"])
        .term(0, xw.clone(), &[0, 0])
        .term(0, xw.scale(&int(2)), &[0, 1])
        .term(0, xw, &[0, 2])
        .term(1, w.clone(), &[0, 0])
        .term(1, w.scale(&int(2)), &[1, 0])
        .term(1, w, &[2, 0]);
    let mut sol = sys.solve_newton(order).map_err(at("build_rs"))?;
    sys.verify(&sol).map_err(at("build_rs"))?;
    let s = sol.pop().expect("two unknowns");
    let r = sol.pop().expect("two unknowns");
    let one = r.one_like();
    let d = &(&(&(&one + &r.scale(&int(3))) + &s.scale(&int(3))) + &(&r * &r).scale(&int(2)))
        + &(&(&s * &s).scale(&int(2)) + &(&r * &s));
    let num = &(&(&one + &r) * &(&one + &s)) * &(&(&(&one + &r) + &s) - &(&r * &s).scale(&int(3)));
    let delta = num.checked_div(&(&d * &d)).map_err(at("build_rs"))?;
    Ok(RS {
        r,
        s,
        denominator: d,
        delta,
    })
}

/// Checks that `p = (1+r)r/D` and `q = (1+s)s/D` pulled back through
/// `w = H(x,u)` reproduce `p`, `q`, and that `Δ(p,q) = Δ~(r,s)`.
pub fn verify_change_of_variables(chain: &Chain) -> Result<Vec<IdentityCheck>> {
    let rs = build_rs(chain.order)?;
    let one = rs.r.one_like();
    let dinv = rs.denominator.recip().map_err(at("change of variables"))?;
    let p_rs = &(&(&one + &rs.r) * &rs.r) * &dinv;
    let q_rs = &(&(&one + &rs.s) * &rs.s) * &dinv;
    let hw = chain.h.clone();
    let pull = |f: &Series| -> Result<Series> {
        f.rename("w", "u")
            .map_err(at("change of variables"))?
            .substitute("u", &hw)
            .map_err(at("change of variables"))
    };
    let p_back = pull(&p_rs)?;
    let q_back = pull(&q_rs)?;
    let d_back = pull(&rs.delta)?;
    Ok(vec![
        IdentityCheck::compare("p = (1+r)r/D at w = H", &chain.pq.p.truncate(chain.order), &p_back),
        IdentityCheck::compare("q = (1+s)s/D at w = H", &chain.pq.q.truncate(chain.order), &q_back),
        IdentityCheck::compare("Δ(p,q) = Δ~(r,s)", &chain.pq.delta.truncate(chain.order), &d_back),
    ])
}

/// Rooted maps of genus `g` with fewer than `order` edges, `x^vertices u^edges`.
pub fn census_rooted(g: usize, order: u32) -> Result<Series> {
    let counts: Vec<_> = (0..order as usize)
        .map(|m| rooted_map_counts(m, Some(g)))
        .collect::<std::result::Result<_, _>>()?;
    let t = map_table(Family::RootedMaps, &counts, &[]);
    Ok(series_from_census(&t, Family::RootedMaps, Some(g as u64), &[], Convention::RootedOgf, order)?)
}

/// Edge-labelled quadrangulations of genus `g`: `2u Q_g' = M_g` without its
/// constant term.
pub fn census_q(g: usize, order: u32) -> Result<Series> {
    let counts: Vec<_> = (0..order as usize)
        .map(|m| rooted_map_counts(m, Some(g)))
        .collect::<std::result::Result<_, _>>()?;
    let t = map_table(Family::RootedMaps, &counts, &[]);
    Ok(series_from_census(&t, Family::RootedMaps, Some(g as u64), &[], Convention::EdgeLabelledEgf, order)?)
}

/// Edge-labelled quadrangulations of genus `g` in one class, in `(x, w)`.
pub fn census_class(g: usize, class: QuadClass, order: u32) -> Result<Series> {
    let counts: Vec<_> = (0..order as usize)
        .map(|m| quad_counts(m, Some(g), class))
        .collect::<std::result::Result<_, _>>()?;
    let t = map_table(Family::Quadrangulations, &counts, &[]);
    let s = series_from_census(&t, Family::Quadrangulations, Some(g as u64), &[], Convention::EdgeLabelledEgf, order)?;
    s.rename("u", "w").map_err(at("census class"))
}

/// Near-simple quadrangulations of genus `g` from the census, in `(x, v)`.
pub fn census_near_simple(g: usize, order: u32) -> Result<Series> {
    census_class(g, QuadClass::NearSimple, order)?
        .rename("w", "v")
        .map_err(at("census class"))
}

/// `S_g` for the rooted identity: the census at positive genus, the
/// extraction through `H` at genus 0.
pub fn s_series(g: usize, chain: &Chain, order: u32) -> Result<Series> {
    if g == 0 {
        extract_sg(&census_q(0, order)?, &chain.h.truncate(order))
    } else {
        census_class(g, S_CLASS, order)
    }
}

/// `M_g(x,u) = 2u H'(x,u) S_g'(x, H(x,u))`, with the vertex map's `x`
/// moved to the right-hand side at genus 0.
pub fn rooted_identity_check(g: usize, order: u32) -> Result<IdentityCheck> {
    if order == 0 {
        return Ok(IdentityCheck {
            name: format!("M_{g} = 2uH' S_{g}'(H)"),
            order: 0,
            passed: true,
            first_mismatch: None,
        });
    }
    let chain = build_chain(order.max(2))?;
    let s_g = s_series(g, &chain, order)?;
    let m = census_rooted(g, order)?;
    let hp = chain.h.derive("u").map_err(at("rooted identity"))?;
    let sp = s_g
        .derive("w")
        .map_err(at("rooted identity"))?
        .rename("w", "u")
        .map_err(at("rooted identity"))?
        .substitute("u", &chain.h)
        .map_err(at("rooted identity"))?;
    let mut rhs = (&hp * &sp).shift(&[0, 1]).scale(&int(2)).truncate(order);
    if g == 0 {
        rhs = &rhs + &m.truncate(1);
    }
    Ok(IdentityCheck::compare(
        &format!("M_{g} = 2uH' S_{g}'(H)"),
        &m,
        &rhs,
    ))
}

/// JSON verification report of a chain build.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub order: u32,
    pub genus: Option<usize>,
    pub census_order: u32,
    pub calibration: String,
    pub near_irreducible_class: String,
    pub identities: Vec<IdentityCheck>,
    pub corrections: Vec<Correction>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Class of quadrangulations counted by `S_g`: near-simple, with every
/// contractible closed 4-walk bounding a face.
pub const S_CLASS: QuadClass = QuadClass::NearIrreducibleCore;

/// Builds the chain to `order` and checks every formula-side identity; with
/// a genus, the census-side identities are checked to `census_order`.
pub fn verify_chain(order: u32, genus: Option<usize>, census_order: u32) -> Result<ChainReport> {
    let chain = build_chain(order)?;
    let o = order.min(census_order);
    let mut ids = vec![
        IdentityCheck::compare("M0 closed form = rooted planar census", &chain.m0.truncate(o), &census_rooted(0, o)?),
        IdentityCheck::compare("2uQ0' = M0 - x against the census", &chain.q0.truncate(o), &census_q(0, o)?),
        IdentityCheck::compare("V two ways", &chain.v, &chain.v_direct()?),
        IdentityCheck::compare("H = W(V) two ways", &chain.h, &chain.h_direct()?),
        IdentityCheck::compare(
            "R0 = near-simple planar census",
            &chain.r0.truncate(o),
            &census_near_simple(0, o)?,
        ),
    ];
    ids.extend(verify_change_of_variables(&chain)?);
    let mut corrections = chain.corrections.clone();
    if let Some(g) = genus {
        let q_g = census_q(g, o)?;
        let h = chain.h.truncate(o);
        let s_census = census_class(g, S_CLASS, o)?;
        ids.push(IdentityCheck::compare(
            &format!("S_{g} = Q_{g}(H^-1) against the census"),
            &extract_sg(&q_g, &h)?,
            &s_census,
        ));
        if g > 0 {
            let r_g = census_near_simple(g, o)?;
            let q_back = r_g
                .rename("v", "u")
                .map_err(at("Q = R(V)"))?
                .substitute("u", &chain.v.truncate(o))
                .map_err(at("Q = R(V)"))?;
            ids.push(IdentityCheck::compare(&format!("Q_{g} = R_{g}(V)"), &q_g, &q_back));
            let r_back = s_census
                .rename("w", "v")
                .map_err(at("R = S(W)"))?
                .substitute("v", &chain.w.truncate(o))
                .map_err(at("R = S(W)"))?;
            ids.push(IdentityCheck::compare(&format!("R_{g} = S_{g}(W)"), &r_g, &r_back));
        } else {
            corrections.push(Correction {
                identity: "M0 = 2uH' S0'(H)".into(),
                term: "+x".into(),
                reason: "the vertex map has no quadrangulation with a face".into(),
            });
        }
        ids.push(rooted_identity_check(g, o)?);
    }
    Ok(ChainReport {
        order,
        genus,
        census_order: o,
        calibration: "x marks all vertices; the planar closed form is multiplied by x".into(),
        near_irreducible_class: S_CLASS.name().into(),
        identities: ids,
        corrections,
    })
}

#[cfg(test)]
mod tests;
