//! Canonical JSON form of exact series:
//! `{"vars":[..],"principal":"u","order":N,"terms":[[[e..],"num/den"],..]}`
//! with terms in lexicographic exponent order.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{PowerSeries, Result, SeriesError};

#[derive(Serialize, Deserialize)]
struct SeriesDoc {
    vars: Vec<String>,
    principal: String,
    order: u32,
    terms: Vec<(Vec<u32>, String)>,
}

fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || SeriesError::Parse(format!("bad rational `{}`", s));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl PowerSeries<BigRational> {
    pub fn to_json(&self) -> String {
        let doc = SeriesDoc {
            vars: self.vars.clone(),
            principal: self.principal().to_string(),
            order: self.order,
            terms: self
                .terms()
                .map(|(e, c)| (e.to_vec(), format_rational(c)))
                .collect(),
        };
        serde_json::to_string(&doc).expect("series documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: SeriesDoc =
            serde_json::from_str(s).map_err(|e| SeriesError::Parse(e.to_string()))?;
        let vars: Vec<&str> = doc.vars.iter().map(|v| v.as_str()).collect();
        let terms = doc
            .terms
            .iter()
            .map(|(e, c)| Ok((e.clone(), parse_rational(c)?)))
            .collect::<Result<Vec<_>>>()?;
        for (e, _) in &terms {
            let p = vars
                .iter()
                .position(|v| *v == doc.principal)
                .ok_or_else(|| SeriesError::UnknownVariable(doc.principal.clone()))?;
            if e.len() == vars.len() && e[p] >= doc.order {
                return Err(SeriesError::Parse(format!(
                    "term {:?} lies beyond order {}",
                    e, doc.order
                )));
            }
        }
        PowerSeries::from_terms(&vars, &doc.principal, doc.order, terms)
    }
}
