//! Graph-side generating-function identities checked against the labelled
//! graph census, and exact statistics of small uniform random graphs.
//!
//! Graph series use variables `(x, y)`, `x` marking labelled vertices
//! (exponential) and `y` edges. Subscripts are the exact genus.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::census::{classify, labelled_graph_census, CensusError, GraphCensusOptions, GraphKey, GraphPredicate};
use crate::genuschain::IdentityCheck;
use crate::graphkernel::{
    block_decomposition, face_width_graph, genus, genus_blockwise, genus_whole, is_planar, Bound, LabelledGraph,
    SearchBudget,
};
use crate::mapkernel::Width;
use crate::series::SeriesError;
use crate::{int, rat, Rational, Series};

/// Largest `n` for which genus-resolved series are built.
pub const GENUS_VERTEX_BOUND: usize = 6;

/// Largest pole-free vertex count of the network census.
pub const NETWORK_VERTEX_BOUND: usize = 5;

#[derive(Debug, thiserror::Error)]
pub enum StructureError {
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("{what} needs n <= {bound}, got {n}")]
    Range { what: &'static str, n: usize, bound: usize },
}

pub type Result<T> = std::result::Result<T, StructureError>;

/// Census-built graph series. Genus-0 series reach `x^n_max`; genus-1
/// series reach `x^genus_n_max`; `d` reaches `x^network_n_max`.
#[derive(Clone, Debug)]
pub struct GraphSeriesSet {
    pub n_max: usize,
    pub genus_n_max: usize,
    pub network_n_max: usize,
    /// All graphs, indexed by genus.
    pub g: [Series; 2],
    /// Connected graphs.
    pub c: [Series; 2],
    /// Blocks: connected, one block, at least two vertices.
    pub b: [Series; 2],
    /// 3-connected graphs.
    pub t: [Series; 2],
    /// Vertex-pointed connected planar graphs `x C0'(x, y)`.
    pub f: Series,
    /// Planar networks: two unlabelled poles, a possible pole edge, and
    /// 2-connected once the pole edge is added.
    pub d: Series,
}

fn graph_series(order: u32, terms: Vec<(Vec<u32>, Rational)>) -> Result<Series> {
    Ok(Series::from_terms(&["x", "y"], "x", order, terms)?)
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n as u64).product::<u64>().into())
}

fn key_counts(n: usize, with_genus: bool) -> Result<BTreeMap<GraphKey, u64>> {
    let (pred, opts) = if with_genus {
        (GraphPredicate::ALL, GraphCensusOptions { genus: true, ..Default::default() })
    } else {
        (GraphPredicate::PLANAR, GraphCensusOptions::default())
    };
    Ok(labelled_graph_census(n, &pred, &opts)?.counts)
}

/// Network counts on `n` labelled internal vertices, keyed by edges.
pub fn network_counts(n: usize) -> Result<BTreeMap<usize, u64>> {
    if n > NETWORK_VERTEX_BOUND {
        return Err(StructureError::Range { what: "network census", n, bound: NETWORK_VERTEX_BOUND });
    }
    if n == 0 {
        return Ok(BTreeMap::from([(1, 1)]));
    }
    let v = n + 2;
    let bits = v * (v - 1) / 2;
    // bit 0 of the edge mask is the pole pair (0, 1)
    let counts = (0u64..1 << bits)
        .into_par_iter()
        .filter_map(|mask| {
            let g = LabelledGraph::from_edge_mask(v, mask | 1);
            (g.is_k_connected(2) && is_planar(&g)).then(|| mask.count_ones() as usize)
        })
        .fold(BTreeMap::new, |mut acc, e| {
            *acc.entry(e).or_insert(0u64) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        });
    Ok(counts)
}

impl GraphSeriesSet {
    pub fn build(n_max: usize) -> Result<Self> {
        let bound = crate::census::FULL_VERTEX_BOUND;
        if n_max > bound {
            return Err(StructureError::Range { what: "graph series", n: n_max, bound });
        }
        let genus_n_max = n_max.min(GENUS_VERTEX_BOUND);
        let network_n_max = n_max.saturating_sub(1).min(NETWORK_VERTEX_BOUND);
        // [genus][G, C, B, T]
        let mut terms: [[Vec<(Vec<u32>, Rational)>; 4]; 2] = Default::default();
        terms[0][0].push((vec![0, 0], int(1)));
        for n in 1..=n_max {
            let with_genus = n <= genus_n_max;
            let w = factorial(n);
            for (k, c) in key_counts(n, with_genus)? {
                let g = k.genus.unwrap_or(0);
                if g > 1 {
                    continue;
                }
                let coeff = int(c as i64) / &w;
                let e = vec![n as u32, k.edges as u32];
                let slots = &mut terms[g];
                slots[0].push((e.clone(), coeff.clone()));
                if k.connectivity >= 1 {
                    slots[1].push((e.clone(), coeff.clone()));
                    if n >= 2 && k.blocks == 1 {
                        slots[2].push((e.clone(), coeff.clone()));
                    }
                }
                if k.connectivity >= 3 {
                    slots[3].push((e, coeff));
                }
            }
        }
        let orders = [n_max as u32 + 1, genus_n_max as u32 + 1];
        let mut built: Vec<[Series; 4]> = Vec::new();
        for (genus, slots) in terms.into_iter().enumerate() {
            let order = orders[genus];
            let [g, c, b, t] = slots;
            built.push([
                graph_series(order, g)?,
                graph_series(order, c)?,
                graph_series(order, b)?,
                graph_series(order, t)?,
            ]);
        }
        let [g1, c1, b1, t1] = built.pop().expect("two genera");
        let [g0, c0, b0, t0] = built.pop().expect("two genera");
        let f = c0.derive("x")?.shift(&[1, 0]);
        let mut d_terms = Vec::new();
        for n in 0..=network_n_max {
            let w = factorial(n);
            for (e, c) in network_counts(n)? {
                d_terms.push((vec![n as u32, e as u32], int(c as i64) / &w));
            }
        }
        let d = graph_series(network_n_max as u32 + 1, d_terms)?;
        Ok(GraphSeriesSet {
            n_max,
            genus_n_max,
            network_n_max,
            g: [g0, g1],
            c: [c0, c1],
            b: [b0, b1],
            t: [t0, t1],
            f,
            d,
        })
    }
}

/// A batch of identity checks.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub n_max: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// `G0 = exp(C0)` and `G1 = C1 G0`. Two non-planar components need ten
/// vertices, so the second identity is exact over the census range.
pub fn exp_identity_checks(s: &GraphSeriesSet) -> Result<Vec<IdentityCheck>> {
    let planar = IdentityCheck::compare("G_0 = exp(C_0)", &s.g[0], &s.c[0].exp()?);
    let g0 = s.g[0].truncate(s.genus_n_max as u32 + 1);
    let torus = IdentityCheck::compare("G_1 = C_1 G_0", &s.g[1], &s.c[1].checked_mul(&g0)?);
    Ok(vec![planar, torus])
}

/// `F = x exp(B0'(F, y))`, its derivative form
/// `F' = (F/x) / (1 - F B0''(F, y))`, and the network relation
/// `(1+y) dB0/dy = x^2/2 (1 + D)`.
pub fn pointing_block_checks(s: &GraphSeriesSet) -> Result<Vec<IdentityCheck>> {
    let b1 = s.b[0].derive("x")?;
    let b2 = b1.derive("x")?;
    let rhs = b1.substitute("x", &s.f)?.exp()?.shift(&[1, 0]);
    let pointing = IdentityCheck::compare("F = x exp(B_0'(F, y))", &s.f, &rhs);

    let mut checks = vec![pointing];
    // B0'' is known only from two vertices on
    if s.n_max >= 2 {
        let f_over_x = s.f.divide_by_monomial(&[1, 0])?;
        let denom = s.f.one_like().checked_sub(&s.f.checked_mul(&b2.substitute("x", &s.f)?)?)?;
        let rhs = f_over_x.checked_mul(&denom.recip()?)?;
        let lhs = s.f.derive("x")?;
        checks.push(IdentityCheck::compare("F' = (F/x) / (1 - F B_0''(F, y))", &lhs, &rhs));
    }

    let db = s.b[0].derive("y")?;
    let lhs = db.checked_add(&db.shift(&[0, 1]))?;
    let rhs = s.d.one_like().checked_add(&s.d)?.shift(&[2, 0]).scale(&rat(1, 2));
    let network = IdentityCheck::compare("(1+y) dB_0/dy = x^2/2 (1 + D)", &lhs, &rhs);
    checks.push(network);
    Ok(checks)
}

/// All graph-side identities on a freshly built series set.
pub fn verify_identities(n_max: usize) -> Result<IdentityReport> {
    let s = GraphSeriesSet::build(n_max)?;
    let mut checks = exp_identity_checks(&s)?;
    checks.extend(pointing_block_checks(&s)?);
    Ok(IdentityReport { n_max, checks })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub graph6: String,
    pub reason: String,
}

/// Block structure of connected toroidal graphs.
#[derive(Clone, Debug, Serialize)]
pub struct RobertsonVitrayReport {
    pub n_max: usize,
    /// Connected graphs examined for genus additivity.
    pub connected_graphs: u64,
    /// Connected genus-1 graphs examined for block structure.
    pub toroidal_graphs: u64,
    pub face_width_exact: u64,
    /// Graphs whose face-width search ran out of budget.
    pub face_width_partial: Vec<String>,
    pub face_width_at_least_two: u64,
    pub violations: Vec<Violation>,
}

impl RobertsonVitrayReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[derive(Default)]
struct RvPart {
    connected: u64,
    toroidal: u64,
    fw_exact: u64,
    fw_partial: Vec<String>,
    fw_two: u64,
    violations: Vec<Violation>,
}

impl RvPart {
    fn merge(mut self, o: RvPart) -> RvPart {
        self.connected += o.connected;
        self.toroidal += o.toroidal;
        self.fw_exact += o.fw_exact;
        self.fw_partial.extend(o.fw_partial);
        self.fw_two += o.fw_two;
        self.violations.extend(o.violations);
        self
    }
}

/// Inspects one connected graph; `None` when it is not connected.
fn rv_inspect(g: &LabelledGraph, budget: SearchBudget) -> Option<RvPart> {
    if !g.is_connected() {
        return None;
    }
    let mut part = RvPart { connected: 1, ..Default::default() };
    let code = g.to_graph6();
    let whole = genus_whole(g, budget);
    let blockwise = genus_blockwise(g, budget);
    if whole != blockwise {
        part.violations.push(Violation {
            graph6: code.clone(),
            reason: format!("genus {:?} but blockwise {:?}", whole, blockwise),
        });
    }
    if whole != Bound::Exact(1) {
        return Some(part);
    }
    part.toroidal = 1;
    let tree = block_decomposition(g);
    let non_planar: Vec<LabelledGraph> = tree
        .blocks
        .iter()
        .map(|b| b.graph(g).0)
        .filter(|h| !is_planar(h))
        .collect();
    if non_planar.len() != 1 {
        part.violations.push(Violation {
            graph6: code.clone(),
            reason: format!("{} non-planar blocks", non_planar.len()),
        });
        return Some(part);
    }
    let fw = face_width_graph(g, Some(1), budget);
    match fw {
        Bound::Exact(_) => part.fw_exact = 1,
        Bound::Interval { .. } => part.fw_partial.push(code.clone()),
    }
    if fw.lo() >= Width::Finite(2) {
        part.fw_two = 1;
        if genus(&non_planar[0]) != Bound::Exact(1) {
            part.violations.push(Violation { graph6: code, reason: "face-width >= 2 block not toroidal".into() });
        }
    }
    Some(part)
}

/// Genus additivity over blocks for every connected graph with at most
/// `n_max` vertices, and a unique non-planar block in every connected
/// genus-1 graph.
pub fn robertson_vitray_check(n_max: usize, budget: SearchBudget) -> Result<RobertsonVitrayReport> {
    if n_max > GENUS_VERTEX_BOUND {
        return Err(StructureError::Range { what: "block structure check", n: n_max, bound: GENUS_VERTEX_BOUND });
    }
    let mut total = RvPart::default();
    for n in 1..=n_max {
        let bits = n * (n - 1) / 2;
        let part = (0u64..1 << bits)
            .into_par_iter()
            .filter_map(|mask| rv_inspect(&LabelledGraph::from_edge_mask(n, mask), budget))
            .reduce(RvPart::default, RvPart::merge);
        total = total.merge(part);
    }
    total.fw_partial.sort();
    total.violations.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    Ok(RobertsonVitrayReport {
        n_max,
        connected_graphs: total.connected,
        toroidal_graphs: total.toroidal,
        face_width_exact: total.fw_exact,
        face_width_partial: total.fw_partial,
        face_width_at_least_two: total.fw_two,
        violations: total.violations,
    })
}

/// Uniform classes for [`stats`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphClass {
    Planar,
    /// Genus exactly one.
    Genus1,
    /// Genus at most one.
    TorusEmbeddable,
}

impl GraphClass {
    fn admits(self, g: &LabelledGraph) -> Result<bool> {
        let genus = match self {
            GraphClass::Planar => return Ok(is_planar(g)),
            _ => classify(g, &GraphPredicate::ALL.with_max_genus(1), true)?.and_then(|k| k.genus),
        };
        Ok(match self {
            GraphClass::Genus1 => genus == Some(1),
            _ => genus.is_some(),
        })
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::Planar => "planar",
            GraphClass::Genus1 => "genus1",
            GraphClass::TorusEmbeddable => "torus-embeddable",
        })
    }
}

impl FromStr for GraphClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "planar" => Ok(GraphClass::Planar),
            "genus1" => Ok(GraphClass::Genus1),
            "torus-embeddable" => Ok(GraphClass::TorusEmbeddable),
            _ => Err(format!("unknown class `{}`", s)),
        }
    }
}

pub const STATISTICS: [&str; 4] = ["edges", "components", "largest_block", "chromatic_number"];

/// Exact distributions over the uniform labelled graph of a class.
#[derive(Clone, Debug, Serialize)]
pub struct StatsReport {
    pub n: usize,
    pub class: GraphClass,
    pub total: u64,
    /// Statistic name to value to count, in [`STATISTICS`] order.
    pub counts: BTreeMap<String, BTreeMap<usize, u64>>,
}

impl StatsReport {
    pub fn probability(&self, stat: &str, value: usize) -> Rational {
        let c = self.counts.get(stat).and_then(|m| m.get(&value)).copied().unwrap_or(0);
        Rational::new((c as i64).into(), (self.total as i64).into())
    }

    pub fn mass(&self, stat: &str) -> Rational {
        self.counts.get(stat).map_or(int(0), |m| m.keys().map(|&v| self.probability(stat, v)).sum())
    }

    pub fn mean(&self, stat: &str) -> Rational {
        self.counts
            .get(stat)
            .map_or(int(0), |m| m.keys().map(|&v| self.probability(stat, v) * int(v as i64)).sum())
    }

    /// `statistic,value,count,probability`, probabilities as exact fractions.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("statistic,value,count,probability\n");
        for stat in STATISTICS {
            if let Some(m) = self.counts.get(stat) {
                for (v, c) in m {
                    out.push_str(&format!("{},{},{},{}\n", stat, v, c, self.probability(stat, *v)));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn largest_block(g: &LabelledGraph) -> usize {
    block_decomposition(g).blocks.iter().map(|b| b.vertices.len()).max().unwrap_or(1)
}

/// Statistic values of one graph, in [`STATISTICS`] order.
pub fn statistics_of(g: &LabelledGraph) -> [usize; 4] {
    [g.n_edges(), g.components().len(), largest_block(g), g.chromatic_number()]
}

/// Exact distributions of the statistics over the class at `n` vertices.
pub fn stats(n: usize, class: GraphClass) -> Result<StatsReport> {
    let bound = match class {
        GraphClass::Planar => crate::census::FULL_VERTEX_BOUND,
        _ => GENUS_VERTEX_BOUND,
    };
    if n == 0 || n > bound {
        return Err(StructureError::Range { what: "statistics", n, bound });
    }
    let bits = n * (n - 1) / 2;
    let tables = (0u64..1 << bits)
        .into_par_iter()
        .map(|mask| {
            let g = LabelledGraph::from_edge_mask(n, mask);
            Ok(class.admits(&g)?.then(|| statistics_of(&g)))
        })
        .try_fold(BTreeMap::new, |mut acc, r: Result<Option<[usize; 4]>>| {
            if let Some(values) = r? {
                *acc.entry(values).or_insert(0u64) += 1;
            }
            Ok::<_, StructureError>(acc)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            Ok(a)
        })?;
    let mut counts: BTreeMap<String, BTreeMap<usize, u64>> = BTreeMap::new();
    let mut total = 0;
    for (values, c) in tables {
        total += c;
        for (name, v) in STATISTICS.iter().zip(values) {
            *counts.entry(name.to_string()).or_default().entry(v).or_insert(0) += c;
        }
    }
    Ok(StatsReport { n, class, total, counts })
}

#[cfg(test)]
mod tests;
