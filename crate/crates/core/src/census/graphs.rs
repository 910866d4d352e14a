//! Labelled graphs on `{1..n}`, enumerated by edge mask.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CensusError, CensusTable, Family, RecordKey, Result};
use crate::graphkernel::{block_decomposition, genus, is_planar, Bound, LabelledGraph};

/// Full enumeration bound; one more vertex is allowed with an edge filter.
pub const FULL_VERTEX_BOUND: usize = 7;

const CHUNK: u64 = 1 << 16;

/// Conjunction of a connectivity floor and a genus ceiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct GraphPredicate {
    /// 0 (any), 1 (connected), 2 or 3.
    pub connectivity: u8,
    pub max_genus: Option<usize>,
}

impl GraphPredicate {
    pub const ALL: GraphPredicate = GraphPredicate {
        connectivity: 0,
        max_genus: None,
    };
    pub const PLANAR: GraphPredicate = GraphPredicate {
        connectivity: 0,
        max_genus: Some(0),
    };

    pub fn with_connectivity(mut self, k: u8) -> Self {
        self.connectivity = k;
        self
    }

    pub fn with_max_genus(mut self, g: usize) -> Self {
        self.max_genus = Some(g);
        self
    }
}

impl fmt::Display for GraphPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.connectivity {
            0 => {}
            1 => parts.push("connected".to_string()),
            k => parts.push(format!("{}-connected", k)),
        }
        match self.max_genus {
            None => {}
            Some(0) => parts.push("planar".into()),
            Some(g) => parts.push(format!("genus<={}", g)),
        }
        if parts.is_empty() {
            write!(f, "all")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl FromStr for GraphPredicate {
    type Err = CensusError;

    /// `all`, `connected`, `2-connected`, `3-connected`, `planar`,
    /// `genus<=G`, joined with `+`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = GraphPredicate::ALL;
        for part in s.split('+').map(str::trim) {
            match part {
                "all" => {}
                "connected" => p.connectivity = p.connectivity.max(1),
                "2-connected" => p.connectivity = p.connectivity.max(2),
                "3-connected" => p.connectivity = p.connectivity.max(3),
                "planar" => p.max_genus = Some(0),
                _ => {
                    let g = part
                        .strip_prefix("genus<=")
                        .and_then(|x| x.parse().ok())
                        .ok_or_else(|| CensusError::Parse(format!("unknown predicate `{}`", part)))?;
                    p.max_genus = Some(g);
                }
            }
        }
        Ok(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GraphKey {
    pub edges: usize,
    /// Largest `k ≤ 3` with the graph k-connected.
    pub connectivity: u8,
    /// Present when the census computed genera.
    pub genus: Option<usize>,
    pub blocks: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCensus {
    pub n: usize,
    pub predicate: String,
    pub counts: BTreeMap<GraphKey, u64>,
}

impl GraphCensus {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn by_edges(&self) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.counts {
            *out.entry(k.edges).or_insert(0) += c;
        }
        out
    }

    pub fn by_genus(&self) -> BTreeMap<Option<usize>, u64> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.counts {
            *out.entry(k.genus).or_insert(0) += c;
        }
        out
    }

    fn merge(&mut self, other: BTreeMap<GraphKey, u64>) {
        for (k, c) in other {
            *self.counts.entry(k).or_insert(0) += c;
        }
    }

    /// Counts by vertices and edges, tagged with the predicate and marked
    /// complete.
    pub fn to_table(&self) -> CensusTable {
        let mut t = CensusTable::new();
        for (e, c) in self.by_edges() {
            t.add(
                RecordKey::new(
                    Family::LabelledGraphs,
                    &[("vertices", self.n as u64), ("edges", e as u64)],
                    &[("predicate", &self.predicate)],
                ),
                c,
            );
        }
        t.mark_complete(Family::LabelledGraphs, self.n as u64, self.total());
        t
    }
}

#[derive(Clone, Debug, Default)]
pub struct GraphCensusOptions {
    /// Only graphs with exactly this many edges.
    pub edges: Option<usize>,
    /// Record the genus of every admitted graph.
    pub genus: bool,
    /// Progress file, resumed when it matches the request.
    pub checkpoint: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    n: usize,
    predicate: String,
    edges: Option<usize>,
    genus: bool,
    next_mask: u64,
    counts: Vec<(GraphKey, u64)>,
}

/// Classifies one graph; `None` when the predicate rejects it.
pub fn classify(g: &LabelledGraph, pred: &GraphPredicate, with_genus: bool) -> Result<Option<GraphKey>> {
    let connectivity = (1..=3u8)
        .take_while(|&k| g.is_k_connected(k as usize))
        .last()
        .unwrap_or(if g.n() == 1 { 1 } else { 0 });
    if connectivity < pred.connectivity {
        return Ok(None);
    }
    let tree = block_decomposition(g);
    let mut genus_value = None;
    if pred.max_genus.is_some() || with_genus {
        let value = if is_planar(g) {
            0
        } else {
            let lower: usize = tree
                .blocks
                .iter()
                .filter(|b| b.vertices.len() >= 3)
                .map(|b| {
                    let (e, v) = (b.edges.len(), b.vertices.len());
                    (e + 6).saturating_sub(3 * v).div_ceil(6)
                })
                .sum::<usize>()
                .max(1);
            match pred.max_genus {
                Some(h) if lower > h && !with_genus => return Ok(None),
                _ => {}
            }
            match genus(g) {
                Bound::Exact(x) => x,
                Bound::Interval { .. } => {
                    return Err(CensusError::BoundExceeded {
                        what: "genus search on a graph with vertices",
                        size: g.n(),
                        bound: FULL_VERTEX_BOUND,
                    })
                }
            }
        };
        if pred.max_genus.is_some_and(|h| value > h) {
            return Ok(None);
        }
        genus_value = Some(value);
    }
    Ok(Some(GraphKey {
        edges: g.n_edges(),
        connectivity,
        genus: if with_genus { genus_value } else { None },
        blocks: tree.blocks.len(),
    }))
}

/// Exhaustive census of labelled graphs on `n` vertices in increasing edge
/// mask order, optionally checkpointed after every chunk of masks.
pub fn labelled_graph_census(
    n: usize,
    pred: &GraphPredicate,
    opts: &GraphCensusOptions,
) -> Result<GraphCensus> {
    if n > FULL_VERTEX_BOUND + 1 || (n == FULL_VERTEX_BOUND + 1 && opts.edges.is_none()) {
        return Err(CensusError::BoundExceeded {
            what: "labelled graph vertices",
            size: n,
            bound: FULL_VERTEX_BOUND,
        });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let end = 1u64 << bits;
    let mut census = GraphCensus {
        n,
        predicate: pred.to_string(),
        counts: BTreeMap::new(),
    };
    let mut next = 0u64;
    if let Some(path) = &opts.checkpoint {
        if let Some(cp) = read_checkpoint(path)? {
            if cp.n == n && cp.predicate == census.predicate && cp.edges == opts.edges && cp.genus == opts.genus {
                next = cp.next_mask;
                census.counts = cp.counts.into_iter().collect();
            }
        }
    }
    while next < end {
        let stop = (next + CHUNK).min(end);
        let part = (next..stop)
            .into_par_iter()
            .filter(|&mask| opts.edges.is_none_or(|e| mask.count_ones() as usize == e))
            .map(|mask| classify(&LabelledGraph::from_edge_mask(n, mask), pred, opts.genus))
            .try_fold(BTreeMap::new, |mut acc, r| {
                if let Some(k) = r? {
                    *acc.entry(k).or_insert(0u64) += 1;
                }
                Ok::<_, CensusError>(acc)
            })
            .try_reduce(BTreeMap::new, |mut a, b| {
                for (k, c) in b {
                    *a.entry(k).or_insert(0) += c;
                }
                Ok(a)
            })?;
        census.merge(part);
        next = stop;
        if let Some(path) = &opts.checkpoint {
            write_checkpoint(path, &census, opts, next)?;
        }
    }
    Ok(census)
}

/// The admitted graphs themselves (small `n` only).
pub fn labelled_graphs(n: usize, pred: &GraphPredicate) -> Result<Vec<LabelledGraph>> {
    if n > FULL_VERTEX_BOUND {
        return Err(CensusError::BoundExceeded {
            what: "labelled graph vertices",
            size: n,
            bound: FULL_VERTEX_BOUND,
        });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::new();
    for mask in 0..1u64 << bits {
        let g = LabelledGraph::from_edge_mask(n, mask);
        if classify(&g, pred, false)?.is_some() {
            out.push(g);
        }
    }
    Ok(out)
}

fn read_checkpoint(path: &Path) -> Result<Option<Checkpoint>> {
    match std::fs::read_to_string(path) {
        Ok(s) => serde_json::from_str(&s)
            .map(Some)
            .map_err(|e| CensusError::Parse(format!("checkpoint: {}", e))),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn write_checkpoint(path: &Path, c: &GraphCensus, opts: &GraphCensusOptions, next: u64) -> Result<()> {
    let cp = Checkpoint {
        n: c.n,
        predicate: c.predicate.clone(),
        edges: opts.edges,
        genus: opts.genus,
        next_mask: next,
        counts: c.counts.iter().map(|(k, v)| (*k, *v)).collect(),
    };
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_string(&cp).expect("serializable"))?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn graph6_encode(g: &LabelledGraph) -> String {
    g.to_graph6()
}

pub fn graph6_decode(s: &str) -> Result<LabelledGraph> {
    Ok(LabelledGraph::from_graph6(s)?)
}
