//! Exhaustive censuses: rooted maps, quadrangulations and labelled graphs.
//!
//! Results are collected in a [`CensusTable`] of exact counts keyed by
//! family, size keys and predicate tags. Every completed size also stores a
//! `total` record, which is how [`series_from_census`] knows the data is
//! complete.

pub mod graphs;
pub mod maps;
pub mod quads;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::SeriesError;
use crate::{Rational, Series};

pub use graphs::{
    classify, graph6_decode, graph6_encode, labelled_graph_census, labelled_graphs, GraphCensus, GraphCensusOptions,
    GraphKey, GraphPredicate, FULL_VERTEX_BOUND,
};
pub use maps::{
    reference_general_count, reference_rooted_counts, rooted_general_counts, rooted_general_maps,
    rooted_map_counts, rooted_maps, MapCounts,
};
pub use quads::{quad_counts, quadrangulations, QuadClass, QuadRecord, QuadTags};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("{what} {size} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("census records missing for {family} size {size}")]
    MissingRecords { family: Family, size: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Graph(#[from] crate::graphkernel::GraphError),
}

pub type Result<T> = std::result::Result<T, CensusError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    RootedMaps,
    GeneralMaps,
    Quadrangulations,
    LabelledGraphs,
}

impl Family {
    /// Name of the key giving the size of an object.
    pub fn size_key(self) -> &'static str {
        match self {
            Family::RootedMaps | Family::GeneralMaps => "edges",
            Family::Quadrangulations => "faces",
            Family::LabelledGraphs => "vertices",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::RootedMaps => "rooted_maps",
            Family::GeneralMaps => "general_maps",
            Family::Quadrangulations => "quadrangulations",
            Family::LabelledGraphs => "labelled_graphs",
        })
    }
}

impl FromStr for Family {
    type Err = CensusError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rooted_maps" => Family::RootedMaps,
            "general_maps" => Family::GeneralMaps,
            "quadrangulations" => Family::Quadrangulations,
            "labelled_graphs" => Family::LabelledGraphs,
            _ => return Err(CensusError::Parse(format!("unknown family `{}`", s))),
        })
    }
}

/// Identity of a census record.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RecordKey {
    pub family: Family,
    pub keys: Vec<(String, u64)>,
    pub tags: Vec<(String, String)>,
}

impl RecordKey {
    pub fn new(family: Family, keys: &[(&str, u64)], tags: &[(&str, &str)]) -> Self {
        RecordKey {
            family,
            keys: keys.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            tags: tags.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        }
    }

    pub fn key(&self, name: &str) -> Option<u64> {
        self.keys.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn tag(&self, name: &str) -> Option<&str> {
        self.tags
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    fn total(family: Family, size: u64) -> Self {
        RecordKey::new(family, &[(family.size_key(), size)], &[("total", "1")])
    }
}

/// Exact counts keyed by [`RecordKey`]; merging adds counts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusTable {
    records: BTreeMap<RecordKey, BigUint>,
}

impl CensusTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: RecordKey, count: impl Into<BigUint>) {
        *self.records.entry(key).or_insert_with(BigUint::zero) += count.into();
    }

    pub fn merge(&mut self, other: &CensusTable) {
        for (k, v) in &other.records {
            self.add(k.clone(), v.clone());
        }
    }

    pub fn get(&self, key: &RecordKey) -> Option<&BigUint> {
        self.records.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RecordKey, &BigUint)> {
        self.records.iter()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Marks `size` as completely enumerated for `family`.
    pub fn mark_complete(&mut self, family: Family, size: u64, total: impl Into<BigUint>) {
        self.records.insert(RecordKey::total(family, size), total.into());
    }

    pub fn is_complete(&self, family: Family, size: u64) -> bool {
        self.records.contains_key(&RecordKey::total(family, size))
    }

    /// Adds orientable or general map counts.
    pub fn add_map_counts(&mut self, family: Family, c: &MapCounts, tags: &[(&str, &str)]) {
        let genus_key = match family {
            Family::GeneralMaps => "euler_genus",
            _ => "genus",
        };
        let size_key = family.size_key();
        let vert_key = match family {
            Family::Quadrangulations => "black",
            _ => "vertices",
        };
        for ((v, g), n) in &c.by_vertices_genus {
            self.add(
                RecordKey::new(
                    family,
                    &[(size_key, c.edges as u64), (vert_key, *v as u64), (genus_key, *g as u64)],
                    tags,
                ),
                *n,
            );
        }
    }

    /// One line per record: `family,key=value…,tag:value…,count`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        for (k, v) in &self.records {
            let mut row = vec![k.family.to_string()];
            row.extend(k.keys.iter().map(|(a, b)| format!("{}={}", a, b)));
            row.extend(k.tags.iter().map(|(a, b)| format!("{}:{}", a, b)));
            row.push(v.to_string());
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(s.as_bytes());
        let mut t = CensusTable::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| CensusError::Parse(e.to_string()))?;
            let fields: Vec<&str> = rec.iter().collect();
            if fields.len() < 2 {
                return Err(CensusError::Parse("short record".into()));
            }
            let family: Family = fields[0].parse()?;
            let count = BigUint::from_str(fields[fields.len() - 1])
                .map_err(|_| CensusError::Parse(format!("bad count `{}`", fields[fields.len() - 1])))?;
            let mut key = RecordKey {
                family,
                keys: Vec::new(),
                tags: Vec::new(),
            };
            for f in &fields[1..fields.len() - 1] {
                if let Some((a, b)) = f.split_once('=') {
                    let v = b
                        .parse()
                        .map_err(|_| CensusError::Parse(format!("bad key value `{}`", f)))?;
                    key.keys.push((a.to_string(), v));
                } else if let Some((a, b)) = f.split_once(':') {
                    key.tags.push((a.to_string(), b.to_string()));
                } else {
                    return Err(CensusError::Parse(format!("bad field `{}`", f)));
                }
            }
            t.add(key, count);
        }
        Ok(t)
    }

    /// Appends this table to an on-disk CSV file.
    pub fn append_to(&self, path: &Path) -> Result<()> {
        use std::io::Write;
        let mut f = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)?;
        f.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_csv(&std::fs::read_to_string(path)?)
    }
}

/// Weighting of census counts in a generating function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `sum count x^vertices u^size`.
    RootedOgf,
    /// Edge-labelled quadrangulations: a rooted object with `2m` edges has
    /// `(2m-1)!` labellings, weighted by `u^m / (2m)!`, i.e. `count / (2m)`.
    /// Size 0 is omitted.
    EdgeLabelledEgf,
    /// `sum count x^n / n! y^edges` for labelled graphs.
    VertexLabelledEgf,
}

/// Builds a series from census records of one family.
///
/// Map families use variables `(x, u)` with `x` marking vertices (black
/// vertices for quadrangulations) and `u` the size; records are filtered by
/// the genus key when `genus` is given and by the `tags`. Labelled graphs use
/// `(x, y)` with `x` marking vertices and `y` edges. All sizes below `order`
/// must be complete.
pub fn series_from_census(
    table: &CensusTable,
    family: Family,
    genus: Option<u64>,
    tags: &[(&str, &str)],
    convention: Convention,
    order: u32,
) -> Result<Series> {
    let size_key = family.size_key();
    let (vars, principal): (&[&str], &str) = match family {
        Family::LabelledGraphs => (&["x", "y"], "x"),
        _ => (&["x", "u"], "u"),
    };
    for size in 0..order as u64 {
        if !table.is_complete(family, size) {
            return Err(CensusError::MissingRecords { family, size });
        }
    }
    let genus_key = match family {
        Family::GeneralMaps => "euler_genus",
        _ => "genus",
    };
    let mut terms = Vec::new();
    for (k, v) in table.iter() {
        if k.family != family || k.tag("total").is_some() {
            continue;
        }
        if tags.iter().any(|(a, b)| k.tag(a) != Some(*b)) {
            continue;
        }
        if k.tags.len() != tags.len() {
            continue;
        }
        if let Some(g) = genus {
            if k.key(genus_key) != Some(g) {
                continue;
            }
        }
        let size = k.key(size_key).ok_or_else(|| CensusError::Parse("missing size".into()))?;
        if size >= order as u64 {
            continue;
        }
        let count = Rational::from_integer(v.clone().into());
        let (exps, c) = match (family, convention) {
            (Family::LabelledGraphs, _) => {
                let e = k.key("edges").unwrap_or(0);
                let fact: BigUint = (1..=size).product();
                let c = count / Rational::from_integer(fact.into());
                (vec![size as u32, e as u32], c)
            }
            (_, Convention::EdgeLabelledEgf) => {
                if size == 0 {
                    continue;
                }
                let x = k.key("black").or(k.key("vertices")).unwrap_or(0);
                (vec![x as u32, size as u32], count / Rational::from_integer((2 * size).into()))
            }
            (_, _) => {
                let x = k.key("black").or(k.key("vertices")).unwrap_or(0);
                (vec![x as u32, size as u32], count)
            }
        };
        terms.push((exps, c));
    }
    Ok(Series::from_terms(vars, principal, order, terms)?)
}

/// Map counts of one size into a fresh table (marked complete).
pub fn map_table(family: Family, counts: &[MapCounts], tags: &[(&str, &str)]) -> CensusTable {
    let mut t = CensusTable::new();
    for c in counts {
        t.add_map_counts(family, c, tags);
        t.mark_complete(family, c.edges as u64, c.total());
    }
    t
}

#[cfg(test)]
mod tests;
