//! Bipartite quadrangulations, obtained from rooted maps through the
//! quadrangulation bijection and tagged by the core predicates.

use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::maps::{rooted_maps, MapCounts};
use super::{CensusError, Result};
use crate::mapkernel::{
    contractible_4_cycles_are_facial, edge_width, is_near_simple, is_simple, quadrangulation_of,
    CombMap, Width,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadTags {
    pub simple: bool,
    pub near_simple: bool,
    /// Simple with every contractible 4-cycle facial.
    pub near_irreducible: bool,
    /// Near-simple with every contractible 4-cycle facial (no simplicity
    /// requirement, so non-contractible 2-cycles are allowed).
    pub near_irreducible_core: bool,
    pub ew: Width,
}

#[derive(Clone, Debug)]
pub struct QuadRecord {
    pub quad: CombMap,
    pub faces: usize,
    pub black: usize,
    pub genus: usize,
    pub tags: QuadTags,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadClass {
    All,
    Simple,
    NearSimple,
    NearIrreducible,
    NearIrreducibleCore,
}

impl QuadClass {
    pub fn admits(self, t: &QuadTags) -> bool {
        match self {
            QuadClass::All => true,
            QuadClass::Simple => t.simple,
            QuadClass::NearSimple => t.near_simple,
            QuadClass::NearIrreducible => t.near_irreducible,
            QuadClass::NearIrreducibleCore => t.near_irreducible_core,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QuadClass::All => "all",
            QuadClass::Simple => "simple",
            QuadClass::NearSimple => "near-simple",
            QuadClass::NearIrreducible => "near-irreducible",
            QuadClass::NearIrreducibleCore => "near-irreducible-core",
        }
    }
}

impl FromStr for QuadClass {
    type Err = CensusError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => QuadClass::All,
            "simple" => QuadClass::Simple,
            "near-simple" => QuadClass::NearSimple,
            "near-irreducible" => QuadClass::NearIrreducible,
            "near-irreducible-core" => QuadClass::NearIrreducibleCore,
            _ => return Err(CensusError::Parse(format!("unknown class `{}`", s))),
        })
    }
}

pub fn tags_of(q: &CombMap) -> QuadTags {
    let simple = is_simple(q);
    let near_simple = simple || is_near_simple(q);
    let facial4 = contractible_4_cycles_are_facial(q);
    QuadTags {
        simple,
        near_simple,
        near_irreducible: simple && facial4,
        near_irreducible_core: near_simple && facial4,
        ew: edge_width(q),
    }
}

/// Quadrangulations with `m` faces (images of the rooted maps with `m`
/// edges), optionally of one genus.
pub fn quadrangulations(m: usize, genus: Option<usize>) -> Result<Vec<QuadRecord>> {
    let maps = rooted_maps(m)?;
    let out = maps
        .par_iter()
        .filter_map(|map| {
            let g = map.genus().expect("orientable");
            if genus.is_some_and(|h| h != g) {
                return None;
            }
            let quad = quadrangulation_of(map).expect("orientable");
            let tags = tags_of(&quad);
            Some(QuadRecord {
                quad,
                faces: m,
                black: map.n_vertices(),
                genus: g,
                tags,
            })
        })
        .collect();
    Ok(out)
}

/// Counts by `(black vertices, genus)` within one class.
pub fn quad_counts(m: usize, genus: Option<usize>, class: QuadClass) -> Result<MapCounts> {
    let mut c = MapCounts {
        edges: m,
        ..Default::default()
    };
    for r in quadrangulations(m, genus)? {
        if class.admits(&r.tags) {
            *c.by_vertices_genus.entry((r.black, r.genus)).or_insert(0) += 1;
        }
    }
    Ok(c)
}
