//! Rooted maps by edges, vertices and genus.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use super::{CensusError, Result};
use crate::mapkernel::{CombMap, MapError};

pub const DEFAULT_ORIENTABLE_BOUND: usize = 6;
pub const DEFAULT_SIGNED_BOUND: usize = 4;

/// Exact counts of rooted maps with a fixed number of edges, keyed by
/// `(vertices, genus)`. For general maps the genus key is the Euler genus.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MapCounts {
    pub edges: usize,
    pub by_vertices_genus: BTreeMap<(usize, usize), u64>,
}

impl MapCounts {
    pub fn total(&self) -> u64 {
        self.by_vertices_genus.values().sum()
    }

    pub fn genus(&self, g: usize) -> u64 {
        self.by_vertices_genus
            .iter()
            .filter(|((_, h), _)| *h == g)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn by_genus(&self) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for ((_, g), c) in &self.by_vertices_genus {
            *out.entry(*g).or_insert(0) += c;
        }
        out
    }

    fn add(&mut self, v: usize, g: usize) {
        *self.by_vertices_genus.entry((v, g)).or_insert(0) += 1;
    }

    pub fn merge(mut self, other: &MapCounts) -> MapCounts {
        for (k, c) in &other.by_vertices_genus {
            *self.by_vertices_genus.entry(*k).or_insert(0) += c;
        }
        self
    }
}

fn check_bound(what: &'static str, size: usize, bound: usize) -> Result<()> {
    if size > bound {
        return Err(CensusError::BoundExceeded { what, size, bound });
    }
    Ok(())
}

/// Partial canonical labelling: darts are labelled in breadth-first order
/// from the root, choosing `alpha(i)` and then `sigma(i)` for each dart `i`
/// among the darts still free or the next fresh label.
#[derive(Clone)]
struct Partial {
    n: usize,
    alpha: Vec<usize>,
    sigma: Vec<usize>,
    has_pre: Vec<bool>,
    used: usize,
    i: usize,
    sigma_phase: bool,
}

const UNSET: usize = usize::MAX;

impl Partial {
    fn start(n: usize) -> Self {
        Partial {
            n,
            alpha: vec![UNSET; n],
            sigma: vec![UNSET; n],
            has_pre: vec![false; n],
            used: 1,
            i: 0,
            sigma_phase: false,
        }
    }

    fn is_done(&self) -> bool {
        self.i == self.used
    }

    fn choices(&self) -> Vec<usize> {
        let mut c = Vec::new();
        if !self.sigma_phase {
            if self.alpha[self.i] != UNSET {
                return vec![UNSET];
            }
            for j in self.i + 1..self.used {
                if self.alpha[j] == UNSET {
                    c.push(j);
                }
            }
        } else {
            for j in 0..self.used {
                if !self.has_pre[j] {
                    c.push(j);
                }
            }
        }
        if self.used < self.n {
            c.push(self.used);
        }
        c
    }

    fn apply(&self, j: usize) -> Partial {
        let mut p = self.clone();
        if j != UNSET && j == p.used {
            p.used += 1;
        }
        if !p.sigma_phase {
            if j != UNSET {
                p.alpha[p.i] = j;
                p.alpha[j] = p.i;
            }
            p.sigma_phase = true;
        } else {
            p.sigma[p.i] = j;
            p.has_pre[j] = true;
            p.sigma_phase = false;
            p.i += 1;
        }
        p
    }

    fn finish(&self) -> Option<CombMap> {
        (self.used == self.n).then(|| {
            CombMap::new(self.sigma.clone(), self.alpha.clone())
                .and_then(|m| m.with_root(0))
                .expect("canonical labelling yields a valid rooted map")
        })
    }
}

fn explore(p: Partial, out: &mut Vec<CombMap>) {
    if p.is_done() {
        if let Some(m) = p.finish() {
            out.push(m);
        }
        return;
    }
    for j in p.choices() {
        explore(p.apply(j), out);
    }
}

fn frontier(p: Partial, depth: usize, out: &mut Vec<Partial>) {
    if depth == 0 || p.is_done() {
        out.push(p);
        return;
    }
    for j in p.choices() {
        frontier(p.apply(j), depth - 1, out);
    }
}

/// Every rooted orientable map with `m` edges exactly once, in canonical
/// labelling (root dart 0). Uses the default bound.
pub fn rooted_maps(m: usize) -> Result<Vec<CombMap>> {
    rooted_maps_bounded(m, DEFAULT_ORIENTABLE_BOUND)
}

pub fn rooted_maps_bounded(m: usize, bound: usize) -> Result<Vec<CombMap>> {
    check_bound("rooted map edges", m, bound)?;
    if m == 0 {
        return Ok(vec![CombMap::vertex_map()]);
    }
    let mut units = Vec::new();
    frontier(Partial::start(2 * m), 6, &mut units);
    let parts: Vec<Vec<CombMap>> = units
        .into_par_iter()
        .map(|p| {
            let mut out = Vec::new();
            explore(p, &mut out);
            out
        })
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

/// Counts of rooted orientable maps with `m` edges by vertices and genus,
/// optionally restricted to one genus.
pub fn rooted_map_counts(m: usize, genus: Option<usize>) -> Result<MapCounts> {
    let maps = rooted_maps(m)?;
    let mut c = MapCounts {
        edges: m,
        ..Default::default()
    };
    for map in &maps {
        let g = map.genus().expect("orientable");
        if genus.is_none_or(|h| h == g) {
            c.add(map.n_vertices(), g);
        }
    }
    Ok(c)
}

/// Reference count: enumerate all rotations `sigma` of `0..2m` against the
/// fixed pairing `(0 1)(2 3)…`, keep the transitive ones, and rescale by
/// `2m / (2^m m!)`.
pub fn reference_rooted_counts(m: usize) -> Result<MapCounts> {
    check_bound("reference enumeration edges", m, 5)?;
    let mut out = MapCounts {
        edges: m,
        ..Default::default()
    };
    if m == 0 {
        out.add(1, 0);
        return Ok(out);
    }
    let n = 2 * m;
    let alpha: Vec<usize> = (0..n).map(|d| d ^ 1).collect();
    let mut raw: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if let Ok(map) = CombMap::new(perm.clone(), alpha.clone()) {
            let g = map.genus().expect("orientable");
            *raw.entry((map.n_vertices(), g)).or_insert(0) += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let denom: u64 = (1..=m as u64).product::<u64>() << m;
    for (k, t) in raw {
        let num = t * n as u64;
        if !num.is_multiple_of(denom) {
            return Err(CensusError::Inconsistent(format!(
                "transitive count {} at {:?} is not divisible",
                t, k
            )));
        }
        out.by_vertices_genus.insert(k, num / denom);
    }
    Ok(out)
}

/// Lexicographic successor; false after the last permutation.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every rooted general (orientable or not) map with `m` edges exactly once,
/// each rooted at a flag: the returned map is rooted at flag
/// `(root, side 0)`. Orientable maps are counted up to reflection.
pub fn rooted_general_maps(m: usize) -> Result<Vec<CombMap>> {
    rooted_general_maps_bounded(m, DEFAULT_SIGNED_BOUND)
}

pub fn rooted_general_maps_bounded(m: usize, bound: usize) -> Result<Vec<CombMap>> {
    check_bound("signed map edges", m, bound)?;
    if m == 0 {
        return Ok(vec![CombMap::vertex_map()]);
    }
    let skeletons = rooted_maps_bounded(m, bound.max(m))?;
    let per: Vec<Vec<(Vec<u32>, CombMap)>> = skeletons
        .par_iter()
        .map(|s| signed_variants(s).expect("valid skeleton"))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (code, map) in per.into_iter().flatten() {
        if seen.insert(code) {
            out.push(map);
        }
    }
    Ok(out)
}

/// The skeleton with every sign pattern on the edges outside a BFS spanning
/// tree of the root vertex.
fn signed_variants(s: &CombMap) -> std::result::Result<Vec<(Vec<u32>, CombMap)>, MapError> {
    let vof = s.vertex_of();
    let verts = s.vertices();
    let eof = s.edge_of();
    let mut tree = vec![false; s.n_edges()];
    let mut seen = vec![false; verts.len()];
    let r = s.root().unwrap_or(0);
    seen[vof[r]] = true;
    let mut queue = std::collections::VecDeque::from([vof[r]]);
    while let Some(v) = queue.pop_front() {
        // dart-label order is unchanged by switching, so the tree is too
        let mut darts = verts[v].clone();
        darts.sort_unstable();
        for d in darts {
            let w = vof[s.alpha()[d]];
            if !seen[w] {
                seen[w] = true;
                tree[eof[d]] = true;
                queue.push_back(w);
            }
        }
    }
    let cotree: Vec<usize> = (0..s.n_edges()).filter(|&e| !tree[e]).collect();
    let mut out = Vec::with_capacity(1 << cotree.len());
    for mask in 0u32..(1 << cotree.len()) {
        let mut neg = vec![false; s.n_edges()];
        for (b, &e) in cotree.iter().enumerate() {
            neg[e] = mask >> b & 1 == 1;
        }
        let signs = (0..s.n_darts())
            .map(|d| if neg[eof[d]] { -1 } else { 1 })
            .collect();
        let m = CombMap::new_signed(s.sigma().to_vec(), s.alpha().to_vec(), signs)?
            .with_root(r)?;
        out.push((m.gem_code(), m));
    }
    Ok(out)
}

/// Counts of rooted general maps by vertices and Euler genus.
pub fn rooted_general_counts(m: usize) -> Result<MapCounts> {
    let mut c = MapCounts {
        edges: m,
        ..Default::default()
    };
    for map in rooted_general_maps(m)? {
        c.add(map.n_vertices(), map.euler_genus());
    }
    Ok(c)
}

/// Reference count of flag-rooted general maps by direct enumeration of
/// flag graphs: the side and edge involutions are fixed and the corner
/// involution ranges over all fixed-point-free involutions of the `4m`
/// flags; connected ones are rescaled by `4m / (m! 4^m)`.
pub fn reference_general_count(m: usize) -> Result<u64> {
    check_bound("flag-graph enumeration edges", m, 3)?;
    if m == 0 {
        return Ok(1);
    }
    let n = 4 * m;
    let t0: Vec<usize> = (0..n).map(|f| f ^ 1).collect();
    let t2: Vec<usize> = (0..n).map(|f| f ^ 2).collect();
    let mut t1 = vec![UNSET; n];
    let mut connected = 0u64;
    involutions(&mut t1, &mut |t1| {
        if flags_connected(&[&t0, t1, &t2]) {
            connected += 1;
        }
    });
    let aut: u64 = (1..=m as u64).product::<u64>() * 4u64.pow(m as u32);
    Ok(connected * n as u64 / aut)
}

fn involutions(t: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    let Some(a) = t.iter().position(|&x| x == UNSET) else {
        f(t);
        return;
    };
    for b in a + 1..t.len() {
        if t[b] == UNSET {
            t[a] = b;
            t[b] = a;
            involutions(t, f);
            t[a] = UNSET;
            t[b] = UNSET;
        }
    }
}

fn flags_connected(invs: &[&[usize]]) -> bool {
    let n = invs[0].len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for t in invs {
            let y = t[x];
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}
