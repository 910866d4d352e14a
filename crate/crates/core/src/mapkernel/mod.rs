//! Combinatorial maps.
//!
//! A map with `m` edges is a pair of permutations on the darts `0..2m`:
//! `sigma` rotates the darts around each vertex counterclockwise and `alpha`
//! pairs the two darts of every edge. Non-orientable maps additionally carry
//! a sign per edge; crossing a negative edge flips the side of the traversal.
//! The external JSON form numbers darts from 1.

mod quad;
mod surgery;

pub use quad::{
    black_darts, contractible_4_cycles_are_facial, is_irreducible, is_near_irreducible, is_near_simple, is_simple,
    near_irreducible_core, near_simple_core, primal_of_quadrangulation, quadrangulation_of,
};
pub use surgery::{
    cut_along_cycle, cycles, cycles_of_length, edge_width, face_width, is_contractible,
    validate_cycle, CutKind, CutPiece, CutResult, Width,
};

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("{name} is not a permutation of 0..{n}")]
    NotPermutation { name: &'static str, n: usize },
    #[error("alpha is not an involution at dart {0}")]
    NotInvolution(usize),
    #[error("alpha fixes dart {0}")]
    FixedPoint(usize),
    #[error("sigma and alpha do not act transitively on the darts")]
    Disconnected,
    #[error("darts {0} and {1} of one edge carry different signs")]
    SignMismatch(usize, usize),
    #[error("invalid sign {0}")]
    BadSign(i64),
    #[error("root dart {0} out of range")]
    BadRoot(usize),
    #[error("not a cycle: {0}")]
    InvalidCycle(String),
    #[error("map is not bipartite")]
    NotBipartite,
    #[error("face of degree {degree} in a quadrangulation")]
    FaceDegree { degree: usize },
    #[error("{0} needs an orientable map")]
    NonOrientable(&'static str),
    #[error("odd Euler genus {0} on an orientable map")]
    Inconsistent(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("malformed map document: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, MapError>;

/// A connected map given by a rotation system, optionally edge-signed and
/// rooted at a dart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombMap {
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    /// Per-dart sign, equal on both darts of an edge.
    signs: Option<Vec<i8>>,
    root: Option<usize>,
}

/// Faces as dart cycles. For orientable maps these are the orbits of
/// `sigma ∘ alpha`; for signed maps each face lists the darts at which the
/// two-sided walk leaves a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Vec<usize>>,
    pub count: usize,
}

fn check_permutation(p: &[usize], name: &'static str) -> Result<()> {
    let n = p.len();
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return Err(MapError::NotPermutation { name, n });
        }
        seen[x] = true;
    }
    Ok(())
}

pub(crate) fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn orbits(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut d = s;
        while !seen[d] {
            seen[d] = true;
            cyc.push(d);
            d = p[d];
        }
        out.push(cyc);
    }
    out
}

impl CombMap {
    /// Orientable map from a rotation and an edge involution.
    pub fn new(sigma: Vec<usize>, alpha: Vec<usize>) -> Result<Self> {
        check_permutation(&sigma, "sigma")?;
        check_permutation(&alpha, "alpha")?;
        if sigma.len() != alpha.len() || !sigma.len().is_multiple_of(2) {
            return Err(MapError::NotPermutation {
                name: "alpha",
                n: sigma.len(),
            });
        }
        for (d, &a) in alpha.iter().enumerate() {
            if a == d {
                return Err(MapError::FixedPoint(d));
            }
            if alpha[a] != d {
                return Err(MapError::NotInvolution(d));
            }
        }
        let m = CombMap {
            sigma,
            alpha,
            signs: None,
            root: None,
        };
        if !m.is_connected() {
            return Err(MapError::Disconnected);
        }
        Ok(m)
    }

    /// Signed map; `signs` is given per dart and must agree along edges.
    pub fn new_signed(sigma: Vec<usize>, alpha: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let mut m = Self::new(sigma, alpha)?;
        if signs.len() != m.n_darts() {
            return Err(MapError::Json("sign vector length".into()));
        }
        for (d, &s) in signs.iter().enumerate() {
            if s != 1 && s != -1 {
                return Err(MapError::BadSign(s as i64));
            }
            if signs[m.alpha[d]] != s {
                return Err(MapError::SignMismatch(d, m.alpha[d]));
            }
        }
        m.signs = Some(signs);
        Ok(m)
    }

    /// The map with one vertex, no edge and one face.
    pub fn vertex_map() -> Self {
        CombMap {
            sigma: Vec::new(),
            alpha: Vec::new(),
            signs: None,
            root: None,
        }
    }

    pub(crate) fn from_parts_unchecked(
        sigma: Vec<usize>,
        alpha: Vec<usize>,
        signs: Option<Vec<i8>>,
        root: Option<usize>,
    ) -> Self {
        CombMap {
            sigma,
            alpha,
            signs,
            root,
        }
    }

    pub fn with_root(mut self, root: usize) -> Result<Self> {
        if root >= self.n_darts() {
            return Err(MapError::BadRoot(root));
        }
        self.root = Some(root);
        Ok(self)
    }

    pub fn without_root(mut self) -> Self {
        self.root = None;
        self
    }

    pub fn n_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn n_edges(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn signs(&self) -> Option<&[i8]> {
        self.signs.as_deref()
    }

    pub fn sign(&self, d: usize) -> i8 {
        self.signs.as_ref().map_or(1, |s| s[d])
    }

    /// True if some edge is negative.
    pub fn has_negative_edges(&self) -> bool {
        self.signs.as_ref().is_some_and(|s| s.iter().any(|&x| x < 0))
    }

    /// `phi = sigma ∘ alpha`, the face permutation of an orientable map.
    pub fn phi(&self) -> Vec<usize> {
        self.alpha.iter().map(|&a| self.sigma[a]).collect()
    }

    fn is_connected(&self) -> bool {
        let n = self.n_darts();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for e in [self.sigma[d], self.alpha[d]] {
                if !seen[e] {
                    seen[e] = true;
                    count += 1;
                    stack.push(e);
                }
            }
        }
        count == n
    }

    pub fn vertices(&self) -> Vec<Vec<usize>> {
        orbits(&self.sigma)
    }

    /// Vertex index of every dart, vertices numbered by smallest dart.
    pub fn vertex_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.n_darts()];
        for (i, orb) in self.vertices().iter().enumerate() {
            for &d in orb {
                of[d] = i;
            }
        }
        of
    }

    pub fn n_vertices(&self) -> usize {
        if self.n_darts() == 0 {
            1
        } else {
            self.vertices().len()
        }
    }

    /// Edge index of every dart, edges numbered by smallest dart.
    pub fn edge_of(&self) -> Vec<usize> {
        let mut of = vec![usize::MAX; self.n_darts()];
        let mut next = 0;
        for d in 0..self.n_darts() {
            if of[d] == usize::MAX {
                of[d] = next;
                of[self.alpha[d]] = next;
                next += 1;
            }
        }
        of
    }

    /// The flag walk: flag `2d + s` is side `s` of dart `d`, side 1 facing
    /// `sigma(d)`. Returns the two involutions (corner, edge crossing).
    pub(crate) fn flag_involutions(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.n_darts();
        let sinv = inverse(&self.sigma);
        let mut tv = vec![0; 2 * n];
        let mut te = vec![0; 2 * n];
        for d in 0..n {
            tv[2 * d + 1] = 2 * self.sigma[d];
            tv[2 * d] = 2 * sinv[d] + 1;
            let a = self.alpha[d];
            if self.sign(d) > 0 {
                te[2 * d] = 2 * a + 1;
                te[2 * d + 1] = 2 * a;
            } else {
                te[2 * d] = 2 * a;
                te[2 * d + 1] = 2 * a + 1;
            }
        }
        (tv, te)
    }

    /// Faces as sequences of flags; each flag `2d + s` is where the walk
    /// crosses the edge of dart `d`.
    pub fn face_flags(&self) -> Vec<Vec<usize>> {
        let (tv, te) = self.flag_involutions();
        let mut seen = vec![false; tv.len()];
        let mut out = Vec::new();
        for start in (0..tv.len()).step_by(2).chain((1..tv.len()).step_by(2)) {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut f = start;
            loop {
                seen[f] = true;
                face.push(f);
                let g = te[f];
                seen[g] = true;
                f = tv[g];
                if f == start {
                    break;
                }
            }
            out.push(face);
        }
        out
    }

    pub fn faces(&self) -> FaceSet {
        if self.n_darts() == 0 {
            return FaceSet {
                faces: vec![Vec::new()],
                count: 1,
            };
        }
        let faces: Vec<Vec<usize>> = if self.has_negative_edges() {
            self.face_flags()
                .into_iter()
                .map(|f| f.into_iter().map(|x| x / 2).collect())
                .collect()
        } else {
            orbits(&self.phi())
        };
        FaceSet {
            count: faces.len(),
            faces,
        }
    }

    pub fn n_faces(&self) -> usize {
        self.faces().count
    }

    /// `2 - (V - E + F)`.
    pub fn euler_genus(&self) -> usize {
        let chi = self.n_vertices() as i64 - self.n_edges() as i64 + self.n_faces() as i64;
        (2 - chi) as usize
    }

    /// Orientable genus; fails on non-orientable maps.
    pub fn genus(&self) -> Result<usize> {
        if !self.is_orientable() {
            return Err(MapError::NonOrientable("genus"));
        }
        let k = self.euler_genus();
        if !k.is_multiple_of(2) {
            return Err(MapError::Inconsistent(k));
        }
        Ok(k / 2)
    }

    /// True iff some sequence of local switches makes every edge positive.
    pub fn is_orientable(&self) -> bool {
        if !self.has_negative_edges() {
            return true;
        }
        let vof = self.vertex_of();
        let nv = self.n_vertices();
        let mut colour: Vec<i8> = vec![0; nv];
        colour[vof[0]] = 1;
        let mut queue = VecDeque::from([vof[0]]);
        let verts = self.vertices();
        while let Some(v) = queue.pop_front() {
            for &d in &verts[v] {
                let w = vof[self.alpha[d]];
                let want = colour[v] * self.sign(d);
                if colour[w] == 0 {
                    colour[w] = want;
                    queue.push_back(w);
                } else if colour[w] != want {
                    return false;
                }
            }
        }
        true
    }

    /// Local switch at the vertex of dart `d`: reverse its rotation and
    /// negate every edge with exactly one end there.
    pub fn switch_at(&self, d: usize) -> Self {
        let vof = self.vertex_of();
        let v = vof[d];
        let n = self.n_darts();
        let mut sigma = self.sigma.clone();
        let sinv = inverse(&self.sigma);
        let mut signs = self.signs.clone().unwrap_or_else(|| vec![1; n]);
        for x in 0..n {
            if vof[x] == v {
                sigma[x] = sinv[x];
                if vof[self.alpha[x]] != v {
                    signs[x] = -signs[x];
                    signs[self.alpha[x]] = -signs[self.alpha[x]];
                }
            }
        }
        CombMap {
            sigma,
            alpha: self.alpha.clone(),
            signs: Some(signs),
            root: self.root,
        }
    }

    /// Switches vertices so that every edge of a BFS spanning tree from the
    /// root vertex is positive; drops the sign vector if nothing is negative.
    pub fn normalize_signs(&self) -> Self {
        if !self.has_negative_edges() {
            let mut m = self.clone();
            m.signs = None;
            return m;
        }
        let start = self.root.unwrap_or(0);
        let vof = self.vertex_of();
        let verts = self.vertices();
        let mut flip = vec![false; verts.len()];
        let mut seen = vec![false; verts.len()];
        seen[vof[start]] = true;
        let mut queue = VecDeque::from([vof[start]]);
        while let Some(v) = queue.pop_front() {
            for &d in &verts[v] {
                let w = vof[self.alpha[d]];
                if !seen[w] {
                    seen[w] = true;
                    let s = self.sign(d) * if flip[v] { -1 } else { 1 };
                    flip[w] = s < 0;
                    queue.push_back(w);
                }
            }
        }
        let mut m = self.clone();
        for (v, &f) in flip.iter().enumerate() {
            if f {
                m = m.switch_at(verts[v][0]);
            }
        }
        if !m.has_negative_edges() {
            m.signs = None;
        }
        m
    }

    /// Conjugates by `perm` (old dart -> new dart).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.n_darts();
        let mut sigma = vec![0; n];
        let mut alpha = vec![0; n];
        let mut signs = self.signs.as_ref().map(|_| vec![1i8; n]);
        for d in 0..n {
            sigma[perm[d]] = perm[self.sigma[d]];
            alpha[perm[d]] = perm[self.alpha[d]];
            if let Some(s) = signs.as_mut() {
                s[perm[d]] = self.sign(d);
            }
        }
        CombMap {
            sigma,
            alpha,
            signs,
            root: self.root.map(|r| perm[r]),
        }
    }

    /// Breadth-first labelling from `start`: darts are numbered in order of
    /// discovery, visiting `alpha(d)` then `sigma(d)` of each labelled dart.
    pub fn bfs_labelling(&self, start: usize) -> Vec<usize> {
        let n = self.n_darts();
        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[start] = 0;
        order.push(start);
        let mut i = 0;
        while i < order.len() {
            let d = order[i];
            for e in [self.alpha[d], self.sigma[d]] {
                if label[e] == usize::MAX {
                    label[e] = order.len();
                    order.push(e);
                }
            }
            i += 1;
        }
        label
    }

    /// Relabelled copy with the root (or dart 0) as dart 0. Two rooted
    /// orientable maps are isomorphic iff their canonical forms are equal.
    pub fn canonical(&self) -> Self {
        if self.n_darts() == 0 {
            return self.clone();
        }
        let start = self.root.unwrap_or(0);
        let mut m = self.relabel(&self.bfs_labelling(start));
        if m.root.is_none() {
            m.root = Some(0);
        }
        m
    }

    /// Canonical code of the rooted map seen as a gem (flag graph), rooted at
    /// flag `(root, side 0)`. Invariant under relabelling and local switches.
    pub fn gem_code(&self) -> Vec<u32> {
        let n = self.n_darts();
        if n == 0 {
            return Vec::new();
        }
        let (tv, te) = self.flag_involutions();
        let root = 2 * self.root.unwrap_or(0);
        let nf = 2 * n;
        let mut label = vec![usize::MAX; nf];
        let mut order = vec![root];
        label[root] = 0;
        let mut i = 0;
        while i < order.len() {
            let f = order[i];
            for g in [f ^ 1, tv[f], te[f]] {
                if label[g] == usize::MAX {
                    label[g] = order.len();
                    order.push(g);
                }
            }
            i += 1;
        }
        let mut code = Vec::with_capacity(3 * nf);
        for &f in &order {
            code.push(label[f ^ 1] as u32);
            code.push(label[tv[f]] as u32);
            code.push(label[te[f]] as u32);
        }
        code
    }

    /// JSON document with darts relabelled canonically and numbered from 1.
    pub fn to_json(&self) -> String {
        let doc = self.to_doc();
        serde_json::to_string(&doc).expect("map documents always serialize")
    }

    pub(crate) fn to_doc(&self) -> MapDoc {
        let c = if self.n_darts() == 0 {
            self.clone()
        } else {
            let start = self.root.unwrap_or(0);
            self.relabel(&self.bfs_labelling(start))
        };
        let signs = if c.has_negative_edges() {
            let eof = c.edge_of();
            let mut out = BTreeMap::new();
            for d in 0..c.n_darts() {
                out.insert((eof[d] + 1).to_string(), c.sign(d));
            }
            Some(out)
        } else {
            None
        };
        MapDoc {
            n_darts: c.n_darts(),
            sigma: c.sigma.iter().map(|x| x + 1).collect(),
            alpha: c.alpha.iter().map(|x| x + 1).collect(),
            signs,
            root: c.root.map(|r| r + 1),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: MapDoc = serde_json::from_str(s).map_err(|e| MapError::Json(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub(crate) fn from_doc(doc: &MapDoc) -> Result<Self> {
        let dec = |v: &[usize], name: &str| -> Result<Vec<usize>> {
            if v.len() != doc.n_darts {
                return Err(MapError::Json(format!("{} has length {}", name, v.len())));
            }
            v.iter()
                .map(|&x| {
                    x.checked_sub(1)
                        .ok_or_else(|| MapError::Json(format!("{} uses dart 0", name)))
                })
                .collect()
        };
        let sigma = dec(&doc.sigma, "sigma")?;
        let alpha = dec(&doc.alpha, "alpha")?;
        let mut m = match &doc.signs {
            None => Self::new(sigma, alpha)?,
            Some(map) => {
                let base = Self::new(sigma.clone(), alpha.clone())?;
                let eof = base.edge_of();
                let mut per_edge = vec![1i8; base.n_edges()];
                for (k, &v) in map {
                    let e: usize = k
                        .parse()
                        .map_err(|_| MapError::Json(format!("bad edge id `{}`", k)))?;
                    if e == 0 || e > base.n_edges() {
                        return Err(MapError::Json(format!("edge id {} out of range", e)));
                    }
                    if v != 1 && v != -1 {
                        return Err(MapError::BadSign(v as i64));
                    }
                    per_edge[e - 1] = v;
                }
                let signs = (0..base.n_darts()).map(|d| per_edge[eof[d]]).collect();
                Self::new_signed(sigma, alpha, signs)?
            }
        };
        if let Some(r) = doc.root {
            m = m.with_root(r.checked_sub(1).ok_or(MapError::BadRoot(0))?)?;
        }
        Ok(m)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub(crate) struct MapDoc {
    n_darts: usize,
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    signs: Option<BTreeMap<String, i8>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    root: Option<usize>,
}

/// Permutation from 1-indexed cycle notation, e.g. `&[&[1, 3, 2, 4]]`.
pub fn perm_from_cycles(n: usize, cycles: &[&[usize]]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for c in cycles {
        for i in 0..c.len() {
            p[c[i] - 1] = c[(i + 1) % c.len()] - 1;
        }
    }
    p
}

#[cfg(test)]
mod tests;
