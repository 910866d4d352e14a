//! Cycles, cutting, contractibility and widths.

use super::{CombMap, MapError, Result};

/// Edge- or face-width; `Infinite` on the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Width {
    Finite(usize),
    Infinite,
}

impl serde::Serialize for Width {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Width::Finite(k) => s.serialize_u64(*k as u64),
            Width::Infinite => s.serialize_str("inf"),
        }
    }
}

impl std::fmt::Display for Width {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Width::Finite(k) => write!(f, "{}", k),
            Width::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CutKind {
    Separating,
    Handle,
    Crosscap,
}

/// One connected piece of a cut.
#[derive(Clone, Debug)]
pub struct CutPiece {
    pub map: CombMap,
    /// Dart of the original map each new dart comes from (`None` for darts
    /// of added special vertices).
    pub origin: Vec<Option<usize>>,
    /// One dart per boundary face of this piece; the face is the one
    /// containing flag `(dart, side 0)`.
    pub boundary: Vec<usize>,
    /// One dart at each added special vertex.
    pub special: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CutResult {
    pub kind: CutKind,
    pub pieces: Vec<CutPiece>,
}

/// Checks that `cycle` lists darts `d_0..d_{k-1}` with `alpha(d_i)` at the
/// vertex of `d_{i+1}`, through distinct vertices and distinct edges.
pub fn validate_cycle(m: &CombMap, cycle: &[usize]) -> Result<()> {
    let k = cycle.len();
    if k == 0 {
        return Err(MapError::InvalidCycle("empty".into()));
    }
    let n = m.n_darts();
    if cycle.iter().any(|&d| d >= n) {
        return Err(MapError::InvalidCycle("dart out of range".into()));
    }
    let vof = m.vertex_of();
    let mut seen_v = vec![false; m.n_vertices()];
    let eof = m.edge_of();
    let mut seen_e = vec![false; m.n_edges()];
    for i in 0..k {
        let d = cycle[i];
        let next = cycle[(i + 1) % k];
        if vof[m.alpha()[d]] != vof[next] {
            return Err(MapError::InvalidCycle(format!(
                "dart {} does not lead to the vertex of dart {}",
                d, next
            )));
        }
        if std::mem::replace(&mut seen_v[vof[d]], true) {
            return Err(MapError::InvalidCycle("repeated vertex".into()));
        }
        if std::mem::replace(&mut seen_e[eof[d]], true) {
            return Err(MapError::InvalidCycle("repeated edge".into()));
        }
    }
    Ok(())
}

/// All cycles of length exactly `len`, each listed once (starting at its
/// smallest vertex, one direction only).
pub fn cycles_of_length(m: &CombMap, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len == 0 || m.n_darts() == 0 {
        return out;
    }
    let vof = m.vertex_of();
    let verts = m.vertices();
    let eof = m.edge_of();
    let alpha = m.alpha();
    for s in 0..verts.len() {
        let mut path = Vec::with_capacity(len);
        let mut on_path = vec![false; verts.len()];
        on_path[s] = true;
        extend(
            s, s, len, &verts, &vof, alpha, &eof, &mut path, &mut on_path, &mut out,
        );
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    s: usize,
    v: usize,
    len: usize,
    verts: &[Vec<usize>],
    vof: &[usize],
    alpha: &[usize],
    eof: &[usize],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    for &d in &verts[v] {
        let w = vof[alpha[d]];
        if path.len() + 1 == len {
            if w != s {
                continue;
            }
            let first = path.first().copied().unwrap_or(d);
            let keep = if len == 1 {
                d < alpha[d]
            } else {
                eof[first] < eof[d]
            };
            if keep {
                path.push(d);
                out.push(path.clone());
                path.pop();
            }
        } else if w > s && !on_path[w] {
            on_path[w] = true;
            path.push(d);
            extend(s, w, len, verts, vof, alpha, eof, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// All cycles of length at most `max_len`, shortest first.
pub fn cycles(m: &CombMap, max_len: usize) -> Vec<Vec<usize>> {
    (1..=max_len).flat_map(|l| cycles_of_length(m, l)).collect()
}

/// Cuts `m` along `cycle`, duplicating its vertices and edges; every
/// boundary is closed by a face. With `add_special_vertices` (orientable
/// bipartite maps only) each boundary instead receives a new black vertex
/// joined to its white vertices, the colouring being that of
/// [`super::black_darts`].
pub fn cut_along_cycle(
    m: &CombMap,
    cycle: &[usize],
    add_special_vertices: bool,
) -> Result<CutResult> {
    validate_cycle(m, cycle)?;
    let k = cycle.len();
    let colours = if add_special_vertices {
        if !m.is_orientable() {
            return Err(MapError::NonOrientable("special vertices"));
        }
        Some(super::black_darts(m)?)
    } else {
        None
    };

    // make every cycle edge but the last positive
    let mut w = m.clone();
    if w.has_negative_edges() {
        for i in 0..k.saturating_sub(1) {
            if w.sign(cycle[i]) < 0 {
                w = w.switch_at(cycle[i + 1]);
            }
        }
    }
    let one_sided = w.sign(cycle[k - 1]) < 0;

    let n = w.n_darts();
    let sigma = w.sigma();
    let alpha = w.alpha();
    let vof = w.vertex_of();
    let mut on_cycle_vertex = vec![usize::MAX; w.n_vertices()];
    for (i, &d) in cycle.iter().enumerate() {
        on_cycle_vertex[vof[d]] = i;
    }
    let mut is_cycle_dart = vec![false; n];
    for &d in cycle {
        is_cycle_dart[d] = true;
        is_cycle_dart[alpha[d]] = true;
    }

    // new darts: copy A of everything, copy B of cycle darts
    let mut b_copy = vec![usize::MAX; n];
    let mut origin: Vec<usize> = (0..n).collect();
    for d in 0..n {
        if is_cycle_dart[d] {
            b_copy[d] = origin.len();
            origin.push(d);
        }
    }
    let total = origin.len();
    let mut nsigma: Vec<usize> = (0..total).collect();
    let mut nalpha = vec![usize::MAX; total];
    let nsigns: Vec<i8> = origin.iter().map(|&d| w.sign(d)).collect();

    for d in 0..n {
        if on_cycle_vertex[vof[d]] == usize::MAX {
            nsigma[d] = sigma[d];
        }
    }
    for i in 0..k {
        let out = cycle[i];
        let inc = alpha[cycle[(i + k - 1) % k]];
        // side A: out, darts strictly between out and inc, inc
        let mut ring_a = vec![out];
        let mut x = sigma[out];
        while x != inc {
            ring_a.push(x);
            x = sigma[x];
        }
        ring_a.push(inc);
        let mut ring_b = vec![b_copy[inc]];
        let mut x = sigma[inc];
        while x != out {
            ring_b.push(x);
            x = sigma[x];
        }
        ring_b.push(b_copy[out]);
        for ring in [&ring_a, &ring_b] {
            for j in 0..ring.len() {
                nsigma[ring[j]] = ring[(j + 1) % ring.len()];
            }
        }
    }
    for d in 0..n {
        if !is_cycle_dart[d] {
            nalpha[d] = alpha[d];
        }
    }
    for (i, &d) in cycle.iter().enumerate() {
        let a = alpha[d];
        let twisted = one_sided && i == k - 1;
        let (pa, pb) = if twisted {
            (b_copy[a], a)
        } else {
            (a, b_copy[a])
        };
        nalpha[d] = pa;
        nalpha[pa] = d;
        nalpha[b_copy[d]] = pb;
        nalpha[pb] = b_copy[d];
    }

    // boundary representatives (flag (dart, 0) lies on the boundary face)
    let mut boundary_reps = vec![cycle[0]];
    if !one_sided {
        boundary_reps.push(b_copy[alpha[cycle[k - 1]]]);
    }

    let signed = w.signs().is_some();
    let comps = components(&nsigma, &nalpha);
    let kind = match (one_sided, comps.len()) {
        (true, _) => CutKind::Crosscap,
        (false, 1) => CutKind::Handle,
        _ => CutKind::Separating,
    };
    let mut pieces = Vec::new();
    for comp in comps {
        let mut idx = vec![usize::MAX; total];
        for (j, &d) in comp.iter().enumerate() {
            idx[d] = j;
        }
        let sg: Vec<usize> = comp.iter().map(|&d| idx[nsigma[d]]).collect();
        let al: Vec<usize> = comp.iter().map(|&d| idx[nalpha[d]]).collect();
        let sn = signed.then(|| comp.iter().map(|&d| nsigns[d]).collect::<Vec<_>>());
        let root = m
            .root()
            .and_then(|r| if idx[r] != usize::MAX { Some(idx[r]) } else { None });
        let map = CombMap::from_parts_unchecked(sg, al, sn, root);
        let boundary: Vec<usize> = boundary_reps
            .iter()
            .filter(|&&b| idx[b] != usize::MAX)
            .map(|&b| idx[b])
            .collect();
        let origin_p: Vec<Option<usize>> = comp.iter().map(|&d| Some(origin[d])).collect();
        let mut piece = CutPiece {
            map,
            origin: origin_p,
            boundary,
            special: Vec::new(),
        };
        if let Some(col) = &colours {
            add_specials(&mut piece, col)?;
        }
        pieces.push(piece);
    }
    Ok(CutResult { kind, pieces })
}

fn components(sigma: &[usize], alpha: &[usize]) -> Vec<Vec<usize>> {
    let n = sigma.len();
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let c = out.len();
        let mut members = vec![s];
        comp[s] = c;
        let mut i = 0;
        while i < members.len() {
            let d = members[i];
            for e in [sigma[d], alpha[d]] {
                if comp[e] == usize::MAX {
                    comp[e] = c;
                    members.push(e);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Inserts a black vertex in every boundary face of an orientable piece,
/// joined to the white corners of that face.
fn add_specials(piece: &mut CutPiece, black: &[bool]) -> Result<()> {
    let mut sigma = piece.map.sigma().to_vec();
    let mut alpha = piece.map.alpha().to_vec();
    let mut origin = piece.origin.clone();
    let is_black = |d: usize, origin: &[Option<usize>]| origin[d].map(|o| black[o]);
    let phi = piece.map.phi();
    let mut special = Vec::new();
    for &b in &piece.boundary {
        let mut face = vec![b];
        let mut x = phi[b];
        while x != b {
            face.push(x);
            x = phi[x];
        }
        let l = face.len();
        let mut hub = Vec::new();
        for j in 0..l {
            let y = face[j];
            let next = face[(j + 1) % l];
            if is_black(next, &origin) != Some(false) {
                continue;
            }
            let z = sigma.len();
            let zp = z + 1;
            let before = alpha[y];
            sigma.push(next);
            sigma[before] = z;
            sigma.push(zp);
            alpha.push(zp);
            alpha.push(z);
            origin.push(None);
            origin.push(None);
            hub.push(zp);
        }
        if hub.is_empty() {
            return Err(MapError::Precondition(
                "boundary face has no white vertex".into(),
            ));
        }
        for j in 0..hub.len() {
            sigma[hub[j]] = hub[(j + hub.len() - 1) % hub.len()];
        }
        special.push(hub[0]);
    }
    let root = piece.map.root();
    piece.map = CombMap::from_parts_unchecked(sigma, alpha, None, root);
    piece.origin = origin;
    piece.special = special;
    Ok(())
}

/// True iff cutting along `cycle` separates `m` and one capped side is a
/// sphere.
pub fn is_contractible(m: &CombMap, cycle: &[usize]) -> Result<bool> {
    let cut = cut_along_cycle(m, cycle, false)?;
    Ok(cut.kind == CutKind::Separating && cut.pieces.iter().any(|p| p.map.euler_genus() == 0))
}

/// Length of a shortest non-contractible cycle.
pub fn edge_width(m: &CombMap) -> Width {
    if m.euler_genus() == 0 {
        return Width::Infinite;
    }
    for len in 1..=m.n_vertices() {
        for c in cycles_of_length(m, len) {
            if !is_contractible(m, &c).expect("enumerated cycles are valid") {
                return Width::Finite(len);
            }
        }
    }
    unreachable!("a map of positive genus has a non-contractible cycle")
}

/// Half the edge-width of the quadrangulation.
pub fn face_width(m: &CombMap) -> Result<Width> {
    if m.euler_genus() == 0 {
        return Ok(Width::Infinite);
    }
    let q = super::quadrangulation_of(m)?;
    Ok(match edge_width(&q) {
        Width::Finite(k) => Width::Finite(k / 2),
        Width::Infinite => Width::Infinite,
    })
}

/// Face index (orbit of `phi`) of each dart in an orientable map.
pub(crate) fn face_of(m: &CombMap) -> (Vec<usize>, usize) {
    let phi = m.phi();
    let mut of = vec![usize::MAX; m.n_darts()];
    let mut count = 0;
    for s in 0..m.n_darts() {
        if of[s] != usize::MAX {
            continue;
        }
        let mut d = s;
        while of[d] == usize::MAX {
            of[d] = count;
            d = phi[d];
        }
        count += 1;
    }
    (of, count)
}
