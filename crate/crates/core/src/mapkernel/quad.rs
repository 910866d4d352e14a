//! The map/quadrangulation correspondence, quadrangulation predicates and
//! core extraction.

use std::collections::BTreeSet;

use super::surgery::{cut_along_cycle, cycles_of_length, face_of, CutKind, CutPiece};
use super::{CombMap, MapError, Result};

/// Quadrangulation of an orientable map: a white vertex in every face,
/// joined to every corner of that face.
///
/// For a map on darts `0..n`, black dart `d` sits in the corner following
/// `d` at its vertex and is paired with white dart `n + d`. The root maps to
/// the black dart of the root. The vertex map gives a single edge.
pub fn quadrangulation_of(m: &CombMap) -> Result<CombMap> {
    if !m.is_orientable() {
        return Err(MapError::NonOrientable("quadrangulation_of"));
    }
    let m = m.normalize_signs();
    let n = m.n_darts();
    if n == 0 {
        return Ok(CombMap::from_parts_unchecked(
            vec![0, 1],
            vec![1, 0],
            None,
            Some(0),
        ));
    }
    let mut sigma = vec![0; 2 * n];
    let mut alpha = vec![0; 2 * n];
    for d in 0..n {
        sigma[d] = m.sigma()[d];
        alpha[d] = n + d;
        alpha[n + d] = d;
    }
    for face in m.faces().faces {
        let k = face.len();
        for i in 0..k {
            let here = m.alpha()[face[i]];
            let prev = m.alpha()[face[(i + k - 1) % k]];
            sigma[n + here] = n + prev;
        }
    }
    Ok(CombMap::from_parts_unchecked(sigma, alpha, None, m.root()))
}

/// Marks the darts of black vertices: the bipartition class of the root
/// vertex (or of dart 0).
pub fn black_darts(q: &CombMap) -> Result<Vec<bool>> {
    let n = q.n_darts();
    if n == 0 {
        return Ok(Vec::new());
    }
    let vof = q.vertex_of();
    let verts = q.vertices();
    let mut colour: Vec<Option<bool>> = vec![None; verts.len()];
    let start = vof[q.root().unwrap_or(0)];
    colour[start] = Some(true);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        let c = colour[v].expect("coloured on push");
        for &d in &verts[v] {
            let w = vof[q.alpha()[d]];
            match colour[w] {
                None => {
                    colour[w] = Some(!c);
                    stack.push(w);
                }
                Some(x) if x == c => return Err(MapError::NotBipartite),
                _ => {}
            }
        }
    }
    Ok((0..n).map(|d| colour[vof[d]] == Some(true)).collect())
}

fn check_quadrangulation(q: &CombMap) -> Result<Vec<bool>> {
    if q.has_negative_edges() {
        return Err(MapError::NonOrientable("quadrangulation"));
    }
    let black = black_darts(q)?;
    if q.n_darts() == 2 && q.n_faces() == 1 {
        return Ok(black);
    }
    for f in q.faces().faces {
        if f.len() != 4 {
            return Err(MapError::FaceDegree { degree: f.len() });
        }
    }
    Ok(black)
}

/// Inverse of [`quadrangulation_of`]: black darts become the darts of the
/// map, and the two black darts of each face form an edge.
pub fn primal_of_quadrangulation(q: &CombMap) -> Result<CombMap> {
    let black = check_quadrangulation(q)?;
    if q.n_darts() == 2 {
        return Ok(CombMap::vertex_map());
    }
    let idx: Vec<usize> = {
        let mut next = 0;
        black
            .iter()
            .map(|&b| {
                if b {
                    next += 1;
                    next - 1
                } else {
                    usize::MAX
                }
            })
            .collect()
    };
    let nb = black.iter().filter(|&&b| b).count();
    let mut sigma = vec![0; nb];
    let mut alpha = vec![0; nb];
    for d in 0..q.n_darts() {
        if black[d] {
            sigma[idx[d]] = idx[q.sigma()[d]];
        }
    }
    for f in q.faces().faces {
        let bs: Vec<usize> = f.iter().copied().filter(|&d| black[d]).collect();
        alpha[idx[bs[0]]] = idx[bs[1]];
        alpha[idx[bs[1]]] = idx[bs[0]];
    }
    let root = q.root().map(|r| idx[r]);
    let m = CombMap::from_parts_unchecked(sigma, alpha, None, root);
    Ok(m)
}

fn edge_set(m: &CombMap, darts: &[usize]) -> BTreeSet<usize> {
    let eof = m.edge_of();
    darts.iter().map(|&d| eof[d]).collect()
}

fn is_facial(q: &CombMap, cycle: &[usize]) -> bool {
    let es = edge_set(q, cycle);
    q.faces()
        .faces
        .iter()
        .any(|f| f.len() == cycle.len() && edge_set(q, f) == es)
}

/// No multiple edges.
pub fn is_simple(q: &CombMap) -> bool {
    cycles_of_length(q, 2).is_empty()
}

/// No contractible 2-cycle.
pub fn is_near_simple(q: &CombMap) -> bool {
    cycles_of_length(q, 2)
        .iter()
        .all(|c| !super::is_contractible(q, c).expect("enumerated cycle"))
}

/// Simple, and every 4-cycle bounds a face.
pub fn is_irreducible(q: &CombMap) -> bool {
    is_simple(q) && cycles_of_length(q, 4).iter().all(|c| is_facial(q, c))
}

/// Simple, and every contractible 4-cycle bounds a face.
pub fn is_near_irreducible(q: &CombMap) -> bool {
    is_simple(q) && contractible_4_cycles_are_facial(q)
}

/// Every contractible closed walk of length 4 bounds a face. Walks may
/// repeat a vertex, as the boundary of a disc can touch itself on a surface
/// of positive genus.
pub fn contractible_4_cycles_are_facial(q: &CombMap) -> bool {
    closed_walks(q, 4)
        .iter()
        .all(|w| walk_is_facial(q, w) || disc_faces(q, w).is_none())
}

/// The walk, in one direction or the other, is the boundary of a face.
fn walk_is_facial(q: &CombMap, walk: &[usize]) -> bool {
    let phi = q.phi();
    let alpha = q.alpha();
    let k = walk.len();
    let forward = (0..k).all(|i| phi[walk[i]] == walk[(i + 1) % k]);
    let backward = (0..k).all(|i| phi[alpha[walk[(i + 1) % k]]] == alpha[walk[i]]);
    forward || backward
}

/// Closed walks `d_0..d_{k-1}` with `alpha(d_i)` at the vertex of
/// `d_{i+1}` through distinct edges.
fn closed_walks(q: &CombMap, len: usize) -> Vec<Vec<usize>> {
    let vof = q.vertex_of();
    let verts = q.vertices();
    let eof = q.edge_of();
    let alpha = q.alpha();
    let mut out = Vec::new();
    let mut walk = Vec::with_capacity(len);
    fn go(
        walk: &mut Vec<usize>,
        len: usize,
        verts: &[Vec<usize>],
        vof: &[usize],
        eof: &[usize],
        alpha: &[usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *walk.last().expect("non-empty walk");
        let v = vof[alpha[last]];
        if walk.len() == len {
            if v == vof[walk[0]] {
                out.push(walk.clone());
            }
            return;
        }
        for &d in &verts[v] {
            if walk.iter().any(|&w| eof[w] == eof[d]) {
                continue;
            }
            walk.push(d);
            go(walk, len, verts, vof, eof, alpha, out);
            walk.pop();
        }
    }
    for d in 0..q.n_darts() {
        walk.push(d);
        go(&mut walk, len, &verts, &vof, &eof, alpha, &mut out);
        walk.pop();
    }
    out
}

/// Darts of the faces reached from the face of `walk[0]` without crossing
/// an edge of the walk.
fn side_of(q: &CombMap, walk: &[usize]) -> Vec<bool> {
    let phi = q.phi();
    let eof = q.edge_of();
    let blocked: BTreeSet<usize> = walk.iter().map(|&d| eof[d]).collect();
    let mut inside = vec![false; q.n_darts()];
    let mut stack = vec![walk[0]];
    while let Some(d) = stack.pop() {
        if inside[d] {
            continue;
        }
        let mut x = d;
        loop {
            inside[x] = true;
            let a = q.alpha()[x];
            if !blocked.contains(&eof[x]) && !inside[a] {
                stack.push(a);
            }
            x = phi[x];
            if x == d {
                break;
            }
        }
    }
    inside
}

/// The region closed by one new face along its boundary. Returns the capped
/// map, the new index of each region dart, and the cap dart paired with
/// each boundary dart.
fn cap_region(q: &CombMap, region: &[bool]) -> (CombMap, Vec<usize>, Vec<usize>) {
    let n = q.n_darts();
    let alpha = q.alpha();
    let sigma = q.sigma();
    let sinv = super::inverse(sigma);
    let mut idx = vec![usize::MAX; n];
    let mut next = 0;
    for d in (0..n).filter(|&d| region[d]) {
        idx[d] = next;
        next += 1;
    }
    let mut cap = vec![usize::MAX; n];
    for d in (0..n).filter(|&d| region[d] && !region[alpha[d]]) {
        cap[d] = next;
        next += 1;
    }
    let mut s = vec![0; next];
    let mut a = vec![0; next];
    for d in (0..n).filter(|&d| region[d]) {
        if region[alpha[d]] {
            a[idx[d]] = idx[alpha[d]];
            s[idx[d]] = idx[sigma[d]];
        } else {
            a[idx[d]] = cap[d];
            a[cap[d]] = idx[d];
            // close the run of region darts ending at d with one cap dart
            let mut y = d;
            while region[sinv[y]] {
                y = sinv[y];
            }
            let z = alpha[sinv[y]];
            s[idx[d]] = cap[z];
            s[cap[z]] = idx[y];
        }
    }
    (CombMap::from_parts_unchecked(s, a, None, None), idx, cap)
}

/// Number of faces inside the disc bounded by `walk` on the side of its
/// darts' faces, or `None` when that side is not a disc bounded by the walk.
fn disc_faces(q: &CombMap, walk: &[usize]) -> Option<usize> {
    let region = side_of(q, walk);
    let alpha = q.alpha();
    let boundary: BTreeSet<usize> = (0..q.n_darts()).filter(|&d| region[d] && !region[alpha[d]]).collect();
    if boundary != walk.iter().copied().collect() {
        return None;
    }
    let faces = q.faces().faces.iter().filter(|f| region[f[0]]).count();
    let (capped, _, _) = cap_region(q, &region);
    if capped.euler_genus() != 0 || capped.n_faces() != faces + 1 {
        return None;
    }
    Some(faces)
}

/// Replaces the disc bounded by `walk` by a single face, moving the root
/// onto the walk if it was inside.
fn empty_walk_disc(q: &CombMap, walk: &[usize]) -> CombMap {
    let inside = side_of(q, walk);
    let outside: Vec<bool> = inside.iter().map(|&b| !b).collect();
    let (m, idx, cap) = cap_region(q, &outside);
    let root = q.root().map(|r| if outside[r] { idx[r] } else { cap[q.alpha()[walk[0]]] });
    CombMap::from_parts_unchecked(m.sigma().to_vec(), m.alpha().to_vec(), None, root)
}

/// The piece of a separating cut that keeps the rest of the surface: the
/// one of positive genus, or on the sphere the one holding the root face.
/// Returns `(kept, disk faces)`.
fn outer_piece(q: &CombMap, cut: &super::CutResult) -> Option<(usize, usize)> {
    if cut.kind != CutKind::Separating || cut.pieces.len() != 2 {
        return None;
    }
    let g: Vec<usize> = cut.pieces.iter().map(|p| p.map.euler_genus()).collect();
    let disk_faces = |p: &CutPiece| p.map.n_faces() - 1;
    if g[0] > 0 && g[1] > 0 {
        return None;
    }
    if g[0] == 0 && g[1] > 0 {
        return Some((1, disk_faces(&cut.pieces[0])));
    }
    if g[1] == 0 && g[0] > 0 {
        return Some((0, disk_faces(&cut.pieces[1])));
    }
    // sphere: the disk is the side without the root face
    let root = q.root().unwrap_or(0);
    let (qface, _) = face_of(q);
    let root_face: BTreeSet<usize> = (0..q.n_darts()).filter(|&d| qface[d] == qface[root]).collect();
    for (i, p) in cut.pieces.iter().enumerate() {
        let (pf, nf) = face_of(&p.map);
        for f in 0..nf {
            let darts: BTreeSet<usize> = (0..p.map.n_darts())
                .filter(|&d| pf[d] == f)
                .filter_map(|d| p.origin[d])
                .collect();
            let is_boundary = p.boundary.iter().any(|&b| pf[b] == f);
            if !is_boundary && darts == root_face {
                return Some((i, disk_faces(&cut.pieces[1 - i])));
            }
        }
    }
    None
}

/// Contractible cycles of length `len` together with the number of faces
/// inside their disk.
fn disk_cycles(q: &CombMap, len: usize) -> Vec<(Vec<usize>, usize, usize)> {
    let mut out = Vec::new();
    for c in cycles_of_length(q, len) {
        let cut = cut_along_cycle(q, &c, false).expect("enumerated cycle");
        if let Some((keep, faces)) = outer_piece(q, &cut) {
            out.push((c, keep, faces));
        }
    }
    out
}

/// Replaces the disk bounded by `cycle` by a single face; returns the
/// remaining map with its root carried over (moved onto the cycle if the
/// root was inside the disk).
fn empty_disk(q: &CombMap, cycle: &[usize], keep: usize) -> (CombMap, usize) {
    let cut = cut_along_cycle(q, cycle, false).expect("valid cycle");
    let piece = &cut.pieces[keep];
    let origin: Vec<usize> = piece.origin.iter().map(|o| o.expect("no specials")).collect();
    let mut root = q.root().and_then(|r| origin.iter().position(|&o| o == r));
    if root.is_none() && q.root().is_some() {
        root = origin.iter().position(|&o| o == cycle[0]);
    }
    let m = CombMap::from_parts_unchecked(
        piece.map.sigma().to_vec(),
        piece.map.alpha().to_vec(),
        None,
        root,
    );
    (m, piece.boundary[0])
}

/// Deletes one edge of a face of degree 2, keeping the root on the other.
fn merge_digon(m: &CombMap, face_dart: usize) -> CombMap {
    let phi = m.phi();
    let e1 = face_dart;
    let e2 = phi[e1];
    debug_assert_eq!(phi[e2], e1);
    let alpha = m.alpha();
    let sigma = m.sigma();
    // drop the edge {e2, alpha(e2)} unless it carries the root
    let root = m.root();
    let drop = if root == Some(e2) || root == Some(alpha[e2]) {
        e1
    } else {
        e2
    };
    let gone = [drop, alpha[drop]];
    let sinv = super::inverse(sigma);
    let mut ns = sigma.to_vec();
    for &g in &gone {
        let p = sinv[g];
        ns[p] = sigma[g];
    }
    let survivors: Vec<usize> = (0..m.n_darts()).filter(|d| !gone.contains(d)).collect();
    let mut idx = vec![usize::MAX; m.n_darts()];
    for (i, &d) in survivors.iter().enumerate() {
        idx[d] = i;
    }
    let fix = |mut d: usize| {
        while gone.contains(&d) {
            d = ns[d];
        }
        d
    };
    let sg = survivors.iter().map(|&d| idx[fix(ns[d])]).collect();
    let al = survivors.iter().map(|&d| idx[alpha[d]]).collect();
    CombMap::from_parts_unchecked(sg, al, None, root.map(|r| idx[r]))
}

/// Collapses maximal contractible 2-cycles into single edges until none is
/// left.
pub fn near_simple_core(q: &CombMap) -> Result<CombMap> {
    check_quadrangulation(q)?;
    let mut cur = q.clone();
    loop {
        let cands = disk_cycles(&cur, 2);
        let Some((c, keep, _)) = cands.into_iter().max_by_key(|(_, _, f)| *f) else {
            return Ok(cur);
        };
        let (m, digon) = empty_disk(&cur, &c, keep);
        cur = merge_digon(&m, digon);
    }
}

/// Empties every maximal contractible non-facial 4-cycle. Expects a
/// near-simple quadrangulation.
pub fn near_irreducible_core(q: &CombMap) -> Result<CombMap> {
    check_quadrangulation(q)?;
    if !is_near_simple(q) {
        return Err(MapError::Precondition("quadrangulation is not near-simple".into()));
    }
    let mut cur = q.clone();
    loop {
        let best = closed_walks(&cur, 4)
            .into_iter()
            .filter(|w| !walk_is_facial(&cur, w))
            .filter_map(|w| disc_faces(&cur, &w).map(|f| (w, f)))
            .max_by_key(|(_, f)| *f);
        let Some((w, _)) = best else {
            return Ok(cur);
        };
        cur = empty_walk_disc(&cur, &w);
    }
}
