//! Embedding oracles by exhaustive search over embedding schemes.
//!
//! Edge `i` of [`LabelledGraph::edges`] carries darts `2i` (at its smaller
//! end) and `2i + 1`. A scheme fixes a rotation at every vertex and a sign on
//! every edge; faces are cycles of the flag graph, which is built
//! incrementally while rotations are chosen so that partial face counts
//! bound the best completion.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use super::{block_decomposition, GraphError, LabelledGraph, Result};
use crate::mapkernel::{face_width, CombMap, Width};

/// An exact value, or a certified interval when the search budget ran out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound<T = usize> {
    Exact(T),
    Interval { lo: T, hi: T },
}

impl<T: Copy + Ord> Bound<T> {
    pub fn exact(self) -> Option<T> {
        match self {
            Bound::Exact(v) => Some(v),
            Bound::Interval { .. } => None,
        }
    }

    pub fn lo(self) -> T {
        match self {
            Bound::Exact(v) => v,
            Bound::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(self) -> T {
        match self {
            Bound::Exact(v) => v,
            Bound::Interval { hi, .. } => hi,
        }
    }

    fn from_range(lo: T, hi: T) -> Self {
        if lo == hi {
            Bound::Exact(lo)
        } else {
            Bound::Interval { lo, hi }
        }
    }
}

impl Bound<usize> {
    fn add(self, other: Bound<usize>) -> Bound<usize> {
        Bound::from_range(self.lo() + other.lo(), self.hi() + other.hi())
    }
}

/// Maximum number of search nodes (one node per rotation link placed).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { nodes: 200_000_000 }
    }
}

impl SearchBudget {
    pub fn nodes(nodes: u64) -> Self {
        SearchBudget { nodes }
    }
}

/// Rotation system and signs as a map. `rotation[v]` lists the neighbours of
/// `v` in counterclockwise order; `negative` lists edges `(u, v)` with sign −.
pub fn rotation_map(
    g: &LabelledGraph,
    rotation: &[Vec<usize>],
    negative: &[(usize, usize)],
) -> Result<CombMap> {
    let edges = g.edges();
    let dart = |u: usize, v: usize| -> Result<usize> {
        let (a, b) = (u.min(v), u.max(v));
        let i = edges
            .binary_search(&(a, b))
            .map_err(|_| GraphError::Json(format!("({}, {}) is not an edge", u + 1, v + 1)))?;
        Ok(if u < v { 2 * i } else { 2 * i + 1 })
    };
    if rotation.len() != g.n() {
        return Err(GraphError::Json("one rotation per vertex is required".into()));
    }
    let mut sigma = vec![usize::MAX; 2 * edges.len()];
    for (v, rot) in rotation.iter().enumerate() {
        if rot.len() != g.degree(v) {
            return Err(GraphError::Json(format!("rotation at {} misses neighbours", v + 1)));
        }
        for (k, &u) in rot.iter().enumerate() {
            let next = rot[(k + 1) % rot.len()];
            sigma[dart(v, u)?] = dart(v, next)?;
        }
    }
    let alpha: Vec<usize> = (0..sigma.len()).map(|d| d ^ 1).collect();
    let mut signs = vec![1i8; sigma.len()];
    for &(u, v) in negative {
        let d = dart(u, v)?;
        signs[d] = -1;
        signs[d ^ 1] = -1;
    }
    let bad = |e: crate::mapkernel::MapError| GraphError::Json(e.to_string());
    if negative.is_empty() {
        CombMap::new(sigma, alpha).map_err(bad)
    } else {
        CombMap::new_signed(sigma, alpha, signs).map_err(bad)
    }
}

/// Orientable genus, blockwise (the genus of a graph is the sum over its
/// blocks).
pub fn genus(g: &LabelledGraph) -> Bound {
    genus_blockwise(g, SearchBudget::default())
}

pub fn genus_blockwise(g: &LabelledGraph, budget: SearchBudget) -> Bound {
    let tree = block_decomposition(g);
    tree.blocks
        .iter()
        .filter(|b| b.edges.len() >= 3)
        .map(|b| {
            let (h, _) = g.edge_subgraph(&b.edges);
            connected_genus(&h, budget)
        })
        .fold(Bound::Exact(0), Bound::add)
}

/// Orientable genus by searching rotations of each connected component as a
/// whole.
pub fn genus_whole(g: &LabelledGraph, budget: SearchBudget) -> Bound {
    g.components()
        .into_iter()
        .map(|mask| connected_genus(&g.induced(mask).0, budget))
        .fold(Bound::Exact(0), Bound::add)
}

fn connected_genus(h: &LabelledGraph, budget: SearchBudget) -> Bound {
    let (v, e) = (h.n(), h.n_edges());
    if e + 1 == v {
        return Bound::Exact(0);
    }
    let engine = Engine::new(h);
    // F ≡ E − V (mod 2) and F ≤ E − V + 2
    let mut cap = engine.face_cap().min(e + 2 - v);
    if (cap + e + v) % 2 == 1 {
        cap -= 1;
    }
    let out = engine.maximize(&[Vec::new()], cap, budget);
    let g_of = |f: usize| (2 + e - v - f) / 2;
    if out.complete {
        Bound::Exact(g_of(out.best))
    } else {
        Bound::from_range(g_of(cap), g_of(out.best.max(1)))
    }
}

/// Minimum Euler genus over all embedding schemes; additive over
/// connected components.
pub fn euler_genus_graph(g: &LabelledGraph, budget: SearchBudget) -> Bound {
    g.components()
        .into_iter()
        .map(|mask| connected_euler(&g.induced(mask).0, false, budget))
        .fold(Bound::Exact(0), Bound::add)
}

/// Non-orientable genus: the least Euler genus of a scheme with a negative
/// cycle. For disconnected graphs one component is embedded non-orientably
/// and the others at their Euler genus. Forests get 1, the projective plane
/// being the simplest non-orientable surface.
pub fn nonorientable_genus(g: &LabelledGraph, budget: SearchBudget) -> Bound {
    let comps: Vec<LabelledGraph> = g.components().into_iter().map(|m| g.induced(m).0).collect();
    let kappa: Vec<Bound> = comps.iter().map(|c| connected_euler(c, false, budget)).collect();
    let total = kappa.iter().fold(Bound::Exact(0), |a, &b| a.add(b));
    let mut best: Option<Bound> = None;
    for (i, c) in comps.iter().enumerate() {
        let h = connected_euler(c, true, budget);
        let rest = Bound::from_range(total.lo() - kappa[i].lo(), total.hi() - kappa[i].hi());
        let cand = h.add(rest);
        best = Some(match best {
            None => cand,
            Some(b) => Bound::from_range(b.lo().min(cand.lo()), b.hi().min(cand.hi())),
        });
    }
    best.unwrap_or(Bound::Exact(1))
}

fn connected_euler(h: &LabelledGraph, non_orientable: bool, budget: SearchBudget) -> Bound {
    let (v, e) = (h.n(), h.n_edges());
    if e + 1 == v {
        return Bound::Exact(usize::from(non_orientable));
    }
    let engine = Engine::new(h);
    let cotree = engine.cotree_edges();
    let patterns: Vec<Vec<usize>> = (0u64..1 << cotree.len())
        .filter(|&bits| !non_orientable || bits != 0)
        .map(|bits| {
            cotree
                .iter()
                .enumerate()
                .filter(|&(k, _)| bits >> k & 1 == 1)
                .map(|(_, &i)| i)
                .collect()
        })
        .collect();
    let floor = usize::from(non_orientable);
    let cap = engine.face_cap().min(e + 2 - v - floor);
    let out = engine.maximize(&patterns, cap, budget);
    let k_of = |f: usize| 2 + e - v - f;
    if out.complete {
        Bound::Exact(k_of(out.best))
    } else {
        Bound::from_range(k_of(cap), k_of(out.best.max(1)))
    }
}

/// Largest face-width over the orientable embeddings of genus `at_genus`
/// (default: the minimum genus), `Infinite` in genus 0. Disconnected
/// graphs report the minimum over components.
pub fn face_width_graph(
    g: &LabelledGraph,
    at_genus: Option<usize>,
    budget: SearchBudget,
) -> Bound<Width> {
    let mut result: Option<Bound<Width>> = None;
    for mask in g.components() {
        let (h, _) = g.induced(mask);
        let fw = connected_face_width(&h, at_genus, budget);
        result = Some(match result {
            None => fw,
            Some(b) => Bound::from_range(b.lo().min(fw.lo()), b.hi().min(fw.hi())),
        });
    }
    result.unwrap_or(Bound::Exact(Width::Infinite))
}

fn connected_face_width(h: &LabelledGraph, at_genus: Option<usize>, budget: SearchBudget) -> Bound<Width> {
    let (v, e) = (h.n(), h.n_edges());
    let target_genus = match at_genus {
        Some(t) => t,
        None => match connected_genus(h, budget) {
            Bound::Exact(t) => t,
            Bound::Interval { .. } => {
                return Bound::Interval {
                    lo: Width::Finite(0),
                    hi: Width::Infinite,
                }
            }
        },
    };
    if target_genus == 0 {
        return Bound::Exact(Width::Infinite);
    }
    if e + 2 < v + 2 * target_genus + 1 {
        // not enough edges for a single face at this genus
        return Bound::Exact(Width::Finite(0));
    }
    let target = e + 2 - v - 2 * target_genus;
    let engine = Engine::new(h);
    let best = Mutex::new(None::<Width>);
    let complete = engine.enumerate(target, budget, &|sigma: &[usize]| {
        let alpha: Vec<usize> = (0..sigma.len()).map(|d| d ^ 1).collect();
        let map = CombMap::new(sigma.to_vec(), alpha).expect("valid rotation system");
        let w = face_width(&map).expect("orientable");
        let mut b = best.lock().expect("not poisoned");
        if b.is_none_or(|x| w > x) {
            *b = Some(w);
        }
    });
    let best = best.into_inner().expect("not poisoned");
    match (complete, best) {
        (true, Some(w)) => Bound::Exact(w),
        // no embedding of that genus
        (true, None) => Bound::Exact(Width::Finite(0)),
        (false, b) => Bound::Interval {
            lo: b.unwrap_or(Width::Finite(0)),
            hi: Width::Finite(v),
        },
    }
}

struct Outcome {
    best: usize,
    complete: bool,
}

/// Search state shared by every work unit of one search.
struct Shared {
    best: AtomicUsize,
    nodes: AtomicU64,
    stop: AtomicBool,
    aborted: AtomicBool,
    limit: u64,
}

struct Engine {
    n_darts: usize,
    /// Darts at each vertex in the search order; the first one is fixed.
    darts_at: Vec<Vec<usize>>,
    /// Minimum number of flags on a face.
    min_face_flags: usize,
    tree: Vec<bool>,
}

impl Engine {
    fn new(h: &LabelledGraph) -> Engine {
        let edges = h.edges();
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); h.n()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            at[u].push(2 * i);
            at[v].push(2 * i + 1);
        }
        // decreasing degree, ties broken towards vertices with many placed
        // neighbours so that faces close early
        let mut order: Vec<usize> = Vec::new();
        let mut placed = 0u64;
        while let Some(v) = (0..h.n())
            .filter(|&v| h.degree(v) > 0 && placed >> v & 1 == 0)
            .max_by_key(|&v| {
                let near = (h.adjacency(v) & placed).count_ones();
                (near > 0 || placed == 0, h.degree(v), near, std::cmp::Reverse(v))
            })
        {
            placed |= 1 << v;
            order.push(v);
        }
        let min_deg = (0..h.n()).map(|v| h.degree(v)).min().unwrap_or(0);
        // a face walk without backtracking contains a cycle
        let min_len = if min_deg >= 2 { girth(h).unwrap_or(3).max(3) } else { 3 };
        let mut tree = vec![false; edges.len()];
        let mut seen = 1u64 << order.first().copied().unwrap_or(0);
        let mut queue = vec![order.first().copied().unwrap_or(0)];
        while let Some(x) = queue.pop() {
            for (i, &(u, v)) in edges.iter().enumerate() {
                let y = if u == x { v } else if v == x { u } else { continue };
                if seen >> y & 1 == 0 {
                    seen |= 1 << y;
                    tree[i] = true;
                    queue.insert(0, y);
                }
            }
        }
        Engine {
            n_darts: 2 * edges.len(),
            darts_at: order.into_iter().map(|v| std::mem::take(&mut at[v])).collect(),
            min_face_flags: 2 * min_len,
            tree,
        }
    }

    fn cotree_edges(&self) -> Vec<usize> {
        (0..self.tree.len()).filter(|&i| !self.tree[i]).collect()
    }

    /// Face-count ceiling from face lengths alone.
    fn face_cap(&self) -> usize {
        2 * self.n_darts / self.min_face_flags
    }

    /// Work units: one per (sign pattern, rotation at the first vertex).
    fn units(&self, patterns: &[Vec<usize>]) -> Vec<(usize, Vec<usize>)> {
        let first = &self.darts_at[0];
        let mut rest: Vec<usize> = first[1..].to_vec();
        let mut orders = Vec::new();
        loop {
            let mut o = vec![first[0]];
            o.extend_from_slice(&rest);
            orders.push(o);
            if !crate::census::maps::next_permutation(&mut rest) {
                break;
            }
        }
        (0..patterns.len())
            .flat_map(|p| orders.iter().map(move |o| (p, o.clone())))
            .collect()
    }

    fn state(&self, negative: &[usize], first: &[usize]) -> State {
        let n_flags = 2 * self.n_darts;
        let mut te = vec![0; n_flags];
        for d in 0..self.n_darts {
            let neg = negative.contains(&(d / 2));
            for s in 0..2 {
                let t = if neg { s } else { 1 - s };
                te[2 * d + s] = 2 * (d ^ 1) + t;
            }
        }
        let mut st = State {
            other: te,
            len: vec![2; n_flags],
            closed: 0,
            long: 0,
            short_flags: n_flags,
            min_face_flags: self.min_face_flags,
            log: Vec::new(),
            sigma: vec![usize::MAX; self.n_darts],
        };
        st.place_cycle(first);
        st
    }

    fn maximize(&self, patterns: &[Vec<usize>], cap: usize, budget: SearchBudget) -> Outcome {
        let shared = Shared {
            best: AtomicUsize::new(0),
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            aborted: AtomicBool::new(false),
            limit: budget.nodes,
        };
        self.units(patterns).into_par_iter().for_each(|(p, first)| {
            if shared.stop.load(Ordering::Relaxed) {
                return;
            }
            let mut st = self.state(&patterns[p], &first);
            let mut local = 0u64;
            self.dfs(&mut st, 1, &mut Vec::new(), &shared, &mut local, &mut |st: &State| {
                shared.best.fetch_max(st.closed, Ordering::Relaxed);
                if st.closed >= cap {
                    shared.stop.store(true, Ordering::Relaxed);
                }
            }, &|| shared.best.load(Ordering::Relaxed) + 1);
            shared.nodes.fetch_add(local, Ordering::Relaxed);
        });
        Outcome {
            best: shared.best.into_inner(),
            complete: !shared.aborted.into_inner(),
        }
    }

    /// Visits every orientable rotation system with exactly `target` faces;
    /// returns false if the budget ran out.
    fn enumerate(&self, target: usize, budget: SearchBudget, visit: &(dyn Fn(&[usize]) + Sync)) -> bool {
        let shared = Shared {
            best: AtomicUsize::new(0),
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            aborted: AtomicBool::new(false),
            limit: budget.nodes,
        };
        self.units(&[Vec::new()]).into_par_iter().for_each(|(_, first)| {
            let mut st = self.state(&[], &first);
            let mut local = 0u64;
            self.dfs(&mut st, 1, &mut Vec::new(), &shared, &mut local, &mut |st: &State| {
                if st.closed == target {
                    visit(&st.sigma);
                }
            }, &|| target);
        });
        !shared.aborted.into_inner()
    }

    /// Chooses the rotation at vertex `vi`, one dart at a time. `need` is the
    /// least face count worth reaching.
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        st: &mut State,
        vi: usize,
        seq: &mut Vec<usize>,
        shared: &Shared,
        local: &mut u64,
        leaf: &mut dyn FnMut(&State),
        need: &dyn Fn() -> usize,
    ) {
        if shared.stop.load(Ordering::Relaxed) {
            return;
        }
        *local += 1;
        if *local >= 4096 {
            let total = shared.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
            *local = 0;
            if total > shared.limit {
                shared.aborted.store(true, Ordering::Relaxed);
                shared.stop.store(true, Ordering::Relaxed);
                return;
            }
        }
        if st.upper_bound() < need() {
            return;
        }
        if vi == self.darts_at.len() {
            leaf(st);
            return;
        }
        let darts = &self.darts_at[vi];
        if seq.len() == darts.len() {
            let mark = st.log.len();
            st.close_rotation(seq);
            let mut next = Vec::new();
            self.dfs(st, vi + 1, &mut next, shared, local, leaf, need);
            st.undo(mark);
            return;
        }
        if seq.is_empty() {
            seq.push(darts[0]);
            self.dfs(st, vi, seq, shared, local, leaf, need);
            seq.pop();
            return;
        }
        let last = *seq.last().expect("non-empty");
        // links that close a face first
        let mut cands: Vec<usize> = darts[1..].iter().copied().filter(|d| !seq.contains(d)).collect();
        cands.sort_by_key(|&d| !st.closes(last, d));
        for d in cands {
            let mark = st.log.len();
            st.link(last, d);
            seq.push(d);
            self.dfs(st, vi, seq, shared, local, leaf, need);
            seq.pop();
            st.undo(mark);
        }
    }
}

enum Undo {
    Closed(usize),
    Joined { s: usize, os: usize, ls: usize, e: usize, oe: usize, le: usize },
}

/// Flag paths under the links placed so far; `other[x]` is the far end of
/// the path ending at `x` and `len[x]` its number of flags. Open paths with
/// at least `min_face_flags` flags are `long`: each can still account for
/// one face at most.
struct State {
    other: Vec<usize>,
    len: Vec<usize>,
    closed: usize,
    long: usize,
    short_flags: usize,
    min_face_flags: usize,
    log: Vec<Undo>,
    sigma: Vec<usize>,
}

impl State {
    fn upper_bound(&self) -> usize {
        self.closed + self.long + self.short_flags / self.min_face_flags
    }

    fn account(&mut self, l: usize, sign: isize) {
        if l >= self.min_face_flags {
            self.long = (self.long as isize + sign) as usize;
        } else {
            self.short_flags = (self.short_flags as isize + sign * l as isize) as usize;
        }
    }

    fn closes(&self, a: usize, b: usize) -> bool {
        self.other[2 * a + 1] == 2 * b
    }

    /// σ(a) = b: joins flag (a, 1) to flag (b, 0).
    fn link(&mut self, a: usize, b: usize) {
        self.sigma[a] = b;
        let (x, y) = (2 * a + 1, 2 * b);
        if self.other[x] == y {
            let l = self.len[x];
            self.account(l, -1);
            self.closed += 1;
            self.log.push(Undo::Closed(l));
            return;
        }
        let (s, e) = (self.other[x], self.other[y]);
        self.log.push(Undo::Joined {
            s,
            os: self.other[s],
            ls: self.len[s],
            e,
            oe: self.other[e],
            le: self.len[e],
        });
        let (lx, ly) = (self.len[x], self.len[y]);
        self.account(lx, -1);
        self.account(ly, -1);
        self.account(lx + ly, 1);
        self.other[s] = e;
        self.other[e] = s;
        self.len[s] = lx + ly;
        self.len[e] = lx + ly;
    }

    fn close_rotation(&mut self, seq: &[usize]) {
        let (last, first) = (seq[seq.len() - 1], seq[0]);
        self.link(last, first);
    }

    fn place_cycle(&mut self, seq: &[usize]) {
        for w in seq.windows(2) {
            self.link(w[0], w[1]);
        }
        self.close_rotation(seq);
    }

    fn undo(&mut self, mark: usize) {
        while self.log.len() > mark {
            match self.log.pop().expect("non-empty") {
                Undo::Closed(l) => {
                    self.closed -= 1;
                    self.account(l, 1);
                }
                Undo::Joined { s, os, ls, e, oe, le } => {
                    self.account(ls + le, -1);
                    self.account(ls, 1);
                    self.account(le, 1);
                    self.other[e] = oe;
                    self.len[e] = le;
                    self.other[s] = os;
                    self.len[s] = ls;
                }
            }
        }
    }
}

fn girth(h: &LabelledGraph) -> Option<usize> {
    let n = h.n();
    let mut best: Option<usize> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in h.neighbours(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let c = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(c, |b| b.min(c)));
                }
            }
        }
    }
    best
}
