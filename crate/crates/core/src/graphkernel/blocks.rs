//! Block trees and the decomposition of 2-connected graphs at separation
//! pairs.

use std::collections::BTreeSet;

use super::{GraphError, LabelledGraph, Result};

/// A block: a maximal 2-connected subgraph, a bridge, or an isolated vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    /// The block as a standalone graph, with its vertex labels.
    pub fn graph(&self, g: &LabelledGraph) -> (LabelledGraph, Vec<usize>) {
        if self.edges.is_empty() {
            return (LabelledGraph::empty(1).expect("small"), self.vertices.clone());
        }
        g.edge_subgraph(&self.edges)
    }
}

/// Blocks, cut vertices and the block/cut-vertex incidences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTree {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<usize>,
    /// `(block index, cut vertex)` incidences.
    pub incidences: Vec<(usize, usize)>,
}

impl BlockTree {
    /// Incidences form a forest with one tree per connected component.
    pub fn is_forest(&self, components: usize) -> bool {
        let nodes = self.blocks.len() + self.cut_vertices.len();
        self.incidences.len() + components == nodes
    }
}

/// Biconnected components by depth-first search with low points.
pub fn block_decomposition(g: &LabelledGraph) -> BlockTree {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    for s in 0..n {
        if disc[s] != usize::MAX {
            continue;
        }
        if g.degree(s) == 0 {
            disc[s] = time;
            time += 1;
            blocks.push(Block {
                vertices: vec![s],
                edges: Vec::new(),
            });
            continue;
        }
        // iterative DFS: (vertex, parent, remaining neighbours)
        disc[s] = time;
        low[s] = time;
        time += 1;
        let mut work: Vec<(usize, usize, u64)> = vec![(s, usize::MAX, g.adjacency(s))];
        while let Some(top) = work.last_mut() {
            let (v, parent, rest) = *top;
            if rest == 0 {
                work.pop();
                if let Some(&(p, _, _)) = work.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut edges = Vec::new();
                        while let Some(e) = stack.pop() {
                            edges.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        blocks.push(make_block(edges));
                    }
                }
                continue;
            }
            let u = rest.trailing_zeros() as usize;
            top.2 &= rest - 1;
            if u == parent {
                continue;
            }
            if disc[u] == usize::MAX {
                stack.push((v, u));
                disc[u] = time;
                low[u] = time;
                time += 1;
                work.push((u, v, g.adjacency(u)));
            } else if disc[u] < disc[v] {
                stack.push((v, u));
                low[v] = low[v].min(disc[u]);
            }
        }
    }
    let mut count = vec![0; n];
    for b in &blocks {
        for &v in &b.vertices {
            count[v] += 1;
        }
    }
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| count[v] > 1).collect();
    let mut incidences = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            if count[v] > 1 {
                incidences.push((i, v));
            }
        }
    }
    BlockTree {
        blocks,
        cut_vertices,
        incidences,
    }
}

fn make_block(edges: Vec<(usize, usize)>) -> Block {
    let mut es: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    es.sort_unstable();
    let vs: BTreeSet<usize> = es.iter().flat_map(|&(a, b)| [a, b]).collect();
    Block {
        vertices: vs.into_iter().collect(),
        edges: es,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComponentKind {
    Bond,
    Polygon,
    ThreeConnected,
}

/// A node of the decomposition: a multigraph whose edges are either real
/// edges of the input or virtual edges shared with exactly one other
/// component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    /// `(u, v, label)`: label `Real(i)` is input edge `i` (in the order of
    /// `LabelledGraph::edges`), `Virtual(k)` pairs with the same label
    /// elsewhere.
    pub edges: Vec<(usize, usize, EdgeLabel)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeLabel {
    Real(usize),
    Virtual(usize),
}

impl Component {
    pub fn vertices(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.edges.iter().flat_map(|&(u, v, _)| [u, v]).collect();
        s.into_iter().collect()
    }
}

type Multi = Vec<(usize, usize, EdgeLabel)>;

/// Tutte decomposition of a 2-connected graph into bonds, polygons and
/// 3-connected components, by repeated splitting at separation pairs
/// followed by merging of adjacent bonds and adjacent polygons.
pub fn three_connected_components(g: &LabelledGraph) -> Result<Vec<Component>> {
    if !g.is_k_connected(2) {
        return Err(GraphError::NotBiconnected);
    }
    let edges: Multi = g
        .edges()
        .into_iter()
        .enumerate()
        .map(|(i, (u, v))| (u, v, EdgeLabel::Real(i)))
        .collect();
    let mut next_virtual = 0;
    let mut pending = vec![edges];
    let mut done: Vec<Multi> = Vec::new();
    while let Some(h) = pending.pop() {
        match split_once(&h, &mut next_virtual) {
            Some((a, b)) => {
                pending.push(a);
                pending.push(b);
            }
            None => done.push(h),
        }
    }
    let mut comps: Vec<Component> = done
        .into_iter()
        .map(|edges| Component {
            kind: classify(&edges),
            edges,
        })
        .collect();
    merge_same_kind(&mut comps, ComponentKind::Bond);
    merge_same_kind(&mut comps, ComponentKind::Polygon);
    comps.sort_by_key(|a| (a.kind, a.vertices()));
    Ok(comps)
}

fn vertex_set(h: &Multi) -> Vec<usize> {
    let s: BTreeSet<usize> = h.iter().flat_map(|&(u, v, _)| [u, v]).collect();
    s.into_iter().collect()
}

fn classify(h: &Multi) -> ComponentKind {
    let vs = vertex_set(h);
    if vs.len() == 2 {
        return ComponentKind::Bond;
    }
    let is_cycle = h.len() == vs.len()
        && vs
            .iter()
            .all(|&x| h.iter().filter(|&&(u, v, _)| u == x || v == x).count() == 2);
    if is_cycle {
        ComponentKind::Polygon
    } else {
        ComponentKind::ThreeConnected
    }
}

/// Separation classes of `{a, b}`: each edge joining `a` and `b` alone, and
/// the edges of each component of `h - {a, b}`.
fn separation_classes(h: &Multi, a: usize, b: usize) -> Vec<Vec<usize>> {
    let vs = vertex_set(h);
    let mut comp_of = std::collections::BTreeMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut owner = vec![usize::MAX; h.len()];
    // union-find over vertices other than a, b
    let mut parent: std::collections::BTreeMap<usize, usize> =
        vs.iter().filter(|&&x| x != a && x != b).map(|&x| (x, x)).collect();
    fn find(p: &mut std::collections::BTreeMap<usize, usize>, x: usize) -> usize {
        let mut r = x;
        while p[&r] != r {
            r = p[&r];
        }
        let mut y = x;
        while p[&y] != r {
            let nx = p[&y];
            p.insert(y, r);
            y = nx;
        }
        r
    }
    for &(u, v, _) in h {
        if u != a && u != b && v != a && v != b {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent.insert(ru, rv);
            }
        }
    }
    for (i, &(u, v, _)) in h.iter().enumerate() {
        let inner = [u, v].into_iter().find(|&x| x != a && x != b);
        match inner {
            None => {
                owner[i] = classes.len();
                classes.push(vec![i]);
            }
            Some(x) => {
                let r = find(&mut parent, x);
                let c = *comp_of.entry(r).or_insert_with(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
                owner[i] = c;
                classes[c].push(i);
            }
        }
    }
    classes
}

fn split_once(h: &Multi, next_virtual: &mut usize) -> Option<(Multi, Multi)> {
    let vs = vertex_set(h);
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            let classes = separation_classes(h, a, b);
            if classes.len() < 2 {
                continue;
            }
            let singles: Vec<usize> = classes
                .iter()
                .filter(|c| c.len() == 1 && is_ab(h, c[0], a, b))
                .map(|c| c[0])
                .collect();
            let big: Vec<&Vec<usize>> = classes
                .iter()
                .filter(|c| !(c.len() == 1 && is_ab(h, c[0], a, b)))
                .collect();
            if big.len() >= 2 {
                // one non-trivial class against everything else
                let part: BTreeSet<usize> = big[0].iter().copied().collect();
                return Some(do_split(h, &part, a, b, next_virtual));
            }
            if big.len() == 1 && singles.len() >= 2 {
                let part: BTreeSet<usize> = singles.iter().copied().collect();
                return Some(do_split(h, &part, a, b, next_virtual));
            }
        }
    }
    None
}

fn is_ab(h: &Multi, e: usize, a: usize, b: usize) -> bool {
    let (u, v, _) = h[e];
    (u == a && v == b) || (u == b && v == a)
}

fn do_split(
    h: &Multi,
    part: &BTreeSet<usize>,
    a: usize,
    b: usize,
    next_virtual: &mut usize,
) -> (Multi, Multi) {
    let label = EdgeLabel::Virtual(*next_virtual);
    *next_virtual += 1;
    let mut x: Multi = Vec::new();
    let mut y: Multi = Vec::new();
    for (i, &e) in h.iter().enumerate() {
        if part.contains(&i) {
            x.push(e);
        } else {
            y.push(e);
        }
    }
    x.push((a, b, label));
    y.push((a, b, label));
    (x, y)
}

fn merge_same_kind(comps: &mut Vec<Component>, kind: ComponentKind) {
    loop {
        let mut found = None;
        'outer: for i in 0..comps.len() {
            if comps[i].kind != kind {
                continue;
            }
            for j in i + 1..comps.len() {
                if comps[j].kind != kind {
                    continue;
                }
                for &(_, _, l) in &comps[i].edges {
                    if matches!(l, EdgeLabel::Virtual(_))
                        && comps[j].edges.iter().any(|&(_, _, m)| m == l)
                    {
                        found = Some((i, j, l));
                        break 'outer;
                    }
                }
            }
        }
        let Some((i, j, l)) = found else { return };
        let cj = comps.remove(j);
        let ci = &mut comps[i];
        ci.edges.retain(|&(_, _, m)| m != l);
        ci.edges.extend(cj.edges.into_iter().filter(|&(_, _, m)| m != l));
    }
}

/// Glues components along matching virtual edges and drops them; returns
/// the real edges, sorted.
pub fn recompose(comps: &[Component]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = comps
        .iter()
        .flat_map(|c| c.edges.iter())
        .filter(|(_, _, l)| matches!(l, EdgeLabel::Real(_)))
        .map(|&(u, v, _)| (u.min(v), u.max(v)))
        .collect();
    out.sort_unstable();
    out
}
