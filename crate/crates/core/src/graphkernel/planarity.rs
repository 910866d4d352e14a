//! Planarity by face-by-face path insertion on each block, independent of
//! the rotation search.

use super::{block_decomposition, LabelledGraph};

pub fn is_planar(g: &LabelledGraph) -> bool {
    block_decomposition(g).blocks.iter().all(|b| {
        if b.edges.len() < 3 {
            return true;
        }
        let (h, _) = g.edge_subgraph(&b.edges);
        block_is_planar(&h)
    })
}

struct Fragment {
    attachments: u64,
    /// Path between two attachments through the fragment.
    path: Vec<usize>,
}

fn block_is_planar(g: &LabelledGraph) -> bool {
    let (n, e) = (g.n(), g.n_edges());
    if n >= 3 && e > 3 * n - 6 {
        return false;
    }
    let start = match find_cycle(g) {
        Some(c) => c,
        None => return true,
    };
    let mut hv: u64 = start.iter().fold(0, |m, &v| m | 1 << v);
    let mut hadj = vec![0u64; n];
    for i in 0..start.len() {
        let (a, b) = (start[i], start[(i + 1) % start.len()]);
        hadj[a] |= 1 << b;
        hadj[b] |= 1 << a;
    }
    let mut rev = start.clone();
    rev.reverse();
    let mut faces = vec![start, rev];
    loop {
        let frags = fragments(g, hv, &hadj);
        if frags.is_empty() {
            return true;
        }
        let mut choice: Option<(usize, usize)> = None;
        for (i, f) in frags.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&k| {
                    let mask = faces[k].iter().fold(0u64, |m, &v| m | 1 << v);
                    f.attachments & !mask == 0
                })
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (fi, k) = choice.expect("fragments exist");
        let path = &frags[fi].path;
        for w in path.windows(2) {
            hadj[w[0]] |= 1 << w[1];
            hadj[w[1]] |= 1 << w[0];
            hv |= 1 << w[0] | 1 << w[1];
        }
        let face = faces.swap_remove(k);
        let (f1, f2) = split_face(&face, path);
        faces.push(f1);
        faces.push(f2);
    }
}

/// Splits the cyclic vertex list `face` by a path joining two of its
/// vertices through its interior.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (a, b) = (path[0], path[path.len() - 1]);
    let len = face.len();
    let ia = face.iter().position(|&v| v == a).expect("attachment on face");
    let ib = face.iter().position(|&v| v == b).expect("attachment on face");
    let arc = |from: usize, to: usize| -> Vec<usize> {
        let mut out = vec![face[from]];
        let mut i = from;
        while i != to {
            i = (i + 1) % len;
            out.push(face[i]);
        }
        out
    };
    let inner = &path[1..path.len() - 1];
    let mut f1 = arc(ia, ib);
    f1.extend(inner.iter().rev());
    let mut f2 = arc(ib, ia);
    f2.extend(inner.iter());
    (f1, f2)
}

fn fragments(g: &LabelledGraph, hv: u64, hadj: &[u64]) -> Vec<Fragment> {
    let n = g.n();
    let mut out = Vec::new();
    for u in 0..n {
        if hv >> u & 1 == 0 {
            continue;
        }
        let chords = g.adjacency(u) & hv & !hadj[u];
        for v in (u + 1..n).filter(|&v| chords >> v & 1 == 1) {
            out.push(Fragment {
                attachments: 1 << u | 1 << v,
                path: vec![u, v],
            });
        }
    }
    for comp in g.components_avoiding(hv) {
        let attachments = (0..n)
            .filter(|&v| comp >> v & 1 == 1)
            .fold(0u64, |m, v| m | (g.adjacency(v) & hv));
        let a = attachments.trailing_zeros() as usize;
        // breadth-first from the neighbours of a inside the fragment
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for x in (0..n).filter(|&x| comp >> x & 1 == 1 && g.has_edge(a, x)) {
            parent[x] = a;
            queue.push_back(x);
        }
        let mut path = Vec::new();
        while let Some(x) = queue.pop_front() {
            let ends = g.adjacency(x) & attachments & !(1 << a);
            if ends != 0 {
                path.push(ends.trailing_zeros() as usize);
                let mut y = x;
                while y != a {
                    path.push(y);
                    y = parent[y];
                }
                path.push(a);
                path.reverse();
                break;
            }
            for y in (0..n).filter(|&y| comp >> y & 1 == 1 && g.has_edge(x, y)) {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        debug_assert!(!path.is_empty(), "blocks give fragments two attachments");
        out.push(Fragment { attachments, path });
    }
    out
}

fn find_cycle(g: &LabelledGraph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in g.neighbours(x) {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    queue.push_back(y);
                } else if y != parent[x] && x != parent[y] {
                    // tree paths from x and y meet at their lowest common ancestor
                    let up = |mut z: usize| {
                        let mut p = vec![z];
                        while parent[z] != usize::MAX {
                            z = parent[z];
                            p.push(z);
                        }
                        p
                    };
                    let (px, py) = (up(x), up(y));
                    let lca = *px.iter().find(|v| py.contains(v)).expect("same tree");
                    let mut c: Vec<usize> = px.iter().copied().take_while(|&v| v != lca).collect();
                    c.push(lca);
                    let tail: Vec<usize> = py.iter().copied().take_while(|&v| v != lca).collect();
                    c.extend(tail.into_iter().rev());
                    return Some(c);
                }
            }
        }
    }
    None
}
