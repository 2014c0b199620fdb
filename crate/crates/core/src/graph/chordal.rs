//! Lexicographic BFS, perfect elimination orderings and greedy coloring.
//!
//! All routines look at the lines of a graph only, so on a chain graph they
//! act on every chain component independently.

use super::{Coloring, Graph, VertexOrdering};
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

struct Class {
    head: usize,
    len: usize,
    split: usize,
    stamp: usize,
}

/// LexBFS by partition refinement over the vertices listed in `input`.
///
/// Vertices not in `input` are ignored. Classes are kept as contiguous runs of
/// a doubly linked list; each class lists its vertices in input order, so
/// among equal labels the vertex earliest in `input` is visited first.
/// Runs in `O(n + m)` when `input` is increasing, with an extra sort of each
/// pivot's neighbor list otherwise.
pub(crate) fn lex_bfs_sequence(g: &Graph, input: &[usize]) -> Vec<usize> {
    let n = input.len();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let size = g.p() + 1;
    let mut pos = vec![NONE; size];
    for (i, &v) in input.iter().enumerate() {
        pos[v] = i;
    }
    let monotone = input.windows(2).all(|w| w[0] < w[1]);

    let mut next = vec![NONE; size];
    let mut prev = vec![NONE; size];
    for w in input.windows(2) {
        next[w[0]] = w[1];
        prev[w[1]] = w[0];
    }
    let mut head = input[0];
    let mut class_of = vec![0usize; size];
    let mut classes = vec![Class {
        head: input[0],
        len: n,
        split: NONE,
        stamp: NONE,
    }];
    // `pos[v] == NONE` marks vertices outside the domain or already visited.
    let mut scratch = Vec::new();

    for step in 0..n {
        let v = head;
        let after = next[v];
        head = after;
        if after != NONE {
            prev[after] = NONE;
        }
        let c = class_of[v];
        classes[c].len -= 1;
        classes[c].head = if classes[c].len > 0 { after } else { NONE };
        pos[v] = NONE;
        out.push(v);

        scratch.clear();
        scratch.extend(g.neighbors(v).iter().copied().filter(|&w| pos[w] != NONE));
        if !monotone {
            scratch.sort_unstable_by_key(|&w| pos[w]);
        }
        for &w in &scratch {
            let c = class_of[w];
            if classes[c].stamp != step {
                classes[c].stamp = step;
                classes[c].split = classes.len();
                classes.push(Class {
                    head: NONE,
                    len: 0,
                    split: NONE,
                    stamp: NONE,
                });
            }
            let nc = classes[c].split;
            if classes[c].head == w {
                classes[c].head = if classes[c].len > 1 { next[w] } else { NONE };
            } else {
                // unlink w, then put it right before the remaining part of c
                let (pw, nw) = (prev[w], next[w]);
                if pw != NONE {
                    next[pw] = nw;
                } else {
                    head = nw;
                }
                if nw != NONE {
                    prev[nw] = pw;
                }
                let anchor = classes[c].head;
                let before = prev[anchor];
                prev[w] = before;
                next[w] = anchor;
                prev[anchor] = w;
                if before != NONE {
                    next[before] = w;
                } else {
                    head = w;
                }
            }
            classes[c].len -= 1;
            class_of[w] = nc;
            if classes[nc].head == NONE {
                classes[nc].head = w;
            }
            classes[nc].len += 1;
        }
    }
    out
}

/// LexBFS ordering of all vertices whose input ordering starts with `prefix`
/// and continues with the remaining vertices in increasing order.
///
/// If the first `k` prefix vertices form a clique, the output starts with
/// exactly those `k` vertices in prefix order.
pub fn lex_bfs(g: &Graph, prefix: &[usize]) -> Result<VertexOrdering> {
    let p = g.p();
    let mut used = vec![false; p + 1];
    let mut input = Vec::with_capacity(p);
    for &v in prefix {
        if v == 0 || v > p {
            return Err(Error::VertexOutOfRange { vertex: v, p });
        }
        if std::mem::replace(&mut used[v], true) {
            return Err(Error::InvalidOrdering(format!("prefix repeats vertex {v}")));
        }
        input.push(v);
    }
    input.extend((1..=p).filter(|&v| !used[v]));
    Ok(VertexOrdering(lex_bfs_sequence(g, &input)))
}

/// First vertex (in `seq` order) whose earlier neighbors are not a clique.
///
/// Uses the classic parent test: with `u` the latest earlier neighbor of `v`,
/// the earlier neighbors of `v` other than `u` must all be adjacent to `u`.
pub(crate) fn peo_violation(g: &Graph, seq: &[usize]) -> Option<usize> {
    let mut pos = vec![NONE; g.p() + 1];
    for (i, &v) in seq.iter().enumerate() {
        pos[v] = i;
    }
    let mut earlier = Vec::new();
    for &v in seq {
        earlier.clear();
        earlier.extend(
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| pos[w] != NONE && pos[w] < pos[v]),
        );
        let Some(&u) = earlier.iter().max_by_key(|&&w| pos[w]) else {
            continue;
        };
        if earlier
            .iter()
            .any(|&w| w != u && g.neighbors(u).binary_search(&w).is_err())
        {
            return Some(v);
        }
    }
    None
}

pub fn is_perfect_elimination_ordering(g: &Graph, order: &VertexOrdering) -> bool {
    peo_violation(g, order.as_slice()).is_none()
}

pub fn is_chordal(g: &Graph) -> bool {
    let input: Vec<usize> = g.vertices().collect();
    peo_violation(g, &lex_bfs_sequence(g, &input)).is_none()
}

/// Greedy coloring along `order`: each vertex gets the smallest positive
/// color not used by its earlier neighbors.
pub fn greedy_coloring(g: &Graph, order: &VertexOrdering) -> Coloring {
    greedy_coloring_sequence(g, order.as_slice())
}

pub(crate) fn greedy_coloring_sequence(g: &Graph, seq: &[usize]) -> Coloring {
    let p = g.p();
    let mut colors = vec![0usize; p + 1];
    let mut seen = vec![NONE; p + 2];
    for (i, &v) in seq.iter().enumerate() {
        for &w in g.neighbors(v) {
            if colors[w] > 0 {
                seen[colors[w]] = i;
            }
        }
        let mut c = 1;
        while seen[c] == i {
            c += 1;
        }
        colors[v] = c;
    }
    Coloring::from_raw(colors)
}

/// Clique number of a chain graph: the largest clique of lines over all
/// chain components, and 1 when there are no lines.
///
/// Every chain component must be chordal; then greedy coloring along a LexBFS
/// ordering is optimal and its largest color equals the clique number.
pub fn clique_number(g: &Graph) -> Result<usize> {
    if g.p() == 0 {
        return Ok(0);
    }
    if g.n_lines() == 0 {
        return Ok(1);
    }
    let input: Vec<usize> = g.vertices().collect();
    let seq = lex_bfs_sequence(g, &input);
    if let Some(v) = peo_violation(g, &seq) {
        return Err(Error::NonChordal(v));
    }
    Ok(greedy_coloring_sequence(g, &seq).max_color())
}

/// All cliques among the line-neighbors of `v`, including the empty one.
///
/// Cliques are grown one vertex at a time from candidates adjacent to every
/// member, so each clique is produced once, in lexicographic order.
pub fn neighbor_cliques(g: &Graph, v: usize) -> Vec<Vec<usize>> {
    fn extend(
        g: &Graph,
        current: &mut Vec<usize>,
        candidates: &[usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(current.clone());
        for (i, &w) in candidates.iter().enumerate() {
            let rest: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&x| g.has_line(w, x))
                .collect();
            current.push(w);
            extend(g, current, &rest, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::new(), g.neighbors(v), &mut out);
    out
}
