//! Graph generators for tests, verification runs and benchmarks.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::{IndexedRandom, IteratorRandom, SliceRandom};
use rand::Rng;

use crate::equivalence::TargetFamily;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexOrdering};

/// Largest `p` accepted by [`connected_chordal_graphs`].
pub const MAX_EXHAUSTIVE_P: usize = 7;

type Masks = Vec<u32>;

fn is_clique(adj: &[u32], set: u32) -> bool {
    (0..adj.len())
        .filter(|&v| set >> v & 1 == 1)
        .all(|v| adj[v] & set == set & !(1 << v))
}

fn canonical(adj: &[u32]) -> Masks {
    let n = adj.len();
    let mut best: Option<Masks> = None;
    for perm in (0..n).permutations(n) {
        let mut out = vec![0u32; n];
        for v in 0..n {
            for w in 0..n {
                if adj[v] >> w & 1 == 1 {
                    out[perm[v]] |= 1 << perm[w];
                }
            }
        }
        if best.as_ref().is_none_or(|b| out < *b) {
            best = Some(out);
        }
    }
    best.unwrap_or_default()
}

/// One representative of every isomorphism class of connected chordal graphs
/// on `p` vertices, as undirected graphs.
///
/// Every connected chordal graph arises from a smaller one by adding a vertex
/// joined to a non-empty clique, so the classes are grown vertex by vertex and
/// deduplicated by a brute-force canonical form.
pub fn connected_chordal_graphs(p: usize) -> Result<Vec<Graph>> {
    if p > MAX_EXHAUSTIVE_P {
        return Err(Error::InvalidParameter(format!(
            "exhaustive chordal corpus supports p <= {MAX_EXHAUSTIVE_P}, got {p}"
        )));
    }
    if p == 0 {
        return Ok(vec![Graph::new(0)]);
    }
    let mut level: BTreeSet<Masks> = BTreeSet::from([vec![0u32]]);
    for n in 1..p {
        let mut next = BTreeSet::new();
        for adj in &level {
            for set in 1u32..1 << n {
                if !is_clique(adj, set) {
                    continue;
                }
                let mut grown = adj.clone();
                for (v, row) in grown.iter_mut().enumerate() {
                    if set >> v & 1 == 1 {
                        *row |= 1 << n;
                    }
                }
                grown.push(set);
                next.insert(canonical(&grown));
            }
        }
        level = next;
    }
    Ok(level
        .into_iter()
        .map(|adj| {
            let lines = (0..p).flat_map(|v| {
                let row = adj[v];
                (v + 1..p)
                    .filter(move |&w| row >> w & 1 == 1)
                    .map(move |w| (v + 1, w + 1))
            });
            Graph::from_lines(p, lines.collect::<Vec<_>>()).expect("valid masks")
        })
        .collect())
}

/// Random connected chordal graph on `p` vertices with random labels.
///
/// Vertices arrive one at a time; a new vertex picks an earlier vertex `u`
/// and joins `u` together with `k` of the earlier vertices `u` was attached
/// to, `k` uniform in `0..=max_extra` and capped by their number. Those
/// always form a clique, so reversing the arrival order is a perfect
/// elimination ordering. `max_extra = 6` gives about three edges per vertex.
pub fn random_chordal<R: Rng + ?Sized>(p: usize, max_extra: usize, rng: &mut R) -> Graph {
    let mut attach: Vec<Vec<usize>> = Vec::with_capacity(p);
    let mut lines = Vec::new();
    for v in 0..p {
        if v == 0 {
            attach.push(Vec::new());
            continue;
        }
        let u = rng.random_range(0..v);
        let k = rng.random_range(0..=max_extra).min(attach[u].len());
        let mut clique: Vec<usize> = attach[u].choose_multiple(rng, k).copied().collect();
        clique.push(u);
        for &w in &clique {
            lines.push((w, v));
        }
        attach.push(clique);
    }
    let mut label: Vec<usize> = (1..=p).collect();
    label.shuffle(rng);
    Graph::from_lines(p, lines.into_iter().map(|(a, b)| (label[a], label[b])))
        .expect("generated lines are distinct")
}

/// Every acyclic orientation of the lines of `skeleton`, each one obtained
/// from some vertex ordering; sorted and deduplicated.
pub fn acyclic_orientations(skeleton: &Graph) -> Vec<Graph> {
    let p = skeleton.p();
    let mut out: Vec<Graph> = (1..=p)
        .permutations(p)
        .map(|perm| {
            skeleton.orient_by_ordering(&VertexOrdering::new(p, perm).expect("permutation"))
        })
        .collect();
    out.sort_by_cached_key(|g| g.arrows().collect::<Vec<_>>());
    out.dedup();
    out
}

/// Orientation of the lines of `skeleton` along a uniformly random ordering.
pub fn random_orientation<R: Rng + ?Sized>(skeleton: &Graph, rng: &mut R) -> Graph {
    let mut order: Vec<usize> = skeleton.vertices().collect();
    order.shuffle(rng);
    skeleton.orient_by_ordering(&VertexOrdering::new(skeleton.p(), order).expect("permutation"))
}

/// A random covering family of between 1 and `max_targets` targets.
/// Half of the families contain the observational (empty) target.
pub fn random_family<R: Rng + ?Sized>(p: usize, max_targets: usize, rng: &mut R) -> TargetFamily {
    loop {
        let n = rng.random_range(1..=max_targets.max(1));
        let mut targets: Vec<Vec<usize>> = Vec::with_capacity(n);
        if rng.random_bool(0.5) {
            targets.push(Vec::new());
        }
        while targets.len() < n {
            let size = rng.random_range(1..=p.max(1));
            let mut t: Vec<usize> = (1..=p).choose_multiple(rng, size.min(p));
            t.sort_unstable();
            targets.push(t);
        }
        if let Ok(f) = TargetFamily::new(p, targets) {
            return f;
        }
    }
}
