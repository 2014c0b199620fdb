//! Brute-force enumeration of equivalence classes, used as a test oracle.

use std::collections::BTreeSet;

use super::{i_markov_equivalent, EssentialGraph, TargetFamily};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

type Triple = (usize, usize, usize);

fn reaches(g: &Graph, from: usize, to: usize, seen: &mut [bool]) -> bool {
    seen.iter_mut().for_each(|s| *s = false);
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        for &c in g.children(v) {
            if !seen[c] {
                seen[c] = true;
                stack.push(c);
            }
        }
    }
    false
}

/// Depth-first search over the orientations of `free`, starting from the
/// arrows of `base`. A branch is cut as soon as it closes a directed cycle or
/// creates a collider outside `allowed`. Leaves must be DAGs whose
/// v-structures equal `allowed` exactly.
struct Orienter<'a> {
    free: &'a [(usize, usize)],
    allowed: &'a BTreeSet<Triple>,
    seen: Vec<bool>,
    out: Vec<Graph>,
}

impl Orienter<'_> {
    fn admissible(&mut self, g: &Graph, u: usize, v: usize) -> bool {
        if reaches(g, v, u, &mut self.seen) {
            return false;
        }
        g.parents(v).iter().all(|&w| {
            w == u || g.is_adjacent(w, u) || self.allowed.contains(&(w.min(u), v, w.max(u)))
        })
    }

    fn run(&mut self, g: &mut Graph, i: usize) {
        if i == self.free.len() {
            if g.is_dag() && g.v_structures() == *self.allowed {
                self.out.push(g.clone());
            }
            return;
        }
        let (a, b) = self.free[i];
        for (u, v) in [(a, b), (b, a)] {
            g.add_line(a, b).expect("vertices are in range");
            if self.admissible(g, u, v) {
                g.add_arrow(u, v).expect("vertices are in range");
                self.run(g, i + 1);
            }
        }
        g.add_line(a, b).expect("vertices are in range");
    }
}

fn orientations(base: &Graph, free: &[(usize, usize)], allowed: &BTreeSet<Triple>) -> Vec<Graph> {
    let mut free = free.to_vec();
    // finish small vertex sets first so cycle and collider checks bite early
    free.sort_by_key(|&(a, b)| (a.max(b), a.min(b)));
    let mut g = base.clone();
    for &(a, b) in &free {
        g.add_line(a, b).expect("vertices are in range");
    }
    let mut o = Orienter {
        free: &free,
        allowed,
        seen: vec![false; base.p() + 1],
        out: Vec::new(),
    };
    o.run(&mut g, 0);
    o.out
}

fn canonical_sort(class: &mut [Graph]) {
    class.sort_by_cached_key(|g| g.arrows().collect::<Vec<_>>());
}

/// Every DAG `I`-Markov equivalent to `d`, straight from the pairwise
/// criterion: an acyclic orientation of the skeleton of `d` with the same
/// v-structures, and with the orientation of `d` on every edge whose
/// endpoints some target separates (those edges are exactly the ones that
/// would change the skeleton of an intervention graph).
pub fn dag_equivalence_class(d: &Graph, family: &TargetFamily, bound: usize) -> Result<Vec<Graph>> {
    if d.p() > bound {
        return Err(Error::EnumerationBound { p: d.p(), bound });
    }
    if d.p() != family.p() {
        return Err(Error::SizeMismatch(d.p(), family.p()));
    }
    if !d.is_dag() {
        return Err(Error::NotADag);
    }
    let mut base = Graph::new(d.p());
    let mut free = Vec::new();
    for (a, b) in d.arrows() {
        if family.separates(a, b) {
            base.add_arrow(a, b)?;
        } else {
            free.push((a, b));
        }
    }
    let mut class = orientations(&base, &free, &d.v_structures());
    canonical_sort(&mut class);
    Ok(class)
}

/// All DAGs represented by `g`, in canonical order.
///
/// Lines are oriented chain component by chain component (acyclic, no
/// collider inside the component); the product of those choices is kept when
/// it adds no v-structure to `g` and is equivalent, under the family of `g`,
/// to the first such DAG.
pub fn enumerate_equivalence_class(g: &EssentialGraph, bound: usize) -> Result<Vec<Graph>> {
    let graph = g.graph();
    let p = graph.p();
    if p > bound {
        return Err(Error::EnumerationBound { p, bound });
    }
    let none = BTreeSet::new();
    let per_component: Vec<Vec<Graph>> = graph
        .chain_components()
        .iter()
        .filter(|c| c.len() > 1)
        .map(|comp| {
            let sub = graph.restrict_to(comp);
            let lines: Vec<(usize, usize)> = sub.lines().collect();
            orientations(&Graph::new(p), &lines, &none)
        })
        .collect();

    let expected = graph.v_structures();
    let mut candidates = Vec::new();
    let mut choice = vec![0usize; per_component.len()];
    if per_component.iter().all(|c| !c.is_empty()) {
        loop {
            let mut dag = graph.clone();
            for (k, &i) in choice.iter().enumerate() {
                for (a, b) in per_component[k][i].arrows() {
                    dag.add_arrow(a, b)?;
                }
            }
            if dag.is_dag() && dag.v_structures() == expected {
                candidates.push(dag);
            }
            // odometer increment
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < per_component[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }
    let Some(first) = candidates.first().cloned() else {
        return Ok(candidates);
    };
    let mut class: Vec<Graph> = candidates
        .into_iter()
        .filter(|d| i_markov_equivalent(&first, d, g.family()))
        .collect();
    canonical_sort(&mut class);
    Ok(class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::essential_graph;

    fn fig1a() -> Graph {
        Graph::from_arrows(4, [(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn observational_class_of_fig1a_has_three_members() {
        let d = fig1a();
        let e = essential_graph(&d, &TargetFamily::observational(4)).unwrap();
        let class = enumerate_equivalence_class(&e, DEFAULT_ENUMERATION_BOUND).unwrap();
        let d1 = Graph::from_arrows(4, [(1, 2), (2, 4), (3, 1), (3, 4)]).unwrap();
        let d2 = Graph::from_arrows(4, [(1, 3), (2, 1), (2, 4), (3, 4)]).unwrap();
        assert_eq!(class.len(), 3);
        for m in [&d, &d1, &d2] {
            assert!(class.contains(m));
        }
        let direct = dag_equivalence_class(&d, e.family(), DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!(direct, class);
    }

    #[test]
    fn singleton_and_two_member_classes() {
        let d = fig1a();
        let f = TargetFamily::new(4, [vec![], vec![2], vec![1, 4]]).unwrap();
        let e = essential_graph(&d, &f).unwrap();
        assert_eq!(enumerate_equivalence_class(&e, 8).unwrap(), vec![d]);

        let line = Graph::from_lines(2, [(1, 2)]).unwrap();
        let e = EssentialGraph::from_parts(line, TargetFamily::observational(2)).unwrap();
        let class = enumerate_equivalence_class(&e, 8).unwrap();
        assert_eq!(
            class,
            vec![
                Graph::from_arrows(2, [(1, 2)]).unwrap(),
                Graph::from_arrows(2, [(2, 1)]).unwrap()
            ]
        );
    }

    #[test]
    fn bound_is_enforced() {
        let e = EssentialGraph::from_parts(Graph::new(9), TargetFamily::observational(9)).unwrap();
        assert!(matches!(
            enumerate_equivalence_class(&e, 8),
            Err(Error::EnumerationBound { p: 9, bound: 8 })
        ));
    }

    #[test]
    fn complete_graph_has_factorial_class() {
        let k5 =
            Graph::from_lines(5, (1..=5).flat_map(|a| (a + 1..=5).map(move |b| (a, b)))).unwrap();
        let e = EssentialGraph::from_parts(k5, TargetFamily::observational(5)).unwrap();
        assert_eq!(enumerate_equivalence_class(&e, 8).unwrap().len(), 120);
    }
}
