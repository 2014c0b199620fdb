//! Interventional Markov equivalence and interventional essential graphs.

mod enumerate;
mod family;

pub use enumerate::{
    dag_equivalence_class, enumerate_equivalence_class, DEFAULT_ENUMERATION_BOUND,
};
pub use family::TargetFamily;

use crate::error::{Error, Result};
use crate::graph::{clique_number, is_chordal, Graph};

/// `D^(I)`: the DAG with every arrow into a vertex of `target` removed.
pub fn intervention_graph(d: &Graph, target: &[usize]) -> Graph {
    let mut g = d.clone();
    for &b in target {
        if b == 0 || b > d.p() {
            continue;
        }
        for &a in d.parents(b) {
            g.remove_edge(a, b);
        }
    }
    g
}

/// Two DAGs are equivalent under `family` iff they share skeleton and
/// v-structures, and their intervention graphs share skeletons for every
/// target of the family.
pub fn i_markov_equivalent(d1: &Graph, d2: &Graph, family: &TargetFamily) -> bool {
    if d1.p() != d2.p() {
        return false;
    }
    if d1.skeleton() != d2.skeleton() || d1.v_structures() != d2.v_structures() {
        return false;
    }
    family
        .targets()
        .all(|t| intervention_graph(d1, t).skeleton() == intervention_graph(d2, t).skeleton())
}

/// Strong protection of the arrow `a -> b`, given per-vertex target
/// signatures (see [`TargetFamily::signatures`]).
fn protected(g: &Graph, a: usize, b: usize, sig: &[Vec<u32>]) -> bool {
    if sig[a] != sig[b] {
        return true;
    }
    // (a) c -> a -> b, c and b not adjacent
    if g.parents(a).iter().any(|&c| !g.is_adjacent(c, b)) {
        return true;
    }
    // (b) a -> b <- c, c and a not adjacent
    if g.parents(b).iter().any(|&c| c != a && !g.is_adjacent(c, a)) {
        return true;
    }
    // (c) a -> c -> b
    if g.children(a).iter().any(|&c| g.has_arrow(c, b)) {
        return true;
    }
    // (d) a -- c1 -> b, a -- c2 -> b, c1 and c2 not adjacent
    let shared: Vec<usize> = g
        .neighbors(a)
        .iter()
        .copied()
        .filter(|&c| g.has_arrow(c, b))
        .collect();
    shared
        .iter()
        .enumerate()
        .any(|(i, &c1)| shared[i + 1..].iter().any(|&c2| !g.is_adjacent(c1, c2)))
}

pub fn is_strongly_protected(g: &Graph, a: usize, b: usize, family: &TargetFamily) -> Result<bool> {
    if !g.has_arrow(a, b) {
        return Err(Error::NotAnArrow { a, b });
    }
    Ok(protected(g, a, b, &family.signatures()))
}

/// An interventional essential graph together with its family of targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialGraph {
    graph: Graph,
    family: TargetFamily,
}

impl EssentialGraph {
    /// Wraps `graph` after checking that it is the essential graph of some
    /// DAG under `family`.
    pub fn from_parts(graph: Graph, family: TargetFamily) -> Result<Self> {
        if graph.p() != family.p() {
            return Err(Error::SizeMismatch(graph.p(), family.p()));
        }
        conditions::check_all(&graph, &family)?;
        Ok(EssentialGraph { graph, family })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn family(&self) -> &TargetFamily {
        &self.family
    }

    pub fn into_parts(self) -> (Graph, TargetFamily) {
        (self.graph, self.family)
    }

    pub fn p(&self) -> usize {
        self.graph.p()
    }

    /// True iff the class has a single member.
    pub fn is_fully_directed(&self) -> bool {
        self.graph.n_lines() == 0
    }

    pub fn clique_number(&self) -> usize {
        clique_number(&self.graph).expect("chain components of an essential graph are chordal")
    }

    /// Checks that `d` belongs to the class: same skeleton, every arrow of
    /// the essential graph present in `d`, and no v-structure of `d` inside a
    /// chain component.
    pub fn contains(&self, d: &Graph) -> bool {
        if d.p() != self.p() || !d.is_dag() || d.skeleton() != self.graph.skeleton() {
            return false;
        }
        if self.graph.arrows().any(|(a, b)| !d.has_arrow(a, b)) {
            return false;
        }
        let comps = self.graph.chain_components();
        d.v_structures().iter().all(|&(a, b, c)| {
            let t = comps.component_of(b);
            comps.component_of(a) != t || comps.component_of(c) != t
        })
    }
}

/// `E_I(d)`: start from `d` and, in sweeps, turn every arrow that is not
/// strongly protected into a line until nothing changes. Each sweep judges
/// protection against the graph as it was at the start of the sweep.
pub fn essential_graph(d: &Graph, family: &TargetFamily) -> Result<EssentialGraph> {
    if d.p() != family.p() {
        return Err(Error::SizeMismatch(d.p(), family.p()));
    }
    if !d.is_dag() {
        return Err(Error::NotADag);
    }
    let sig = family.signatures();
    let mut g = d.clone();
    loop {
        let demote: Vec<(usize, usize)> = g
            .arrows()
            .filter(|&(a, b)| !protected(&g, a, b, &sig))
            .collect();
        if demote.is_empty() {
            break;
        }
        for (a, b) in demote {
            g.add_line(a, b)?;
        }
    }
    Ok(EssentialGraph {
        graph: g,
        family: family.clone(),
    })
}

/// `E_{I ∪ {target}}(true_dag)` computed chain component by chain component:
/// within each component `T` the lines are replaced by
/// `E_{∅, target ∩ T}(true_dag[T])`; arrows are kept.
pub fn refine(g: &EssentialGraph, target: &[usize], true_dag: &Graph) -> Result<EssentialGraph> {
    let family = g.family.with_target(target.iter().copied())?;
    if !g.contains(true_dag) {
        return Err(Error::NotInClass);
    }
    if family == g.family {
        return Ok(g.clone());
    }
    let p = g.p();
    let mut in_target = vec![false; p + 1];
    for &v in target {
        in_target[v] = true;
    }
    let mut graph = g.graph.clone();
    for comp in g.graph.chain_components().iter() {
        if comp.len() < 2 {
            continue;
        }
        let local_target: Vec<usize> = comp.iter().copied().filter(|&v| in_target[v]).collect();
        if local_target.is_empty() {
            continue;
        }
        let local_family = TargetFamily::new(p, [Vec::new(), local_target])?;
        let local = essential_graph(&true_dag.restrict_to(comp), &local_family)?;
        for (a, b) in local.graph.arrows() {
            graph.add_arrow(a, b)?;
        }
    }
    let refined = EssentialGraph { graph, family };
    debug_assert_eq!(
        refined.graph,
        essential_graph(true_dag, &refined.family)?.graph,
        "component-wise refinement disagrees with the full recomputation"
    );
    Ok(refined)
}

/// The five conditions characterizing interventional essential graphs, each
/// as a standalone check.
pub mod conditions {
    use super::*;

    fn invalid(msg: String) -> Error {
        Error::InvalidEssentialGraph(msg)
    }

    /// (i) no directed cycle.
    pub fn chain_graph(g: &Graph) -> Result<()> {
        if g.is_chain_graph() {
            Ok(())
        } else {
            Err(invalid("graph has a directed cycle".into()))
        }
    }

    /// (ii) every chain component is chordal.
    pub fn chordal_components(g: &Graph) -> Result<()> {
        if is_chordal(g) {
            Ok(())
        } else {
            Err(invalid("a chain component is not chordal".into()))
        }
    }

    /// (iii) no induced `a -> b -- c`.
    pub fn no_arrow_into_line(g: &Graph) -> Result<()> {
        for (a, b) in g.arrows() {
            if let Some(&c) = g.neighbors(b).iter().find(|&&c| !g.is_adjacent(a, c)) {
                return Err(invalid(format!("induced {a} -> {b} -- {c}")));
            }
        }
        Ok(())
    }

    /// (iv) no line whose endpoints are separated by a target.
    pub fn no_separated_line(g: &Graph, family: &TargetFamily) -> Result<()> {
        match g.lines().find(|&(a, b)| family.separates(a, b)) {
            Some((a, b)) => Err(invalid(format!("line {a} -- {b} is split by a target"))),
            None => Ok(()),
        }
    }

    /// (v) every arrow is strongly protected.
    pub fn arrows_protected(g: &Graph, family: &TargetFamily) -> Result<()> {
        let sig = family.signatures();
        match g.arrows().find(|&(a, b)| !protected(g, a, b, &sig)) {
            Some((a, b)) => Err(invalid(format!(
                "arrow {a} -> {b} is not strongly protected"
            ))),
            None => Ok(()),
        }
    }

    pub fn check_all(g: &Graph, family: &TargetFamily) -> Result<()> {
        chain_graph(g)?;
        chordal_components(g)?;
        no_arrow_into_line(g)?;
        no_separated_line(g, family)?;
        arrows_protected(g, family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1a() -> Graph {
        Graph::from_arrows(4, [(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn pdag(p: usize, arrows: &[(usize, usize)], lines: &[(usize, usize)]) -> Graph {
        let mut g = Graph::from_arrows(p, arrows.iter().copied()).unwrap();
        for &(a, b) in lines {
            g.add_line(a, b).unwrap();
        }
        g
    }

    fn fam(p: usize, targets: &[&[usize]]) -> TargetFamily {
        TargetFamily::new(p, targets.iter().map(|t| t.to_vec())).unwrap()
    }

    #[test]
    fn intervention_graphs_of_fig1() {
        let d = fig1a();
        assert_eq!(
            intervention_graph(&d, &[2]),
            Graph::from_arrows(4, [(1, 3), (2, 4), (3, 4)]).unwrap()
        );
        assert_eq!(
            intervention_graph(&d, &[1, 4]),
            Graph::from_arrows(4, [(1, 2), (1, 3)]).unwrap()
        );
        assert_eq!(intervention_graph(&d, &[]), d);
    }

    #[test]
    fn equivalence_of_fig2_dags() {
        let d = fig1a();
        let d1 = Graph::from_arrows(4, [(1, 2), (2, 4), (3, 1), (3, 4)]).unwrap();
        let d2 = Graph::from_arrows(4, [(1, 3), (2, 1), (2, 4), (3, 4)]).unwrap();
        let f = fam(4, &[&[], &[2]]);
        assert!(i_markov_equivalent(&d, &d1, &f));
        assert!(!i_markov_equivalent(&d, &d2, &f));
        assert!(i_markov_equivalent(
            &d,
            &d2,
            &TargetFamily::observational(4)
        ));
        assert!(i_markov_equivalent(&d2, &d2, &f));
    }

    #[test]
    fn strong_protection_examples() {
        let obs = TargetFamily::observational(4);
        let e2d = pdag(4, &[(2, 4), (3, 4)], &[(1, 2), (1, 3)]);
        assert!(is_strongly_protected(&e2d, 2, 4, &obs).unwrap());
        let e2e = pdag(4, &[(1, 2), (2, 4), (3, 4)], &[(1, 3)]);
        assert!(is_strongly_protected(&e2e, 1, 2, &fam(4, &[&[], &[2]])).unwrap());
        let lone = Graph::from_arrows(3, [(1, 2)]).unwrap();
        assert!(!is_strongly_protected(&lone, 1, 2, &TargetFamily::observational(3)).unwrap());
        assert!(matches!(
            is_strongly_protected(&lone, 2, 1, &TargetFamily::observational(3)),
            Err(Error::NotAnArrow { a: 2, b: 1 })
        ));
    }

    #[test]
    fn essential_graphs_of_fig2() {
        let d = fig1a();
        let e = essential_graph(&d, &TargetFamily::observational(4)).unwrap();
        assert_eq!(e.graph(), &pdag(4, &[(2, 4), (3, 4)], &[(1, 2), (1, 3)]));
        let e = essential_graph(&d, &fam(4, &[&[], &[2]])).unwrap();
        assert_eq!(e.graph(), &pdag(4, &[(1, 2), (2, 4), (3, 4)], &[(1, 3)]));
        let e = essential_graph(&d, &fam(4, &[&[], &[2], &[1, 4]])).unwrap();
        assert_eq!(e.graph(), &d);
    }

    #[test]
    fn essential_graph_of_fig4b_under_first_target() {
        let d = Graph::from_arrows(5, [(2, 1), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (5, 4)])
            .unwrap();
        let e = essential_graph(&d, &fam(5, &[&[], &[1, 2, 3]])).unwrap();
        assert_eq!(
            e.graph(),
            &pdag(
                5,
                &[(2, 4), (2, 5), (3, 4), (3, 5)],
                &[(1, 2), (2, 3), (4, 5)]
            )
        );
    }

    #[test]
    fn essential_graph_rejects_non_dags() {
        let cyc = Graph::from_arrows(3, [(1, 2), (2, 3), (3, 1)]).unwrap();
        assert!(matches!(
            essential_graph(&cyc, &TargetFamily::observational(3)),
            Err(Error::NotADag)
        ));
        assert!(matches!(
            essential_graph(&fig1a(), &TargetFamily::observational(3)),
            Err(Error::SizeMismatch(4, 3))
        ));
    }

    #[test]
    fn refine_examples() {
        let d = fig1a();
        let obs = essential_graph(&d, &TargetFamily::observational(4)).unwrap();
        let r = refine(&obs, &[2], &d).unwrap();
        assert_eq!(r.graph(), &pdag(4, &[(1, 2), (2, 4), (3, 4)], &[(1, 3)]));
        assert_eq!(r.family(), &fam(4, &[&[], &[2]]));
        assert_eq!(refine(&obs, &[], &d).unwrap(), obs);

        let d4 = Graph::from_arrows(5, [(2, 1), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (5, 4)])
            .unwrap();
        let mid = essential_graph(&d4, &fam(5, &[&[], &[1, 2, 3]])).unwrap();
        let last = refine(&mid, &[1, 3, 4], &d4).unwrap();
        assert_eq!(last.graph(), &d4);
    }

    #[test]
    fn refine_rejects_foreign_dag() {
        let d = fig1a();
        let obs = essential_graph(&d, &TargetFamily::observational(4)).unwrap();
        // 2 -> 1 <- 3 adds a v-structure inside the component {1,2,3}
        let outsider = Graph::from_arrows(4, [(2, 1), (3, 1), (2, 4), (3, 4)]).unwrap();
        assert!(matches!(
            refine(&obs, &[2], &outsider),
            Err(Error::NotInClass)
        ));
    }

    #[test]
    fn validation_of_essential_graphs() {
        let obs = TargetFamily::observational(4);
        let good = pdag(4, &[(2, 4), (3, 4)], &[(1, 2), (1, 3)]);
        assert!(EssentialGraph::from_parts(good.clone(), obs.clone()).is_ok());
        // line split by a target
        assert!(EssentialGraph::from_parts(good, fam(4, &[&[], &[2]])).is_err());
        // unprotected arrow
        let bad = pdag(4, &[(1, 2), (2, 4), (3, 4)], &[(1, 3)]);
        assert!(conditions::arrows_protected(&bad, &obs).is_err());
        assert!(EssentialGraph::from_parts(bad, obs.clone()).is_err());
        // 1 -> 2 -- 3
        let bad = pdag(3, &[(1, 2)], &[(2, 3)]);
        assert!(conditions::no_arrow_into_line(&bad).is_err());
        let c4 = Graph::from_lines(4, [(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        assert!(conditions::chordal_components(&c4).is_err());
    }
}
