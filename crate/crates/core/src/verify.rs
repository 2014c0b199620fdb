//! Brute-force cross-checks of the polynomial algorithms against exhaustive
//! enumeration of equivalence classes. Each check returns `Ok(None)` when the
//! claim holds and `Ok(Some(description))` for a counterexample.

use std::collections::BTreeSet;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{
    acyclic_orientations, connected_chordal_graphs, random_chordal, random_family,
    random_orientation,
};
use crate::equivalence::{
    dag_equivalence_class, enumerate_equivalence_class, essential_graph, refine, EssentialGraph,
    TargetFamily, DEFAULT_ENUMERATION_BOUND,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::strategies::{opt_single, opt_unb, separating_targets, OptUnbOptions};

pub type Finding = Option<String>;

/// Arrows where every member agrees, lines elsewhere. `None` for an empty
/// class.
pub fn orientation_union(class: &[Graph]) -> Option<Graph> {
    let first = class.first()?;
    let mut g = first.clone();
    for (a, b) in first.arrows() {
        if class.iter().any(|d| !d.has_arrow(a, b)) {
            g.add_line(a, b).expect("vertices are in range");
        }
    }
    Some(g)
}

fn ceil_log2(n: usize) -> usize {
    n.max(1).next_power_of_two().trailing_zeros() as usize
}

fn class_of(g: &EssentialGraph) -> Result<Vec<Graph>> {
    let class = enumerate_equivalence_class(g, DEFAULT_ENUMERATION_BOUND)?;
    if class.is_empty() {
        return Err(Error::InvalidEssentialGraph(
            "empty equivalence class".into(),
        ));
    }
    Ok(class)
}

/// The essential graph equals the orientation union of the class obtained
/// straight from the pairwise equivalence criterion, and the enumeration from
/// the essential graph finds the same class.
pub fn check_essential_graph(d: &Graph, family: &TargetFamily) -> Result<Finding> {
    let e = essential_graph(d, family)?;
    let direct = dag_equivalence_class(d, family, DEFAULT_ENUMERATION_BOUND)?;
    let union = orientation_union(&direct).expect("the class contains d");
    if union != *e.graph() {
        return Ok(Some(format!(
            "essential graph of\n{d}under {{{}}} is\n{}but the class union is\n{union}",
            targets_inline(family),
            e.graph()
        )));
    }
    let enumerated = enumerate_equivalence_class(&e, DEFAULT_ENUMERATION_BOUND)?;
    if enumerated != direct {
        return Ok(Some(format!(
            "class of\n{d}has {} members directly but {} from its essential graph",
            direct.len(),
            enumerated.len()
        )));
    }
    Ok(None)
}

/// Worst case over the class of the number of lines left after adding the
/// target `{v}`, for every `v`; `scores[v - 1]` belongs to `v`.
pub fn minimax_single_scores(g: &EssentialGraph) -> Result<Vec<usize>> {
    let class = class_of(g)?;
    g.graph()
        .vertices()
        .map(|v| {
            let family = g.family().with_target([v])?;
            class.iter().try_fold(0, |worst, d| {
                Ok(worst.max(essential_graph(d, &family)?.graph().n_lines()))
            })
        })
        .collect()
}

/// `opt_single` returns the minimax vertex (smallest index among ties) and
/// its score.
pub fn check_opt_single(g: &EssentialGraph) -> Result<Finding> {
    let proposal = opt_single(g)?;
    if g.is_fully_directed() {
        return Ok((!proposal.is_none()).then(|| "proposal on a fully directed graph".into()));
    }
    let scores = minimax_single_scores(g)?;
    let (best, v) = scores
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i + 1))
        .min()
        .expect("p >= 1");
    if proposal.vertices != [v] || proposal.score != Some(best) {
        return Ok(Some(format!(
            "opt_single proposed {:?} (score {:?}) on\n{}but the minimax scores are {scores:?}",
            proposal.vertices,
            proposal.score,
            g.graph()
        )));
    }
    Ok(None)
}

/// Whatever the true DAG, adding the `opt_unb` target leaves a clique number
/// of at most `⌈ω/2⌉`.
pub fn check_opt_unb_bound(g: &EssentialGraph, options: &OptUnbOptions) -> Result<Finding> {
    let proposal = opt_unb(g, options)?;
    let bound = g.clique_number().div_ceil(2);
    let family = g.family().with_target(proposal.vertices.iter().copied())?;
    for d in class_of(g)? {
        let omega = essential_graph(&d, &family)?.clique_number();
        if omega > bound {
            return Ok(Some(format!(
                "target {:?} leaves clique number {omega} > {bound} for\n{d}",
                proposal.vertices
            )));
        }
    }
    Ok(None)
}

/// No single target does better than `⌈ω/2⌉` in the worst case: for every
/// subset of vertices some member of the class keeps a clique of that size.
pub fn check_opt_unb_tightness(g: &EssentialGraph) -> Result<Finding> {
    let p = g.p();
    if p > 16 {
        return Err(Error::EnumerationBound { p, bound: 16 });
    }
    let bound = g.clique_number().div_ceil(2);
    let class = class_of(g)?;
    for mask in 0u32..1 << p {
        let target: Vec<usize> = (1..=p).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
        let family = g.family().with_target(target.iter().copied())?;
        let mut attained = false;
        for d in &class {
            if essential_graph(d, &family)?.clique_number() >= bound {
                attained = true;
                break;
            }
        }
        if !attained {
            return Ok(Some(format!(
                "target {target:?} beats the bound {bound} on\n{}",
                g.graph()
            )));
        }
    }
    Ok(None)
}

/// Repeating `opt_unb` identifies every member of the class within
/// `⌈log₂ ω⌉` targets.
pub fn check_iterated_opt_unb(g: &EssentialGraph, options: &OptUnbOptions) -> Result<Finding> {
    let limit = ceil_log2(g.clique_number());
    for d in class_of(g)? {
        let mut e = g.clone();
        let mut steps = 0;
        while !e.is_fully_directed() {
            if steps == limit {
                return Ok(Some(format!("not identified after {limit} targets:\n{d}")));
            }
            let proposal = opt_unb(&e, options)?;
            e = refine(&e, &proposal.vertices, &d)?;
            steps += 1;
        }
    }
    Ok(None)
}

/// `separating_targets` has exactly `⌈log₂ ω⌉` members and adding them all
/// identifies every member of the class.
pub fn check_separating(g: &EssentialGraph) -> Result<Finding> {
    let targets = separating_targets(g)?;
    let k = ceil_log2(g.clique_number());
    if targets.len() != k {
        return Ok(Some(format!("{} targets instead of {k}", targets.len())));
    }
    let mut family = g.family().clone();
    for t in &targets {
        family = family.with_target(t.iter().copied())?;
    }
    for d in class_of(g)? {
        if !essential_graph(&d, &family)?.is_fully_directed() {
            return Ok(Some(format!("targets {targets:?} leave lines for\n{d}")));
        }
    }
    Ok(None)
}

fn targets_inline(family: &TargetFamily) -> String {
    family
        .targets()
        .map(|t| format!("{t:?}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} instances, {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.instances,
            self.failures.len()
        )
    }
}

fn suite<T>(
    name: &'static str,
    items: &[T],
    mut check: impl FnMut(&T) -> Result<Finding>,
) -> Result<SuiteReport> {
    let mut failures = Vec::new();
    for item in items {
        if let Some(msg) = check(item)? {
            failures.push(msg);
        }
    }
    Ok(SuiteReport {
        name,
        instances: items.len(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest number of vertices in the exhaustive corpus.
    pub p: usize,
    /// Extra random chordal instances with up to `p` vertices.
    pub random_instances: usize,
    pub seed: u64,
}

/// DAGs paired with families: every acyclic orientation of every connected
/// chordal skeleton with at most `max_p` vertices, observationally and under
/// `families_per_dag` random families.
pub fn exhaustive_instances(
    max_p: usize,
    families_per_dag: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(Graph, TargetFamily)>> {
    let mut out = Vec::new();
    for p in 1..=max_p {
        for skeleton in connected_chordal_graphs(p)? {
            for d in acyclic_orientations(&skeleton) {
                out.push((d.clone(), TargetFamily::observational(p)));
                for _ in 0..families_per_dag {
                    out.push((d.clone(), random_family(p, 3, rng)));
                }
            }
        }
    }
    Ok(out)
}

/// Random orientations of random chordal skeletons with `2..=max_p` vertices
/// under random families.
pub fn random_instances(
    max_p: usize,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(Graph, TargetFamily)> {
    use rand::Rng;
    (0..n)
        .map(|_| {
            let p = rng.random_range(2..=max_p.max(2));
            let skeleton = random_chordal(p, 3, rng);
            let d = random_orientation(&skeleton, rng);
            let family = random_family(p, 3, rng);
            (d, family)
        })
        .collect()
}

/// Distinct essential graphs of the given instances.
pub fn essential_graphs(instances: &[(Graph, TargetFamily)]) -> Result<Vec<EssentialGraph>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (d, f) in instances {
        let e = essential_graph(d, f)?;
        let key = (e.graph().to_string(), f.to_string());
        if seen.insert(key) {
            out.push(e);
        }
    }
    Ok(out)
}

/// Runs every suite over the exhaustive corpus with up to `min(cfg.p, 5)`
/// vertices plus `cfg.random_instances` random ones. The single-target
/// suites only look at graphs with at most 6 vertices.
pub fn run_verification(cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    if cfg.p == 0 || cfg.p > DEFAULT_ENUMERATION_BOUND {
        return Err(Error::InvalidParameter(format!(
            "verification supports 1 <= p <= {DEFAULT_ENUMERATION_BOUND}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut instances = exhaustive_instances(cfg.p.min(5), 1, &mut rng)?;
    instances.extend(random_instances(cfg.p, cfg.random_instances, &mut rng));
    let graphs = essential_graphs(&instances)?;
    let small: Vec<EssentialGraph> = graphs.iter().filter(|g| g.p() <= 6).cloned().collect();
    let opts = OptUnbOptions::default();
    Ok(vec![
        suite("essential-graph", &instances, |(d, f)| {
            check_essential_graph(d, f)
        })?,
        suite("opt-single-minimax", &small, check_opt_single)?,
        suite("opt-unb-bound", &small, |g| check_opt_unb_bound(g, &opts))?,
        suite("opt-unb-tightness", &small, check_opt_unb_tightness)?,
        suite("opt-unb-iterated", &graphs, |g| {
            check_iterated_opt_unb(g, &opts)
        })?,
        suite("separating-targets", &graphs, check_separating)?,
    ])
}
