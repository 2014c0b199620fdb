//! Oracle active-learning study: every strategy starts from the observational
//! essential graph of a random DAG and is told the true orientations around
//! its targets until the graph is fully directed.

mod stats;
mod survival;

pub use stats::{wilcoxon_signed_rank, SignedRank};
pub use survival::{kaplan_meier, SurvivalCurve};

use std::fs::File;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::equivalence::{essential_graph, refine, TargetFamily};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::strategies::{OptUnbOptions, Strategy};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub p: usize,
    pub expected_degree: f64,
    pub n_dags: usize,
    pub strategies: Vec<Strategy>,
    pub seed: u64,
    /// Runs still undirected after this many targets are censored.
    pub max_steps: usize,
    pub opt_unb: OptUnbOptions,
}

impl ExperimentConfig {
    pub fn new(p: usize, n_dags: usize, seed: u64) -> Self {
        ExperimentConfig {
            p,
            expected_degree: 3.0,
            n_dags,
            strategies: Strategy::ALL.to_vec(),
            seed,
            max_steps: 1000,
            opt_unb: OptUnbOptions::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::InvalidParameter("p must be at least 1".into()));
        }
        check_degree(self.p, self.expected_degree)?;
        if self.n_dags == 0 {
            return Err(Error::InvalidParameter("n_dags must be at least 1".into()));
        }
        if self.strategies.is_empty() {
            return Err(Error::InvalidParameter("no strategy given".into()));
        }
        Ok(())
    }
}

fn check_degree(p: usize, d: f64) -> Result<()> {
    let max = p.saturating_sub(1) as f64;
    if !(0.0..=max).contains(&d) {
        return Err(Error::InvalidParameter(format!(
            "expected degree {d} outside [0, {max}] for p = {p}"
        )));
    }
    Ok(())
}

/// Erdős–Rényi DAG: a uniformly random causal order, and each pair of
/// vertices joined with probability `expected_degree / (p - 1)`.
pub fn random_dag<R: Rng + ?Sized>(p: usize, expected_degree: f64, rng: &mut R) -> Result<Graph> {
    check_degree(p, expected_degree)?;
    let mut order: Vec<usize> = (1..=p).collect();
    order.shuffle(rng);
    if p < 2 {
        return Ok(Graph::new(p));
    }
    let q = expected_degree / (p - 1) as f64;
    let mut arrows = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            if rng.random_bool(q) {
                arrows.push((order[i], order[j]));
            }
        }
    }
    Graph::from_arrows(p, arrows)
}

/// Structural Hamming distance between a partially directed graph and a DAG:
/// skeleton false positives plus false negatives plus shared pairs whose
/// edge marks differ.
pub fn shd(g: &Graph, d: &Graph) -> Result<usize> {
    if g.p() != d.p() {
        return Err(Error::SizeMismatch(g.p(), d.p()));
    }
    let mut count = 0;
    for a in g.vertices() {
        for b in a + 1..=g.p() {
            match (g.edge(a, b), d.edge(a, b)) {
                (None, None) => {}
                (Some(x), Some(y)) if x == y && x != Edge::Line => {}
                (Some(Edge::Line), Some(Edge::Line)) => {}
                _ => count += 1,
            }
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurvivalRecord {
    pub dag_id: usize,
    pub strategy: Strategy,
    /// Number of non-empty targets used.
    pub t: usize,
    /// Total number of intervened vertices.
    pub v: usize,
    pub censored: bool,
    pub n_edges: usize,
    /// SHD after each step; entry 0 is the observational essential graph.
    pub shd_trace: Vec<usize>,
    pub targets: Vec<Vec<usize>>,
}

/// Runs `strategy` against the known `true_dag` until its essential graph is
/// fully directed or `max_steps` targets have been spent.
pub fn oracle_run<R: Rng + ?Sized>(
    true_dag: &Graph,
    strategy: Strategy,
    rng: &mut R,
    max_steps: usize,
    options: &OptUnbOptions,
) -> Result<SurvivalRecord> {
    let mut g = essential_graph(true_dag, &TargetFamily::observational(true_dag.p()))?;
    let mut record = SurvivalRecord {
        dag_id: 0,
        strategy,
        t: 0,
        v: 0,
        censored: false,
        n_edges: true_dag.n_edges(),
        shd_trace: vec![shd(g.graph(), true_dag)?],
        targets: Vec::new(),
    };
    while !g.is_fully_directed() {
        if record.t == max_steps {
            record.censored = true;
            break;
        }
        let proposal = strategy.propose(&g, rng, options)?;
        if proposal.is_none() {
            break;
        }
        g = refine(&g, &proposal.vertices, true_dag)?;
        record.t += 1;
        record.v += proposal.vertices.len();
        record.shd_trace.push(shd(g.graph(), true_dag)?);
        record.targets.push(proposal.vertices);
    }
    Ok(record)
}

/// Random stream `stream` of the generator seeded with `seed`. DAG `i` uses
/// stream `i << 8`; strategy `s` on DAG `i` uses `(i << 8) | (1 + index(s))`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrategySummary {
    pub strategy: Strategy,
    pub survival_t: SurvivalCurve,
    pub survival_v: SurvivalCurve,
    /// Mean over DAGs of SHD divided by the number of true edges, by step;
    /// finished runs keep their last value.
    pub shd_per_edge: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    /// Ordered by DAG, then by the strategy order of the configuration.
    pub records: Vec<SurvivalRecord>,
    pub summaries: Vec<StrategySummary>,
}

impl ExperimentResult {
    pub fn records_for(&self, strategy: Strategy) -> impl Iterator<Item = &SurvivalRecord> {
        self.records.iter().filter(move |r| r.strategy == strategy)
    }

    pub fn summary(&self, strategy: Strategy) -> Option<&StrategySummary> {
        self.summaries.iter().find(|s| s.strategy == strategy)
    }

    /// Writes `records.csv`, `survival_T.csv`, `survival_V.csv` and
    /// `shd_trace.csv` into `dir`, which is created if needed.
    pub fn write_csv(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;

        #[derive(Serialize)]
        struct RecordRow<'a> {
            dag_id: usize,
            strategy: &'a str,
            #[serde(rename = "T")]
            t: usize,
            #[serde(rename = "V")]
            v: usize,
            censored: bool,
        }
        #[derive(Serialize)]
        struct CurveRow<'a> {
            strategy: &'a str,
            t: usize,
            #[serde(rename = "S")]
            s: f64,
            lo95: f64,
            hi95: f64,
        }
        #[derive(Serialize)]
        struct ShdRow<'a> {
            strategy: &'a str,
            step: usize,
            mean_shd_per_edge: f64,
        }

        let mut w = csv_writer(&dir.join("records.csv"))?;
        for r in &self.records {
            w.serialize(RecordRow {
                dag_id: r.dag_id,
                strategy: r.strategy.name(),
                t: r.t,
                v: r.v,
                censored: r.censored,
            })?;
        }
        w.flush()?;

        for (file, pick) in [
            (
                "survival_T.csv",
                (|s| &s.survival_t) as fn(&StrategySummary) -> &SurvivalCurve,
            ),
            ("survival_V.csv", |s| &s.survival_v),
        ] {
            let mut w = csv_writer(&dir.join(file))?;
            for s in &self.summaries {
                let c = pick(s);
                for i in 0..c.grid.len() {
                    w.serialize(CurveRow {
                        strategy: s.strategy.name(),
                        t: c.grid[i],
                        s: c.survival[i],
                        lo95: c.lower[i],
                        hi95: c.upper[i],
                    })?;
                }
            }
            w.flush()?;
        }

        let mut w = csv_writer(&dir.join("shd_trace.csv"))?;
        for s in &self.summaries {
            for (step, &m) in s.shd_per_edge.iter().enumerate() {
                w.serialize(ShdRow {
                    strategy: s.strategy.name(),
                    step,
                    mean_shd_per_edge: m,
                })?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(File::create(path)?))
}

/// Generates `cfg.n_dags` DAGs and runs every strategy on each of them.
/// DAGs are processed in parallel; results do not depend on scheduling.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let per_dag: Vec<Vec<SurvivalRecord>> = (0..cfg.n_dags)
        .into_par_iter()
        .map(|dag_id| {
            let base = (dag_id as u64) << 8;
            let dag = random_dag(cfg.p, cfg.expected_degree, &mut stream_rng(cfg.seed, base))?;
            cfg.strategies
                .iter()
                .map(|&s| {
                    let mut rng = stream_rng(cfg.seed, base | (1 + s.index()));
                    let mut r = oracle_run(&dag, s, &mut rng, cfg.max_steps, &cfg.opt_unb)?;
                    r.dag_id = dag_id;
                    Ok(r)
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let records: Vec<SurvivalRecord> = per_dag.into_iter().flatten().collect();

    let mut summaries = Vec::new();
    for &s in &cfg.strategies {
        if summaries.iter().any(|x: &StrategySummary| x.strategy == s) {
            continue;
        }
        let mine: Vec<&SurvivalRecord> = records.iter().filter(|r| r.strategy == s).collect();
        let t: Vec<(usize, bool)> = mine.iter().map(|r| (r.t, r.censored)).collect();
        let v: Vec<(usize, bool)> = mine.iter().map(|r| (r.v, r.censored)).collect();
        let steps = mine.iter().map(|r| r.shd_trace.len()).max().unwrap_or(1);
        let shd_per_edge = (0..steps)
            .map(|k| {
                let total: f64 = mine
                    .iter()
                    .map(|r| {
                        let shd = r.shd_trace[k.min(r.shd_trace.len() - 1)];
                        if r.n_edges == 0 {
                            0.0
                        } else {
                            shd as f64 / r.n_edges as f64
                        }
                    })
                    .sum();
                total / mine.len() as f64
            })
            .collect();
        summaries.push(StrategySummary {
            strategy: s,
            survival_t: kaplan_meier(&t)?,
            survival_v: kaplan_meier(&v)?,
            shd_per_edge,
        });
    }
    Ok(ExperimentResult { records, summaries })
}
