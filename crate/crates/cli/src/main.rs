use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use causal_active::simulate::{run_experiment, stream_rng, ExperimentConfig};
use causal_active::strategies::{separating_targets, OptUnbOptions, Strategy};
use causal_active::verify::{run_verification, VerifyConfig};
use causal_active::{essential_graph, Error, EssentialGraph, Graph, Result, TargetFamily};
use clap::{Args, Parser, Subcommand};

/// Interventional essential graphs and active learning of causal DAGs.
#[derive(Parser)]
#[command(name = "causal-active", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the interventional essential graph of a DAG.
    Essential {
        #[arg(long)]
        graph: PathBuf,
        /// Target family file; observational data only if omitted.
        #[arg(long)]
        family: Option<PathBuf>,
    },
    /// Print whether two DAGs are interventionally Markov equivalent.
    Equivalent {
        #[arg(long)]
        d1: PathBuf,
        #[arg(long)]
        d2: PathBuf,
        #[arg(long)]
        family: Option<PathBuf>,
    },
    /// Propose the next intervention target for an essential graph.
    Select(SelectArgs),
    /// Run the oracle active-learning study and write CSV tables.
    Simulate(SimulateArgs),
    /// Cross-check the algorithms against brute-force enumeration.
    Verify {
        /// Largest number of vertices (at most 8).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        p: u8,
        /// Random instances on top of the exhaustive corpus.
        #[arg(long, default_value_t = 100)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct UnbFlags {
    /// Take half of the colors rounded down.
    #[arg(long)]
    floor_h: bool,
    /// Also target components without lines.
    #[arg(long)]
    strict_alg3: bool,
    /// Renumber colors by increasing class size.
    #[arg(long)]
    balance_colors: bool,
}

impl UnbFlags {
    fn options(&self) -> OptUnbOptions {
        OptUnbOptions {
            floor_h: self.floor_h,
            strict_alg3: self.strict_alg3,
            balance_colors: self.balance_colors,
        }
    }
}

#[derive(Args)]
struct SelectArgs {
    #[arg(long, value_parser = ["opt-single", "opt-unb", "max-nb", "rand", "rand-adv", "separating"])]
    strategy: String,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    family: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    unb: UnbFlags,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    dags: usize,
    /// Comma-separated strategy names.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "rand,rand-adv,max-nb,opt-single,opt-unb",
        value_parser = ["rand", "rand-adv", "max-nb", "opt-single", "opt-unb"]
    )]
    strategies: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    max_steps: usize,
    /// Expected vertex degree of the random DAGs.
    #[arg(long, default_value_t = 3.0)]
    degree: f64,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    unb: UnbFlags,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph> {
    read(path)?
        .parse()
        .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))
}

fn read_family(path: Option<&Path>, p: usize) -> Result<TargetFamily> {
    match path {
        None => Ok(TargetFamily::observational(p)),
        Some(path) => TargetFamily::parse(p, &read(path)?)
            .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display()))),
    }
}

fn select(args: &SelectArgs) -> Result<String> {
    let graph = read_graph(&args.graph)?;
    let family = read_family(args.family.as_deref(), graph.p())?;
    let g = EssentialGraph::from_parts(graph, family)?;
    if args.strategy == "separating" {
        let targets = separating_targets(&g)?;
        return Ok(serde_json::json!({ "kind": "separating", "targets": targets }).to_string());
    }
    let strategy: Strategy = args.strategy.parse()?;
    let mut rng = stream_rng(args.seed, 0);
    let proposal = strategy.propose(&g, &mut rng, &args.unb.options())?;
    Ok(serde_json::to_string(&proposal).expect("proposals serialize"))
}

fn simulate(args: &SimulateArgs) -> Result<String> {
    let strategies = args
        .strategies
        .iter()
        .map(|s| s.parse())
        .collect::<Result<Vec<Strategy>>>()?;
    let cfg = ExperimentConfig {
        p: args.p,
        expected_degree: args.degree,
        n_dags: args.dags,
        strategies,
        seed: args.seed,
        max_steps: args.max_steps,
        opt_unb: args.unb.options(),
    };
    let result = run_experiment(&cfg)?;
    result.write_csv(&args.out)?;
    let mut summary = Vec::new();
    for s in &cfg.strategies {
        let recs: Vec<_> = result.records_for(*s).collect();
        let n = recs.len() as f64;
        let t: usize = recs.iter().map(|r| r.t).sum();
        let v: usize = recs.iter().map(|r| r.v).sum();
        let censored = recs.iter().filter(|r| r.censored).count();
        summary.push(format!(
            "{s}: mean T {:.3}, mean V {:.3}, censored {censored}",
            t as f64 / n,
            v as f64 / n
        ));
    }
    Ok(summary.join("\n"))
}

enum Outcome {
    Ok(String),
    Failed(String),
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Essential { graph, family } => {
            let d = read_graph(&graph)?;
            let family = read_family(family.as_deref(), d.p())?;
            let e = essential_graph(&d, &family)?;
            Ok(Outcome::Ok(e.graph().to_string().trim_end().to_string()))
        }
        Command::Equivalent { d1, d2, family } => {
            let d1 = read_graph(&d1)?;
            let d2 = read_graph(&d2)?;
            if d1.p() != d2.p() {
                return Err(Error::SizeMismatch(d1.p(), d2.p()));
            }
            if !d1.is_dag() || !d2.is_dag() {
                return Err(Error::NotADag);
            }
            let family = read_family(family.as_deref(), d1.p())?;
            let same = causal_active::equivalence::i_markov_equivalent(&d1, &d2, &family);
            Ok(Outcome::Ok(same.to_string()))
        }
        Command::Select(args) => select(&args).map(Outcome::Ok),
        Command::Simulate(args) => simulate(&args).map(Outcome::Ok),
        Command::Verify { p, random, seed } => {
            let reports = run_verification(&VerifyConfig {
                p: p.into(),
                random_instances: random,
                seed,
            })?;
            let mut lines = Vec::new();
            for r in &reports {
                lines.push(r.to_string());
                if let Some(first) = r.failures.first() {
                    lines.push(format!("  first failure:\n{first}"));
                }
            }
            let text = lines.join("\n");
            if reports.iter().all(|r| r.passed()) {
                Ok(Outcome::Ok(text))
            } else {
                Ok(Outcome::Failed(text))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok(text)) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(text)) => {
            println!("{text}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
