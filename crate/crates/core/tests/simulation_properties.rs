use causal_active::equivalence::TargetFamily;
use causal_active::simulate::{
    kaplan_meier, oracle_run, random_dag, run_experiment, shd, stream_rng, ExperimentConfig,
};
use causal_active::strategies::{OptUnbOptions, Strategy};
use causal_active::{essential_graph, refine};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn non_random_strategies_finish_within_p_steps(p in 1usize..=15, seed in any::<u64>()) {
        let mut rng = stream_rng(seed, 0);
        let degree = rng.random_range(0.0..=((p - 1) as f64).min(4.0));
        let d = random_dag(p, degree, &mut rng).unwrap();
        let omega = essential_graph(&d, &TargetFamily::observational(p)).unwrap().clique_number();
        let ceiling = omega.next_power_of_two().trailing_zeros() as usize;
        for s in [Strategy::RandAdv, Strategy::MaxNb, Strategy::OptSingle, Strategy::OptUnb] {
            let r = oracle_run(&d, s, &mut rng, p, &OptUnbOptions::default()).unwrap();
            prop_assert!(!r.censored, "{}", s);
            prop_assert!(r.t <= p && r.v >= r.t);
            prop_assert_eq!(*r.shd_trace.last().unwrap(), 0);
            prop_assert!(r.shd_trace.windows(2).all(|w| w[1] <= w[0]));
            if s == Strategy::OptUnb {
                prop_assert!(r.t <= ceiling, "T = {} > {}", r.t, ceiling);
            }
        }
    }

    #[test]
    fn oracle_shd_counts_only_lines(p in 2usize..=12, seed in any::<u64>()) {
        let mut rng = stream_rng(seed, 1);
        let d = random_dag(p, 2.0f64.min((p - 1) as f64), &mut rng).unwrap();
        let mut e = essential_graph(&d, &TargetFamily::observational(p)).unwrap();
        for _ in 0..3 {
            prop_assert_eq!(shd(e.graph(), &d).unwrap(), e.graph().n_lines());
            let v = rng.random_range(1..=p);
            e = refine(&e, &[v], &d).unwrap();
        }
    }

    #[test]
    fn kaplan_meier_without_censoring_is_empirical(
        times in proptest::collection::vec(0usize..20, 1..60)
    ) {
        let obs: Vec<(usize, bool)> = times.iter().map(|&t| (t, false)).collect();
        let curve = kaplan_meier(&obs).unwrap();
        let n = times.len() as f64;
        for (i, &t) in curve.grid.iter().enumerate() {
            let empirical = times.iter().filter(|&&x| x > t).count() as f64 / n;
            prop_assert_eq!(curve.survival[i], empirical);
        }
        prop_assert!(curve.survival.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(*curve.survival.last().unwrap(), 0.0);
    }
}

#[test]
fn experiment_output_is_deterministic() {
    let mut cfg = ExperimentConfig::new(8, 20, 42);
    cfg.expected_degree = 2.5;
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_experiment(&cfg).unwrap().write_csv(a.path()).unwrap();
    run_experiment(&cfg).unwrap().write_csv(b.path()).unwrap();
    for file in [
        "records.csv",
        "survival_T.csv",
        "survival_V.csv",
        "shd_trace.csv",
    ] {
        let x = std::fs::read(a.path().join(file)).unwrap();
        let y = std::fs::read(b.path().join(file)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, y, "{file}");
    }
}

#[test]
fn strategies_see_the_same_dags() {
    let cfg = ExperimentConfig::new(7, 10, 9);
    let res = run_experiment(&cfg).unwrap();
    for id in 0..10 {
        let edges: Vec<usize> = res
            .records
            .iter()
            .filter(|r| r.dag_id == id)
            .map(|r| r.n_edges)
            .collect();
        assert_eq!(edges.len(), Strategy::ALL.len());
        assert!(edges.windows(2).all(|w| w[0] == w[1]));
    }
}
