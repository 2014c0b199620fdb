use causal_active::corpus::{random_chordal, random_family};
use causal_active::equivalence::{
    conditions, enumerate_equivalence_class, i_markov_equivalent, DEFAULT_ENUMERATION_BOUND,
};
use causal_active::simulate::random_dag;
use causal_active::verify::check_essential_graph;
use causal_active::{essential_graph, refine, Graph, TargetFamily};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi DAG with a random expected degree.
fn random_dag_on(p: usize, rng: &mut ChaCha8Rng) -> Graph {
    let degree = rng.random_range(0.0..=(p - 1) as f64);
    random_dag(p, degree, rng).unwrap()
}

/// A random DAG with `p` vertices (not necessarily with chordal skeleton) and
/// a random covering family.
fn instance(p: usize, seed: u64) -> (Graph, TargetFamily, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = random_dag_on(p, &mut rng);
    let f = random_family(p, 3, &mut rng);
    (d, f, rng)
}

fn random_target(p: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    (1..=p).filter(|_| rng.random_bool(0.3)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn essential_graph_matches_class_union(p in 1usize..=6, seed in any::<u64>()) {
        let (d, f, _) = instance(p, seed);
        prop_assert_eq!(check_essential_graph(&d, &f).unwrap(), None);
    }

    #[test]
    fn essential_graph_satisfies_every_condition(p in 1usize..=10, seed in any::<u64>()) {
        let (d, f, _) = instance(p, seed);
        let e = essential_graph(&d, &f).unwrap();
        let g = e.graph();
        prop_assert!(conditions::chain_graph(g).is_ok());
        prop_assert!(conditions::chordal_components(g).is_ok());
        prop_assert!(conditions::no_arrow_into_line(g).is_ok());
        prop_assert!(conditions::no_separated_line(g, &f).is_ok());
        prop_assert!(conditions::arrows_protected(g, &f).is_ok());
    }

    #[test]
    fn dag_is_contained_in_its_essential_graph(p in 1usize..=10, seed in any::<u64>()) {
        let (d, f, _) = instance(p, seed);
        let e = essential_graph(&d, &f).unwrap();
        prop_assert!(e.graph().arrows().all(|(a, b)| d.has_arrow(a, b)));
        prop_assert_eq!(e.graph().skeleton(), d.skeleton());
        prop_assert!(e.contains(&d));
    }

    #[test]
    fn more_targets_never_lose_arrows(p in 1usize..=8, seed in any::<u64>()) {
        let (d, f, mut rng) = instance(p, seed);
        let target = random_target(p, &mut rng);
        let before = essential_graph(&d, &f).unwrap();
        let after = essential_graph(&d, &f.with_target(target).unwrap()).unwrap();
        prop_assert!(before.graph().arrows().all(|(a, b)| after.graph().has_arrow(a, b)));
    }

    #[test]
    fn refine_equals_recomputation(p in 1usize..=8, seed in any::<u64>()) {
        let (d, f, mut rng) = instance(p, seed);
        let target = random_target(p, &mut rng);
        let e = essential_graph(&d, &f).unwrap();
        let refined = refine(&e, &target, &d).unwrap();
        let direct = essential_graph(&d, &f.with_target(target).unwrap()).unwrap();
        prop_assert_eq!(refined, direct);
    }

    #[test]
    fn equivalence_is_an_equivalence_relation(p in 1usize..=6, seed in any::<u64>()) {
        let (d, f, mut rng) = instance(p, seed);
        let e = essential_graph(&d, &f).unwrap();
        let class = enumerate_equivalence_class(&e, DEFAULT_ENUMERATION_BOUND).unwrap();
        let pick = |rng: &mut ChaCha8Rng| class[rng.random_range(0..class.len())].clone();
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        let c = if rng.random_bool(0.5) { pick(&mut rng) } else { random_dag_on(p, &mut rng) };
        prop_assert!(i_markov_equivalent(&a, &a, &f));
        prop_assert_eq!(i_markov_equivalent(&a, &c, &f), i_markov_equivalent(&c, &a, &f));
        prop_assert!(i_markov_equivalent(&a, &b, &f));
        prop_assert_eq!(i_markov_equivalent(&a, &c, &f), i_markov_equivalent(&b, &c, &f));
    }

    #[test]
    fn identified_iff_clique_number_one_iff_singleton(p in 1usize..=6, seed in any::<u64>()) {
        let (d, f, _) = instance(p, seed);
        let e = essential_graph(&d, &f).unwrap();
        let class = enumerate_equivalence_class(&e, DEFAULT_ENUMERATION_BOUND).unwrap();
        prop_assert_eq!(e.is_fully_directed(), e.clique_number() == 1);
        prop_assert_eq!(e.is_fully_directed(), class.len() == 1);
    }

    #[test]
    fn chordal_skeletons_under_families(p in 2usize..=8, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let skeleton = random_chordal(p, 3, &mut rng);
        let d = causal_active::corpus::random_orientation(&skeleton, &mut rng);
        let f = random_family(p, 3, &mut rng);
        prop_assert_eq!(check_essential_graph(&d, &f).unwrap(), None);
    }
}
