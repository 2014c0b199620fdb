use rand::seq::IndexedRandom;
use rand::Rng;

use super::TargetProposal;
use crate::equivalence::EssentialGraph;

fn with_lines(g: &EssentialGraph) -> Vec<usize> {
    let graph = g.graph();
    graph
        .vertices()
        .filter(|&v| !graph.neighbors(v).is_empty())
        .collect()
}

/// A vertex with the most line-neighbors, ties broken uniformly.
pub fn max_nb<R: Rng + ?Sized>(g: &EssentialGraph, rng: &mut R) -> TargetProposal {
    let graph = g.graph();
    let best = graph
        .vertices()
        .map(|v| graph.neighbors(v).len())
        .max()
        .unwrap_or(0);
    if best == 0 {
        return TargetProposal::none();
    }
    let ties: Vec<usize> = graph
        .vertices()
        .filter(|&v| graph.neighbors(v).len() == best)
        .collect();
    TargetProposal::single(*ties.choose(rng).expect("non-empty"), None)
}

/// A uniformly random vertex, whether or not it touches a line.
pub fn rand<R: Rng + ?Sized>(g: &EssentialGraph, rng: &mut R) -> TargetProposal {
    let p = g.p();
    if p == 0 {
        return TargetProposal::none();
    }
    TargetProposal::single(rng.random_range(1..=p), None)
}

/// A uniformly random vertex among those with at least one line.
pub fn rand_adv<R: Rng + ?Sized>(g: &EssentialGraph, rng: &mut R) -> TargetProposal {
    match with_lines(g).choose(rng) {
        Some(&v) => TargetProposal::single(v, None),
        None => TargetProposal::none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::TargetFamily;
    use crate::graph::Graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn essential(g: Graph) -> EssentialGraph {
        let p = g.p();
        EssentialGraph::from_parts(g, TargetFamily::observational(p)).unwrap()
    }

    #[test]
    fn max_nb_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fig3a = Graph::from_lines(
            9,
            [
                (1, 2),
                (2, 3),
                (3, 5),
                (5, 6),
                (3, 4),
                (7, 5),
                (5, 8),
                (5, 9),
            ],
        )
        .unwrap();
        assert_eq!(max_nb(&essential(fig3a), &mut rng).vertices, vec![5]);
        let star = Graph::from_lines(4, [(2, 1), (2, 3), (2, 4)]).unwrap();
        assert_eq!(max_nb(&essential(star), &mut rng).vertices, vec![2]);
        let d = Graph::from_arrows(3, [(1, 2), (3, 2)]).unwrap();
        assert!(max_nb(&essential(d), &mut rng).is_none());
    }

    #[test]
    fn max_nb_ties_cover_all_candidates() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let e = essential(Graph::from_lines(2, [(1, 2)]).unwrap());
        let mut seen = [false; 3];
        for _ in 0..64 {
            seen[max_nb(&e, &mut rng).vertices[0]] = true;
        }
        assert!(seen[1] && seen[2]);
    }

    #[test]
    fn rand_adv_only_touches_lines() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let fig2e = Graph::from_pairs(4, [(1, 2), (1, 3), (3, 1), (2, 4), (3, 4)]).unwrap();
        let e = EssentialGraph::from_parts(fig2e, TargetFamily::new(4, [vec![], vec![2]]).unwrap())
            .unwrap();
        let mut counts = [0usize; 5];
        for _ in 0..2000 {
            counts[rand_adv(&e, &mut rng).vertices[0]] += 1;
        }
        assert_eq!(counts[2] + counts[4], 0);
        assert!((900..1100).contains(&counts[1]), "{counts:?}");

        let d = Graph::from_arrows(3, [(1, 2), (3, 2)]).unwrap();
        assert!(rand_adv(&essential(d), &mut rng).is_none());
    }

    #[test]
    fn rand_is_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let d = essential(Graph::from_arrows(4, [(1, 2), (3, 2)]).unwrap());
        let mut counts = [0usize; 5];
        let n = 40_000;
        for _ in 0..n {
            counts[rand(&d, &mut rng).vertices[0]] += 1;
        }
        // chi-square with 3 degrees of freedom, 0.999 quantile 16.27
        let e = n as f64 / 4.0;
        let chi2: f64 = counts[1..]
            .iter()
            .map(|&c| (c as f64 - e).powi(2) / e)
            .sum();
        assert!(chi2 < 16.27, "{counts:?}");
    }
}
