use super::TargetProposal;
use crate::equivalence::EssentialGraph;
use crate::error::{Error, Result};
use crate::graph::{greedy_coloring_sequence, lex_bfs_sequence, peo_violation, Coloring};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OptUnbOptions {
    /// Use `h = ⌊ω/2⌋` instead of `⌈ω/2⌉` colors per component.
    pub floor_h: bool,
    /// Also visit components without lines; their lone vertex joins the
    /// target whenever `h` is 1.
    pub strict_alg3: bool,
    /// Renumber the colors of each component by increasing class size
    /// before picking the first `h`, so the target tends to be smaller.
    pub balance_colors: bool,
}

/// LexBFS over the lines of the whole graph followed by greedy coloring.
/// Components do not interact, so each one gets an optimal coloring.
fn component_coloring(g: &EssentialGraph) -> Result<Coloring> {
    let graph = g.graph();
    let input: Vec<usize> = graph.vertices().collect();
    let seq = lex_bfs_sequence(graph, &input);
    if let Some(v) = peo_violation(graph, &seq) {
        return Err(Error::NonChordal(v));
    }
    Ok(greedy_coloring_sequence(graph, &seq))
}

fn ceil_half(n: usize) -> usize {
    n.div_ceil(2)
}

/// `rank[c]` is the new number of color `c`: colors sorted by class size
/// within `comp`, ties by color.
fn balanced_rank(comp: &[usize], coloring: &Coloring, omega: usize) -> Vec<usize> {
    let mut size = vec![0usize; omega + 1];
    for &v in comp {
        size[coloring.color(v)] += 1;
    }
    let mut colors: Vec<usize> = (1..=omega).collect();
    colors.sort_by_key(|&c| (size[c], c));
    let mut rank = vec![0; omega + 1];
    for (i, &c) in colors.iter().enumerate() {
        rank[c] = i + 1;
    }
    rank
}

/// A single target that at least halves the clique number of the essential
/// graph, whatever the true DAG: in each chain component, the vertices whose
/// color is at most `h`, where `h` is half the number of colors used there.
///
/// The score is the guaranteed bound `⌈ω/2⌉` on the next clique number.
pub fn opt_unb(g: &EssentialGraph, options: &OptUnbOptions) -> Result<TargetProposal> {
    let graph = g.graph();
    if g.is_fully_directed() && !options.strict_alg3 {
        return Ok(TargetProposal::none());
    }
    let coloring = component_coloring(g)?;
    let components = graph.chain_components();
    let mut target = Vec::new();
    for comp in components.iter() {
        if comp.len() == 1 && !options.strict_alg3 {
            continue;
        }
        let omega = comp.iter().map(|&v| coloring.color(v)).max().unwrap_or(0);
        let h = if options.floor_h {
            omega / 2
        } else {
            ceil_half(omega)
        };
        let rank = if options.balance_colors {
            balanced_rank(comp, &coloring, omega)
        } else {
            (0..=omega).collect()
        };
        target.extend(
            comp.iter()
                .copied()
                .filter(|&v| rank[coloring.color(v)] <= h),
        );
    }
    let omega = coloring.max_color();
    Ok(TargetProposal::set(target, Some(ceil_half(omega))))
}

/// `⌈log₂ ω⌉` targets that together orient every line: target `j` holds the
/// vertices with lines whose `color - 1` has bit `j` set.
pub fn separating_targets(g: &EssentialGraph) -> Result<Vec<Vec<usize>>> {
    let graph = g.graph();
    if g.is_fully_directed() {
        return Ok(Vec::new());
    }
    let coloring = component_coloring(g)?;
    let omega = coloring.max_color();
    let k = omega.next_power_of_two().trailing_zeros() as usize;
    let targets = (0..k)
        .map(|j| {
            graph
                .vertices()
                .filter(|&v| {
                    !graph.neighbors(v).is_empty() && (coloring.color(v) - 1) >> j & 1 == 1
                })
                .collect()
        })
        .collect();
    Ok(targets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::{refine, TargetFamily};
    use crate::graph::Graph;
    use crate::strategies::ProposalKind;

    fn fig4a() -> EssentialGraph {
        let g =
            Graph::from_lines(5, [(1, 2), (2, 4), (4, 3), (3, 5), (5, 4), (3, 2), (2, 5)]).unwrap();
        EssentialGraph::from_parts(g, TargetFamily::observational(5)).unwrap()
    }

    fn fig4b() -> Graph {
        Graph::from_arrows(5, [(2, 1), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (5, 4)]).unwrap()
    }

    #[test]
    fn fig4_targets() {
        let opts = OptUnbOptions::default();
        let e = fig4a();
        let first = opt_unb(&e, &opts).unwrap();
        assert_eq!(first, TargetProposal::set(vec![1, 2, 3], Some(2)));
        let e = refine(&e, &first.vertices, &fig4b()).unwrap();
        let second = opt_unb(&e, &opts).unwrap();
        assert_eq!(second.vertices, vec![1, 3, 4]);
        let e = refine(&e, &second.vertices, &fig4b()).unwrap();
        assert!(e.is_fully_directed());
        assert!(opt_unb(&e, &opts).unwrap().is_none());
    }

    #[test]
    fn floor_variant_takes_fewer_colors() {
        let opts = OptUnbOptions {
            floor_h: true,
            ..Default::default()
        };
        assert_eq!(opt_unb(&fig4a(), &opts).unwrap().vertices, vec![1, 2, 3]);
        let tri = Graph::from_lines(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let e = EssentialGraph::from_parts(tri, TargetFamily::observational(3)).unwrap();
        assert_eq!(opt_unb(&e, &opts).unwrap().vertices, vec![1]);
        assert_eq!(
            opt_unb(&e, &OptUnbOptions::default()).unwrap().vertices,
            vec![1, 2]
        );
    }

    #[test]
    fn singletons_only_in_strict_mode() {
        let e = EssentialGraph::from_parts(
            Graph::from_lines(4, [(3, 4)]).unwrap(),
            TargetFamily::observational(4),
        )
        .unwrap();
        assert_eq!(
            opt_unb(&e, &OptUnbOptions::default()).unwrap().vertices,
            vec![3]
        );
        let strict = OptUnbOptions {
            strict_alg3: true,
            ..Default::default()
        };
        assert_eq!(opt_unb(&e, &strict).unwrap().vertices, vec![1, 2, 3]);

        let d = Graph::from_arrows(3, [(1, 2), (3, 2)]).unwrap();
        let e = EssentialGraph::from_parts(d, TargetFamily::observational(3)).unwrap();
        assert_eq!(
            opt_unb(&e, &OptUnbOptions::default()).unwrap().kind,
            ProposalKind::None
        );
        assert_eq!(opt_unb(&e, &strict).unwrap().vertices, vec![1, 2, 3]);
    }

    #[test]
    fn balanced_colors_prefer_small_classes() {
        // path 1-2-3-4-5 colors 1,2,1,2,1: class 2 is the smaller one
        let path = Graph::from_lines(5, [(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let e = EssentialGraph::from_parts(path, TargetFamily::observational(5)).unwrap();
        assert_eq!(
            opt_unb(&e, &OptUnbOptions::default()).unwrap().vertices,
            vec![1, 3, 5]
        );
        let opts = OptUnbOptions {
            balance_colors: true,
            ..Default::default()
        };
        assert_eq!(opt_unb(&e, &opts).unwrap().vertices, vec![2, 4]);
    }

    #[test]
    fn separating_targets_of_fig4() {
        let targets = separating_targets(&fig4a()).unwrap();
        // colors 1,2,1,3,4 give codes 00,01,00,10,11
        assert_eq!(targets, vec![vec![2, 5], vec![4, 5]]);
        let tri = Graph::from_lines(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let e = EssentialGraph::from_parts(tri, TargetFamily::observational(3)).unwrap();
        assert_eq!(separating_targets(&e).unwrap().len(), 2);
        let line = Graph::from_lines(2, [(1, 2)]).unwrap();
        let e = EssentialGraph::from_parts(line, TargetFamily::observational(2)).unwrap();
        assert_eq!(separating_targets(&e).unwrap(), vec![vec![2]]);
    }
}
