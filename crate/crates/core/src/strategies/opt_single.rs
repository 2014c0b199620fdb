use super::TargetProposal;
use crate::equivalence::{essential_graph, EssentialGraph, TargetFamily};
use crate::error::Result;
use crate::graph::{lex_bfs_sequence, neighbor_cliques};

/// Worst-case number of lines left after intervening at each single vertex;
/// `scores[v - 1]` belongs to vertex `v`.
///
/// The maximum over the class is taken over one representative per clique
/// `C` of line-neighbors of `v`: the chain component of `v` is oriented along
/// a LexBFS ordering that starts with `C` and then `v`, so exactly `C` points
/// into `v`. Only that component changes, so the score is the current line
/// count minus the arrows of the component's `{∅, {v}}`-essential graph.
/// A vertex without lines keeps every line.
pub fn opt_single_scores(g: &EssentialGraph) -> Result<Vec<usize>> {
    let graph = g.graph();
    let p = graph.p();
    let lines_now = graph.n_lines();
    let components = graph.chain_components();
    let mut scores = vec![lines_now; p];

    for v in graph.vertices() {
        if graph.neighbors(v).is_empty() {
            continue;
        }
        let comp = &components.components()[components.component_of(v)];
        let undirected = graph.restrict_to(comp);
        let family = TargetFamily::new(p, [vec![], vec![v]])?;
        let mut worst = 0;
        for clique in neighbor_cliques(graph, v) {
            let mut input = clique.clone();
            input.push(v);
            input.extend(
                comp.iter()
                    .copied()
                    .filter(|&w| w != v && !clique.contains(&w)),
            );
            let sigma = lex_bfs_sequence(&undirected, &input);
            let mut pos = vec![0; p + 1];
            for (i, &w) in sigma.iter().enumerate() {
                pos[w] = i;
            }
            let dag = undirected.orient_lines_by_position(&pos);
            let oriented = essential_graph(&dag, &family)?.graph().n_arrows();
            worst = worst.max(lines_now - oriented);
        }
        scores[v - 1] = worst;
    }
    Ok(scores)
}

/// The single vertex minimizing the worst-case number of remaining lines,
/// smallest index first among ties; `none` when there are no lines.
pub fn opt_single(g: &EssentialGraph) -> Result<TargetProposal> {
    if g.is_fully_directed() {
        return Ok(TargetProposal::none());
    }
    let scores = opt_single_scores(g)?;
    let graph = g.graph();
    let best = graph
        .vertices()
        .filter(|&v| !graph.neighbors(v).is_empty())
        .min_by_key(|&v| (scores[v - 1], v))
        .expect("a graph with lines has a vertex with neighbors");
    Ok(TargetProposal::single(best, Some(scores[best - 1])))
}
