//! Partially directed graphs on the vertex set `1..=p`.
//!
//! A single type covers DAGs, essential graphs and undirected skeletons. Every
//! vertex keeps three sorted adjacency lists (children, parents and line
//! neighbors), so parent/neighbor/degree queries are `O(deg)` and adjacency
//! tests are `O(log deg)`.

mod chordal;
mod io;

pub use chordal::{
    clique_number, greedy_coloring, is_chordal, is_perfect_elimination_ordering, lex_bfs,
    neighbor_cliques,
};
pub(crate) use chordal::{greedy_coloring_sequence, lex_bfs_sequence, peo_violation};

use std::collections::{BTreeSet, VecDeque};
use std::ops::RangeInclusive;

use crate::error::{Error, Result};

/// Kind of the edge between an ordered vertex pair `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    /// `a -> b`
    Forward,
    /// `b -> a`
    Backward,
    /// `a -- b`
    Line,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    p: usize,
    // All three are indexed by vertex; slot 0 is unused.
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    neighbors: Vec<Vec<usize>>,
}

fn insert_sorted(list: &mut Vec<usize>, x: usize) {
    if let Err(i) = list.binary_search(&x) {
        list.insert(i, x);
    }
}

fn remove_sorted(list: &mut Vec<usize>, x: usize) -> bool {
    match list.binary_search(&x) {
        Ok(i) => {
            list.remove(i);
            true
        }
        Err(_) => false,
    }
}

impl Graph {
    /// Edgeless graph on `1..=p`.
    pub fn new(p: usize) -> Self {
        Graph {
            p,
            children: vec![Vec::new(); p + 1],
            parents: vec![Vec::new(); p + 1],
            neighbors: vec![Vec::new(); p + 1],
        }
    }

    /// Builds a graph from arrows `a -> b`. Fails on self-loops, out-of-range
    /// vertices and pairs listed twice (in either direction).
    pub fn from_arrows<I>(p: usize, arrows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(p);
        for (a, b) in arrows {
            g.check_pair(a, b)?;
            if g.is_adjacent(a, b) {
                return Err(Error::DuplicateEdge { a, b });
            }
            g.add_arrow(a, b)?;
        }
        Ok(g)
    }

    /// Builds an undirected graph from lines. Repeated lines collapse.
    pub fn from_lines<I>(p: usize, lines: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(p);
        for (a, b) in lines {
            g.check_pair(a, b)?;
            g.neighbors[a].push(b);
            g.neighbors[b].push(a);
        }
        for nb in &mut g.neighbors {
            nb.sort_unstable();
            nb.dedup();
        }
        Ok(g)
    }

    /// Builds a graph from a set of ordered pairs: a pair present in both
    /// directions is a line, otherwise an arrow.
    pub fn from_pairs<I>(p: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            for v in [a, b] {
                if v == 0 || v > p {
                    return Err(Error::VertexOutOfRange { vertex: v, p });
                }
            }
            set.insert((a, b));
        }
        let mut g = Graph::new(p);
        for &(a, b) in &set {
            if set.contains(&(b, a)) {
                if a < b {
                    g.add_line(a, b)?;
                }
            } else {
                g.add_arrow(a, b)?;
            }
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.p {
            Err(Error::VertexOutOfRange {
                vertex: v,
                p: self.p,
            })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        Ok(())
    }

    /// Sets the edge between `a` and `b` to the arrow `a -> b`, replacing any
    /// existing edge between them.
    pub fn add_arrow(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        self.remove_edge(a, b);
        insert_sorted(&mut self.children[a], b);
        insert_sorted(&mut self.parents[b], a);
        Ok(())
    }

    /// Sets the edge between `a` and `b` to the line `a -- b`.
    pub fn add_line(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        self.remove_edge(a, b);
        insert_sorted(&mut self.neighbors[a], b);
        insert_sorted(&mut self.neighbors[b], a);
        Ok(())
    }

    /// Removes whatever edge joins `a` and `b`; returns whether one existed.
    pub fn remove_edge(&mut self, a: usize, b: usize) -> bool {
        if a == 0 || b == 0 || a > self.p || b > self.p {
            return false;
        }
        let mut removed = remove_sorted(&mut self.children[a], b);
        removed |= remove_sorted(&mut self.parents[b], a);
        removed |= remove_sorted(&mut self.children[b], a);
        removed |= remove_sorted(&mut self.parents[a], b);
        removed |= remove_sorted(&mut self.neighbors[a], b);
        removed |= remove_sorted(&mut self.neighbors[b], a);
        removed
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn vertices(&self) -> RangeInclusive<usize> {
        1..=self.p
    }

    /// Tails of arrows pointing into `v`.
    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Vertices joined to `v` by a line.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.parents[v].len() + self.children[v].len() + self.neighbors[v].len()
    }

    pub fn edge(&self, a: usize, b: usize) -> Option<Edge> {
        if a == 0 || b == 0 || a > self.p || b > self.p {
            return None;
        }
        if self.neighbors[a].binary_search(&b).is_ok() {
            Some(Edge::Line)
        } else if self.children[a].binary_search(&b).is_ok() {
            Some(Edge::Forward)
        } else if self.parents[a].binary_search(&b).is_ok() {
            Some(Edge::Backward)
        } else {
            None
        }
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.edge(a, b).is_some()
    }

    pub fn has_arrow(&self, a: usize, b: usize) -> bool {
        self.edge(a, b) == Some(Edge::Forward)
    }

    pub fn has_line(&self, a: usize, b: usize) -> bool {
        self.edge(a, b) == Some(Edge::Line)
    }

    /// All arrows `(a, b)`, sorted.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices()
            .flat_map(move |a| self.children[a].iter().map(move |&b| (a, b)))
    }

    /// All lines as `(a, b)` with `a < b`, sorted.
    pub fn lines(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices().flat_map(move |a| {
            self.neighbors[a]
                .iter()
                .filter(move |&&b| a < b)
                .map(move |&b| (a, b))
        })
    }

    pub fn n_arrows(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    pub fn n_lines(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn n_edges(&self) -> usize {
        self.n_arrows() + self.n_lines()
    }

    pub fn is_undirected(&self) -> bool {
        self.n_arrows() == 0
    }

    /// Topological ordering of the arrows (lines are ignored), or `None` if
    /// the arrows contain a cycle. Among available vertices the smallest index
    /// comes first.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = self.vertices().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.p);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &c in &self.children[v] {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        (order.len() == self.p).then_some(order)
    }

    pub fn is_dag(&self) -> bool {
        self.n_lines() == 0 && self.topological_order().is_some()
    }

    /// True iff the graph has no directed cycle, i.e. arrows never join two
    /// vertices of the same chain component and the arrows between chain
    /// components are acyclic.
    pub fn is_chain_graph(&self) -> bool {
        let comps = self.chain_components();
        let k = comps.len();
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut indeg = vec![0usize; k];
        for (a, b) in self.arrows() {
            let (ca, cb) = (comps.component_of(a), comps.component_of(b));
            if ca == cb {
                return false;
            }
            out[ca].push(cb);
            indeg[cb] += 1;
        }
        let mut queue: VecDeque<usize> = (0..k).filter(|&c| indeg[c] == 0).collect();
        let mut seen = 0;
        while let Some(c) = queue.pop_front() {
            seen += 1;
            for &d in &out[c] {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    queue.push_back(d);
                }
            }
        }
        seen == k
    }

    /// Every edge becomes a line.
    pub fn skeleton(&self) -> Graph {
        let mut neighbors = self.neighbors.clone();
        for v in self.vertices() {
            neighbors[v].extend_from_slice(&self.parents[v]);
            neighbors[v].extend_from_slice(&self.children[v]);
            neighbors[v].sort_unstable();
        }
        Graph {
            p: self.p,
            children: vec![Vec::new(); self.p + 1],
            parents: vec![Vec::new(); self.p + 1],
            neighbors,
        }
    }

    /// Induced v-structures `a -> b <- c` as triples `(a, b, c)` with `a < c`.
    pub fn v_structures(&self) -> BTreeSet<(usize, usize, usize)> {
        let mut out = BTreeSet::new();
        for b in self.vertices() {
            let pa = &self.parents[b];
            for (i, &a) in pa.iter().enumerate() {
                for &c in &pa[i + 1..] {
                    if !self.is_adjacent(a, c) {
                        out.insert((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// Connected components of the line-only subgraph.
    pub fn chain_components(&self) -> ChainComponents {
        let mut component_of = vec![usize::MAX; self.p + 1];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for s in self.vertices() {
            if component_of[s] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![s];
            component_of[s] = id;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.neighbors[v] {
                    if component_of[w] == usize::MAX {
                        component_of[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        ChainComponents {
            component_of,
            components,
        }
    }

    /// Same vertex set; keeps only the edges with both endpoints in `keep`.
    pub fn restrict_to(&self, keep: &[usize]) -> Graph {
        let mut inside = vec![false; self.p + 1];
        for &v in keep {
            inside[v] = true;
        }
        let filter = |lists: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
            lists
                .iter()
                .enumerate()
                .map(|(v, l)| {
                    if inside[v] {
                        l.iter().copied().filter(|&w| inside[w]).collect()
                    } else {
                        Vec::new()
                    }
                })
                .collect()
        };
        Graph {
            p: self.p,
            children: filter(&self.children),
            parents: filter(&self.parents),
            neighbors: filter(&self.neighbors),
        }
    }

    /// Orients every line `a -- b` as `a -> b` iff `a` precedes `b` in
    /// `order`. Arrows are kept.
    pub fn orient_by_ordering(&self, order: &VertexOrdering) -> Graph {
        self.orient_lines_by_position(&order.positions())
    }

    /// `pos[v]` is the rank of `v`; only the relative order of the endpoints
    /// of each line matters.
    pub(crate) fn orient_lines_by_position(&self, pos: &[usize]) -> Graph {
        let mut g = self.clone();
        for v in self.vertices() {
            g.neighbors[v].clear();
        }
        for (a, b) in self.lines() {
            let (tail, head) = if pos[a] < pos[b] { (a, b) } else { (b, a) };
            insert_sorted(&mut g.children[tail], head);
            insert_sorted(&mut g.parents[head], tail);
        }
        g
    }
}

/// A permutation of `1..=p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexOrdering(Vec<usize>);

impl VertexOrdering {
    pub fn new(p: usize, sequence: Vec<usize>) -> Result<Self> {
        if sequence.len() != p {
            return Err(Error::InvalidOrdering(format!(
                "expected {p} vertices, got {}",
                sequence.len()
            )));
        }
        let mut seen = vec![false; p + 1];
        for &v in &sequence {
            if v == 0 || v > p {
                return Err(Error::VertexOutOfRange { vertex: v, p });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidOrdering(format!("vertex {v} repeated")));
            }
        }
        Ok(VertexOrdering(sequence))
    }

    pub fn identity(p: usize) -> Self {
        VertexOrdering((1..=p).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `positions()[v]` is the index of `v` in the ordering.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len() + 1];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

/// A map from vertices `1..=p` to colors `1, 2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring(Vec<usize>);

impl Coloring {
    pub(crate) fn from_raw(colors: Vec<usize>) -> Self {
        Coloring(colors)
    }

    pub fn color(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn max_color(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Vertices with color `c`, ascending.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (1..self.0.len()).filter(|&v| self.0[v] == c).collect()
    }

    /// No line joins two vertices of the same color.
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.lines().all(|(a, b)| self.0[a] != self.0[b])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComponents {
    component_of: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl ChainComponents {
    /// Index (into [`Self::components`]) of the component containing `v`.
    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    /// Components ordered by smallest vertex; each is sorted.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.components.iter().map(Vec::as_slice)
    }
}
