//! Plain-text graph format.
//!
//! ```text
//! # comment
//! p=4
//! 1 -> 2
//! 1 -- 3
//! ```
//!
//! Vertices are 1-based. The writer emits edges sorted by their unordered
//! vertex pair, which makes `write(read(s)) == s` for canonical files.

use std::fmt;
use std::str::FromStr;

use super::{Edge, Graph};
use crate::error::Error;

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p={}", self.p())?;
        for a in self.vertices() {
            let mut later: Vec<(usize, Edge)> = self
                .children(a)
                .iter()
                .map(|&b| (b, Edge::Forward))
                .chain(self.parents(a).iter().map(|&b| (b, Edge::Backward)))
                .chain(self.neighbors(a).iter().map(|&b| (b, Edge::Line)))
                .filter(|&(b, _)| b > a)
                .collect();
            later.sort_unstable_by_key(|&(b, _)| b);
            for (b, e) in later {
                match e {
                    Edge::Forward => writeln!(f, "{a} -> {b}")?,
                    Edge::Backward => writeln!(f, "{b} -> {a}")?,
                    Edge::Line => writeln!(f, "{a} -- {b}")?,
                }
            }
        }
        Ok(())
    }
}

fn parse_vertex(s: &str, line: usize) -> Result<usize, Error> {
    s.trim().parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a vertex index, found {:?}", s.trim()),
    })
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut graph: Option<Graph> = None;
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let Some(g) = graph.as_mut() else {
                let n = text.strip_prefix("p=").ok_or_else(|| Error::Parse {
                    line,
                    msg: "expected header `p=<n>`".into(),
                })?;
                graph = Some(Graph::new(parse_vertex(n, line)?));
                continue;
            };
            let (a, b, arrow) = if let Some((a, b)) = text.split_once("->") {
                (a, b, true)
            } else if let Some((a, b)) = text.split_once("--") {
                (a, b, false)
            } else {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected `a -> b` or `a -- b`, found {text:?}"),
                });
            };
            let (a, b) = (parse_vertex(a, line)?, parse_vertex(b, line)?);
            let located = |e: Error| Error::Parse {
                line,
                msg: e.to_string(),
            };
            g.check_pair(a, b).map_err(located)?;
            if g.is_adjacent(a, b) {
                return Err(located(Error::DuplicateEdge { a, b }));
            }
            if arrow {
                g.add_arrow(a, b).map_err(located)?;
            } else {
                g.add_line(a, b).map_err(located)?;
            }
        }
        graph.ok_or(Error::Parse {
            line: 0,
            msg: "missing header `p=<n>`".into(),
        })
    }
}
