//! Intervention target selection.

mod baselines;
mod opt_single;
mod opt_unb;

pub use baselines::{max_nb, rand, rand_adv};
pub use opt_single::{opt_single, opt_single_scores};
pub use opt_unb::{opt_unb, separating_targets, OptUnbOptions};

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::equivalence::EssentialGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProposalKind {
    SingleVertex,
    VertexSet,
    None,
}

/// A proposed intervention target.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TargetProposal {
    pub kind: ProposalKind,
    pub vertices: Vec<usize>,
    /// Worst-case objective value, where the strategy computes one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub score: Option<usize>,
}

impl TargetProposal {
    pub fn none() -> Self {
        TargetProposal {
            kind: ProposalKind::None,
            vertices: Vec::new(),
            score: None,
        }
    }

    pub fn single(v: usize, score: Option<usize>) -> Self {
        TargetProposal {
            kind: ProposalKind::SingleVertex,
            vertices: vec![v],
            score,
        }
    }

    pub fn set(mut vertices: Vec<usize>, score: Option<usize>) -> Self {
        if vertices.is_empty() {
            return TargetProposal::none();
        }
        vertices.sort_unstable();
        vertices.dedup();
        TargetProposal {
            kind: ProposalKind::VertexSet,
            vertices,
            score,
        }
    }

    pub fn is_none(&self) -> bool {
        self.kind == ProposalKind::None
    }
}

/// Sequential strategies used in the active-learning loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Rand,
    RandAdv,
    MaxNb,
    OptSingle,
    OptUnb,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::Rand,
        Strategy::RandAdv,
        Strategy::MaxNb,
        Strategy::OptSingle,
        Strategy::OptUnb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Rand => "rand",
            Strategy::RandAdv => "rand-adv",
            Strategy::MaxNb => "max-nb",
            Strategy::OptSingle => "opt-single",
            Strategy::OptUnb => "opt-unb",
        }
    }

    /// Stable small integer used to derive per-strategy random streams.
    pub fn index(self) -> u64 {
        match self {
            Strategy::Rand => 0,
            Strategy::RandAdv => 1,
            Strategy::MaxNb => 2,
            Strategy::OptSingle => 3,
            Strategy::OptUnb => 4,
        }
    }

    pub fn propose<R: Rng + ?Sized>(
        self,
        g: &EssentialGraph,
        rng: &mut R,
        options: &OptUnbOptions,
    ) -> Result<TargetProposal> {
        match self {
            Strategy::Rand => Ok(rand(g, rng)),
            Strategy::RandAdv => Ok(rand_adv(g, rng)),
            Strategy::MaxNb => Ok(max_nb(g, rng)),
            Strategy::OptSingle => opt_single(g),
            Strategy::OptUnb => opt_unb(g, options),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown strategy {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert!("opt_single".parse::<Strategy>().is_err());
    }

    #[test]
    fn proposal_json() {
        let p = TargetProposal::single(5, Some(3));
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"kind":"single-vertex","vertices":[5],"score":3}"#
        );
        let none = TargetProposal::set(vec![], Some(1));
        assert!(none.is_none());
        assert_eq!(
            serde_json::to_string(&none).unwrap(),
            r#"{"kind":"none","vertices":[]}"#
        );
    }
}
