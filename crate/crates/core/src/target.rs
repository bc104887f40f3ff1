//! The forbidden-subgraph family.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A forbidden subgraph, matched non-induced.
///
/// Text tokens: `K<k>`, `J<k>` (`K_k` minus an edge), `K3e` (triangle with a
/// pendant edge), `K<k>mP3` (`K_k` minus the two edges of a 3-vertex path),
/// `C<k>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Clique(usize),
    CliqueMinusEdge(usize),
    TrianglePlusPendant,
    CliqueMinusP3(usize),
    Cycle(usize),
}

const MAX_TARGET_ORDER: usize = 16;

impl Target {
    pub fn validate(self) -> Result<Self> {
        let (k, lo) = match self {
            Target::Clique(k) => (k, 2),
            Target::CliqueMinusEdge(k) => (k, 4),
            Target::TrianglePlusPendant => (4, 4),
            Target::CliqueMinusP3(k) => (k, 4),
            Target::Cycle(k) => (k, 3),
        };
        if k < lo || k > MAX_TARGET_ORDER {
            return Err(Error::InvalidTarget(format!(
                "{self:?}: parameter must lie in {lo}..={MAX_TARGET_ORDER}"
            )));
        }
        Ok(self)
    }

    pub fn order(self) -> usize {
        match self {
            Target::Clique(k) | Target::CliqueMinusEdge(k) | Target::CliqueMinusP3(k) | Target::Cycle(k) => k,
            Target::TrianglePlusPendant => 4,
        }
    }

    pub fn edge_count(self) -> usize {
        match self {
            Target::Clique(k) => k * (k - 1) / 2,
            Target::CliqueMinusEdge(k) => k * (k - 1) / 2 - 1,
            Target::TrianglePlusPendant => 4,
            Target::CliqueMinusP3(k) => k * (k - 1) / 2 - 2,
            Target::Cycle(k) => k,
        }
    }

    /// `|Aut(T)|`, used to turn embedding counts into copy counts.
    pub fn automorphism_count(self) -> u64 {
        let fact = |k: usize| (1..=k as u64).product::<u64>();
        match self {
            Target::Clique(k) => fact(k),
            Target::CliqueMinusEdge(k) => 2 * fact(k - 2),
            Target::TrianglePlusPendant => 2,
            Target::CliqueMinusP3(k) => 2 * fact(k - 3),
            Target::Cycle(k) => 2 * k as u64,
        }
    }

    /// A fixed labeled copy of the target.
    ///
    /// `J_k` misses edge `{0,1}`; `K3+e` is the triangle `{0,1,2}` with
    /// pendant `2-3`; `K_k - P3` misses `{0,1}` and `{1,2}`.
    pub fn pattern(self) -> Graph {
        let k = self.order();
        match self {
            Target::Clique(_) => Graph::complete(k).unwrap(),
            Target::CliqueMinusEdge(_) => {
                let mut g = Graph::complete(k).unwrap();
                g.remove_edge(0, 1);
                g
            }
            Target::TrianglePlusPendant => {
                Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap()
            }
            Target::CliqueMinusP3(_) => {
                let mut g = Graph::complete(k).unwrap();
                g.remove_edge(0, 1);
                g.remove_edge(1, 2);
                g
            }
            Target::Cycle(_) => Graph::cycle(k).unwrap(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Clique(k) => write!(f, "K{k}"),
            Target::CliqueMinusEdge(k) => write!(f, "J{k}"),
            Target::TrianglePlusPendant => write!(f, "K3e"),
            Target::CliqueMinusP3(k) => write!(f, "K{k}mP3"),
            Target::Cycle(k) => write!(f, "C{k}"),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownTarget(s.to_string());
        let num = |t: &str| t.parse::<usize>().map_err(|_| unknown());
        let t = s.trim();
        let target = if t.eq_ignore_ascii_case("K3e") || t == "K3+e" {
            Target::TrianglePlusPendant
        } else if let Some(rest) = t.strip_prefix('K') {
            if let Some(k) = rest.strip_suffix("mP3").or_else(|| rest.strip_suffix("-P3")) {
                Target::CliqueMinusP3(num(k)?)
            } else {
                Target::Clique(num(rest)?)
            }
        } else if let Some(rest) = t.strip_prefix('J') {
            Target::CliqueMinusEdge(num(rest)?)
        } else if let Some(rest) = t.strip_prefix('C') {
            Target::Cycle(num(rest)?)
        } else {
            return Err(unknown());
        };
        target.validate()
    }
}

/// Parses a comma-separated target list such as `K3,J4,J4`.
pub fn parse_target_list(s: &str) -> Result<Vec<Target>> {
    s.split(',').map(str::parse).collect()
}
