//! Splittability and arrowing.
//!
//! A graph is splittable for targets `T_0,...,T_{m-1}` when its edges can be
//! colored so that color `i` contains no `T_i`; otherwise it arrows the
//! targets. Two targets are decided by SAT or by recursion, more by
//! recursion only.

pub mod cnf;
pub mod recursive;
pub mod sat;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use cnf::{encode_split_cnf, parse_dimacs, write_dimacs, CnfFormula};
pub use recursive::recursive_split;
pub use sat::{sat_solve, solve_with_budget, SatBudget, SatResult, SatStats};

use crate::coloring::EdgeColoring;
use crate::detect::{contains, Edge};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::target::Target;

/// A coloring of the edges of a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitWitness {
    pub order: usize,
    pub color_count: usize,
    /// Host edges in lexicographic order.
    pub edges: Vec<Edge>,
    /// `colors[i]` is the color of `edges[i]`, in `0..color_count`.
    pub colors: Vec<u8>,
}

impl SplitWitness {
    pub fn color_of(&self, u: usize, v: usize) -> Option<usize> {
        let e = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&e).ok().map(|i| self.colors[i] as usize)
    }

    /// The spanning subgraph formed by color `i`.
    pub fn class(&self, i: usize) -> Graph {
        let edges: Vec<Edge> =
            self.edges.iter().zip(&self.colors).filter(|&(_, &c)| c as usize == i).map(|(&e, _)| e).collect();
        Graph::from_edges(self.order, &edges).expect("witness edges fit the host")
    }

    pub fn classes(&self) -> Vec<Graph> {
        (0..self.color_count).map(|i| self.class(i)).collect()
    }

    /// Color `i` avoids `targets[i]` for every `i`.
    pub fn is_valid_for(&self, targets: &[Target]) -> bool {
        targets.len() == self.color_count && self.classes().iter().zip(targets).all(|(g, &t)| !contains(g, t))
    }

    /// Extends the witness to `K_n` by giving every non-edge of the host the
    /// extra color `color_count`.
    pub fn to_coloring(&self) -> Result<EdgeColoring> {
        let mut classes = self.classes();
        let mut host = Graph::empty(self.order)?;
        for &(u, v) in &self.edges {
            host.add_edge(u, v);
        }
        classes.push(host.complement());
        EdgeColoring::from_classes(&classes)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Engine {
    #[default]
    Sat,
    Recurse,
    /// Runs both and fails if they disagree.
    Both,
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Engine> {
        match s {
            "sat" => Ok(Engine::Sat),
            "recurse" => Ok(Engine::Recurse),
            "both" => Ok(Engine::Both),
            _ => Err(Error::Precondition(format!("unknown engine `{s}` (expected sat, recurse or both)"))),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Sat => "sat",
            Engine::Recurse => "recurse",
            Engine::Both => "both",
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SplitOptions {
    pub engine: Engine,
    pub budget: SatBudget,
}

fn check_targets(targets: &[Target]) -> Result<()> {
    if !(1..=4).contains(&targets.len()) {
        return Err(Error::Precondition(format!("{} targets given, 1 to 4 supported", targets.len())));
    }
    for &t in targets {
        t.validate()?;
    }
    Ok(())
}

fn sat_split(g: &Graph, t0: Target, t1: Target, budget: SatBudget) -> Result<Option<SplitWitness>> {
    let f = encode_split_cnf(g, t0, t1);
    match solve_with_budget(&f, budget)?.0 {
        SatResult::Unsat => Ok(None),
        SatResult::Sat(model) => Ok(Some(SplitWitness {
            order: g.order(),
            color_count: 2,
            edges: f.edges,
            colors: model.into_iter().map(u8::from).collect(),
        })),
    }
}

/// A witness coloring, or `None` when `g` arrows `targets`.
pub fn split_with(g: &Graph, targets: &[Target], opts: &SplitOptions) -> Result<Option<SplitWitness>> {
    check_targets(targets)?;
    let witness = match (targets.len(), opts.engine) {
        (2, Engine::Sat) => sat_split(g, targets[0], targets[1], opts.budget)?,
        (2, Engine::Both) => {
            let by_sat = sat_split(g, targets[0], targets[1], opts.budget)?;
            let by_rec = recursive_split(g, targets);
            if by_sat.is_some() != by_rec.is_some() {
                return Err(Error::Precondition(format!(
                    "engines disagree: SAT says {}, recursion says {}",
                    verdict_word(by_sat.is_some()),
                    verdict_word(by_rec.is_some())
                )));
            }
            by_sat
        }
        _ => recursive_split(g, targets),
    };
    if let Some(w) = &witness {
        assert!(w.is_valid_for(targets), "engine returned an invalid witness");
    }
    Ok(witness)
}

fn verdict_word(splittable: bool) -> &'static str {
    if splittable { "SPLITTABLE" } else { "UNSPLITTABLE" }
}

/// Default engine, no budget.
pub fn split(g: &Graph, targets: &[Target]) -> Result<Option<SplitWitness>> {
    split_with(g, targets, &SplitOptions::default())
}

pub fn is_splittable(g: &Graph, targets: &[Target]) -> Result<bool> {
    split(g, targets).map(|w| w.is_some())
}

/// Every coloring of `g`'s edges puts some `targets[i]` in color `i`.
pub fn arrows(g: &Graph, targets: &[Target]) -> Result<bool> {
    is_splittable(g, targets).map(|s| !s)
}

/// Outcome of trying every coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exhaustive {
    pub examined: u64,
    /// Colorings avoiding every target; zero means `g` arrows the targets.
    pub avoiding: u64,
}

/// Tries all `m^|E|` colorings of `g`'s edges. Refuses more than `2^24`.
pub fn brute_force_split(g: &Graph, targets: &[Target]) -> Result<Exhaustive> {
    check_targets(targets)?;
    let edges: Vec<Edge> = g.edges().collect();
    let m = targets.len() as u64;
    let total = (0..edges.len()).try_fold(1u64, |acc, _| acc.checked_mul(m).filter(|&t| t <= 1 << 24));
    let Some(total) = total else {
        return Err(Error::Resource(format!("{m}^{} colorings is too many to enumerate", edges.len())));
    };
    let n = g.order();
    let avoiding = (0..total)
        .into_par_iter()
        .filter(|&code| {
            let mut classes = vec![Graph::empty(n).expect("host order"); targets.len()];
            let mut rest = code;
            for &(u, v) in &edges {
                classes[(rest % m) as usize].add_edge(u, v);
                rest /= m;
            }
            classes.iter().zip(targets).all(|(c, &t)| !contains(c, t))
        })
        .count() as u64;
    Ok(Exhaustive { examined: total, avoiding })
}

/// Colors `K_n` with `red`'s edges in color 0 and the witness colors, shifted
/// up by one, on the edges of `red`'s complement.
pub fn compose_coloring(red: &Graph, witness: &SplitWitness) -> Result<EdgeColoring> {
    let co = red.complement();
    if witness.order != red.order() || !co.edges().eq(witness.edges.iter().copied()) {
        return Err(Error::Precondition("witness does not color exactly the complement of the red graph".into()));
    }
    let mut classes = vec![red.clone()];
    classes.extend(witness.classes());
    EdgeColoring::from_classes(&classes)
}
