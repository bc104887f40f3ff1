//! Splittability as a CNF formula, and DIMACS text.

use std::fmt::Write;

use crate::detect::{list_copies, Edge};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::target::Target;

/// Variables are `1..=var_count`; literal `-x` is the negation of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CnfFormula {
    pub var_count: usize,
    pub clauses: Vec<Vec<i32>>,
    /// `edges[x - 1]` is the host edge of variable `x`, when the formula
    /// encodes a graph.
    pub edges: Vec<Edge>,
}

impl CnfFormula {
    pub fn new(var_count: usize, clauses: Vec<Vec<i32>>) -> CnfFormula {
        CnfFormula { var_count, clauses, edges: Vec::new() }
    }

    pub fn variable_of(&self, u: usize, v: usize) -> Option<usize> {
        let e = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&e).ok().map(|i| i + 1)
    }

    /// Every clause has a true literal under `model` (`model[x - 1]` is `x`).
    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let val = model[l.unsigned_abs() as usize - 1];
                if l > 0 { val } else { !val }
            })
        })
    }
}

/// One variable per edge of `g` (edges in lexicographic order). A variable
/// is false when its edge takes the `t_false` color and true for `t_true`.
/// Each copy of `t_false` in `g` contributes its edges as a positive clause,
/// each copy of `t_true` a negative one, so the formula is satisfiable
/// exactly when `g` splits into a `t_false`-free and a `t_true`-free part.
pub fn encode_split_cnf(g: &Graph, t_false: Target, t_true: Target) -> CnfFormula {
    let edges: Vec<Edge> = g.edges().collect();
    let var = |e: &Edge| edges.binary_search(e).expect("copy edges are host edges") as i32 + 1;
    let mut clauses = Vec::new();
    for copy in list_copies(g, t_false).copies {
        clauses.push(copy.iter().map(var).collect());
    }
    for copy in list_copies(g, t_true).copies {
        clauses.push(copy.iter().map(|e| -var(e)).collect());
    }
    CnfFormula { var_count: edges.len(), clauses, edges }
}

/// `p cnf` header, one clause per line terminated by `0`; when the formula
/// encodes a graph, `c var <x> <u> <v>` comments record the edge map.
pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    for (i, (u, v)) in f.edges.iter().enumerate() {
        writeln!(out, "c var {} {u} {v}", i + 1).unwrap();
    }
    writeln!(out, "p cnf {} {}", f.var_count, f.clauses.len()).unwrap();
    for c in &f.clauses {
        for l in c {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}

/// Reads DIMACS CNF, including the `c var` edge comments written above.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut edges = Vec::new();
    let mut current = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let err = |msg: String| Error::Dimacs { line: i + 1, msg };
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if let ["var", x, u, v] = parts[..] {
                let parse = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad edge comment `{line}`")));
                let x = parse(x)?;
                if x != edges.len() + 1 {
                    return Err(err(format!("edge comment for variable {x} out of order")));
                }
                edges.push((parse(u)?, parse(v)?));
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts[..] {
                ["cnf", vars, n_clauses] => {
                    let vars = vars.parse().map_err(|_| err("bad variable count".into()))?;
                    let n_clauses = n_clauses.parse().map_err(|_| err("bad clause count".into()))?;
                    header = Some((vars, n_clauses));
                }
                _ => return Err(err(format!("malformed header `{line}`"))),
            }
            continue;
        }
        let (vars, _) = header.ok_or_else(|| err("clause before `p cnf` header".into()))?;
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| err(format!("`{tok}` is not a literal")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(err(format!("literal {lit} exceeds {vars} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let (var_count, expected) = header.ok_or(Error::Dimacs { line: 0, msg: "missing `p cnf` header".into() })?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != expected {
        return Err(Error::Dimacs {
            line: text.lines().count(),
            msg: format!("header announces {expected} clauses, found {}", clauses.len()),
        });
    }
    if !edges.is_empty() && edges.len() != var_count {
        edges.clear();
    }
    Ok(CnfFormula { var_count, clauses, edges })
}
