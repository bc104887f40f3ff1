//! Coloring matrices: `n` rows of `n` integers, zero diagonal, symmetric,
//! off-diagonal entries in `1..=m`. Row and column numbers in errors are 1-based.

use std::fmt::Write;

use crate::coloring::{EdgeColoring, MAX_COLORS};
use crate::error::{Error, Result};
use crate::graph::MAX_ORDER;

pub fn parse_coloring_matrix(text: &str) -> Result<EdgeColoring> {
    let rows: Vec<Vec<&str>> = text
        .lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .filter(|r| !r.is_empty())
        .collect();
    let n = rows.len();
    if n > MAX_ORDER {
        return Err(Error::TooManyVertices(n));
    }
    let err = |row: usize, col: usize, msg: String| Error::Matrix { row: row + 1, col: col + 1, msg };

    let mut entries = vec![vec![0usize; n]; n];
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(err(r, row.len().min(n), format!("expected {n} entries, found {}", row.len())));
        }
        for (c, tok) in row.iter().enumerate() {
            entries[r][c] = tok
                .parse()
                .map_err(|_| err(r, c, format!("`{tok}` is not a nonnegative integer")))?;
        }
    }

    let mut m = 0;
    for r in 0..n {
        for c in 0..n {
            let x = entries[r][c];
            if r == c {
                if x != 0 {
                    return Err(err(r, c, format!("diagonal entry is {x}, expected 0")));
                }
                continue;
            }
            if x == 0 {
                return Err(err(r, c, "color 0 off the diagonal".into()));
            }
            if x > MAX_COLORS {
                return Err(err(r, c, format!("color {x} exceeds the {MAX_COLORS}-color limit")));
            }
            if entries[c][r] != x {
                return Err(err(r, c, format!("asymmetric: {x} here but {} at the mirror", entries[c][r])));
            }
            m = m.max(x);
        }
    }

    let mut coloring = EdgeColoring::uniform(n, m.max(1), 0)?;
    for u in 0..n {
        for v in u + 1..n {
            coloring.set_color(u, v, entries[u][v] - 1);
        }
    }
    Ok(coloring)
}

/// One row per line, entries separated by single spaces, trailing newline.
pub fn emit_coloring_matrix(c: &EdgeColoring) -> String {
    let n = c.order();
    let mut out = String::with_capacity(n * (2 * n + 1));
    for u in 0..n {
        for v in 0..n {
            if v > 0 {
                out.push(' ');
            }
            let x = if u == v { 0 } else { c.color(u, v) + 1 };
            write!(out, "{x}").unwrap();
        }
        out.push('\n');
    }
    out
}
