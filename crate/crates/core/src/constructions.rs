//! Named graphs, the embedded figure colorings and vertex cloning.

use std::fmt;
use std::str::FromStr;

use crate::coloring::EdgeColoring;
use crate::detect::{coloring_is_valid, Verdict};
use crate::error::{Error, Result};
use crate::format::parse_coloring_matrix;
use crate::graph::{Bits, Graph, MAX_ORDER};
use crate::target::Target;

/// The graph on the 27 lines of a smooth cubic surface, two lines adjacent
/// when they meet: strongly regular with parameters (27, 10, 1, 5).
pub fn schlafli() -> Graph {
    // a_i = i, b_i = 6 + i, c_ij = 12.. in lexicographic pair order.
    let pairs: Vec<(usize, usize)> = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).collect();
    let c = |p: usize| 12 + p;
    let mut g = Graph::empty(27).expect("27 vertices");
    for i in 0..6 {
        for j in 0..6 {
            if i != j {
                g.add_edge(i, 6 + j);
            }
        }
    }
    for (p, &(j, k)) in pairs.iter().enumerate() {
        for i in [j, k] {
            g.add_edge(i, c(p));
            g.add_edge(6 + i, c(p));
        }
        for (q, &(s, t)) in pairs.iter().enumerate().skip(p + 1) {
            if s != j && s != k && t != j && t != k {
                g.add_edge(c(p), c(q));
            }
        }
    }
    if g.degree(0) == 10 { g } else { g.complement() }
}

/// `K_k` minus one edge.
pub fn j_graph(k: usize) -> Result<Graph> {
    let mut g = Graph::complete(k)?;
    if k >= 2 {
        g.remove_edge(0, 1);
    }
    Ok(g)
}

pub fn two_k3() -> Graph {
    let k3 = Graph::complete(3).expect("3 vertices");
    k3.disjoint_union(&k3).expect("6 vertices")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedGraphId {
    Schlafli,
    J(usize),
    Cycle(usize),
    Clique(usize),
    TwoK3,
}

impl NamedGraphId {
    pub fn build(self) -> Result<Graph> {
        match self {
            NamedGraphId::Schlafli => Ok(schlafli()),
            NamedGraphId::J(k) => j_graph(k),
            NamedGraphId::Cycle(k) => Graph::cycle(k),
            NamedGraphId::Clique(k) => Graph::complete(k),
            NamedGraphId::TwoK3 => Ok(two_k3()),
        }
    }
}

impl fmt::Display for NamedGraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraphId::Schlafli => write!(f, "SCHLAFLI"),
            NamedGraphId::J(k) => write!(f, "J({k})"),
            NamedGraphId::Cycle(k) => write!(f, "CYCLE({k})"),
            NamedGraphId::Clique(k) => write!(f, "CLIQUE({k})"),
            NamedGraphId::TwoK3 => write!(f, "TWO_K3"),
        }
    }
}

impl FromStr for NamedGraphId {
    type Err = Error;

    /// Accepts `SCHLAFLI`, `TWO_K3`, and `J(k)`, `CYCLE(k)`, `CLIQUE(k)` or
    /// the short forms `J7`, `C6`, `K5`; case-insensitive.
    fn from_str(s: &str) -> Result<NamedGraphId> {
        let up = s.trim().to_ascii_uppercase();
        let bad = || Error::Precondition(format!("unknown graph id `{s}`"));
        match up.as_str() {
            "SCHLAFLI" => return Ok(NamedGraphId::Schlafli),
            "TWO_K3" | "2K3" => return Ok(NamedGraphId::TwoK3),
            _ => {}
        }
        let (head, arg) = match up.find('(') {
            Some(i) => (&up[..i], up[i + 1..].strip_suffix(')').ok_or_else(bad)?),
            None => {
                let i = up.find(|ch: char| ch.is_ascii_digit()).ok_or_else(bad)?;
                (&up[..i], &up[i..])
            }
        };
        let k: usize = arg.parse().map_err(|_| bad())?;
        match head {
            "J" => Ok(NamedGraphId::J(k)),
            "CYCLE" | "C" => Ok(NamedGraphId::Cycle(k)),
            "CLIQUE" | "K" => Ok(NamedGraphId::Clique(k)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Figure {
    /// A (K3, J4, J4; 20)-coloring.
    Fig3,
    /// A (J4, J4, K4; 32)-coloring.
    Fig4,
}

pub const FIG3_MATRIX: &str = include_str!("../assets/fig3.coloring");
pub const FIG4_MATRIX: &str = include_str!("../assets/fig4.coloring");

impl Figure {
    pub fn matrix_text(self) -> &'static str {
        match self {
            Figure::Fig3 => FIG3_MATRIX,
            Figure::Fig4 => FIG4_MATRIX,
        }
    }

    /// The targets avoided by colors 1, 2, 3 in order.
    pub fn targets(self) -> [Target; 3] {
        let j4 = Target::CliqueMinusEdge(4);
        match self {
            Figure::Fig3 => [Target::Clique(3), j4, j4],
            Figure::Fig4 => [j4, j4, Target::Clique(4)],
        }
    }
}

pub fn figure_coloring(which: Figure) -> EdgeColoring {
    parse_coloring_matrix(which.matrix_text()).expect("embedded figure matrices parse")
}

/// Adds a vertex `z` that copies `x` (equivalently `y`) toward every other
/// vertex and joins `x` and `y` in `link_color`.
pub fn clone_vertex(c: &EdgeColoring, x: usize, y: usize, link_color: usize) -> Result<EdgeColoring> {
    let n = c.order();
    for v in [x, y] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, order: n });
        }
    }
    if x == y {
        return Err(Error::Precondition(format!("x and y are both vertex {x}")));
    }
    if n + 1 > MAX_ORDER {
        return Err(Error::TooManyVertices(n + 1));
    }
    if link_color >= c.color_count() {
        return Err(Error::Precondition(format!(
            "link color {link_color} outside 0..{}",
            c.color_count()
        )));
    }
    if let Some(v) = (0..n).find(|&v| v != x && v != y && c.color(x, v) != c.color(y, v)) {
        return Err(Error::Precondition(format!(
            "vertex {v} sees x in color {} but y in color {}",
            c.color(x, v),
            c.color(y, v)
        )));
    }
    let mut classes = vec![Graph::empty(n + 1)?; c.color_count()];
    for u in 0..n {
        for v in u + 1..n {
            classes[c.color(u, v)].add_edge(u, v);
        }
    }
    for v in (0..n).filter(|&v| v != x && v != y) {
        classes[c.color(x, v)].add_edge(v, n);
    }
    classes[link_color].add_edge(x, n);
    classes[link_color].add_edge(y, n);
    EdgeColoring::from_classes(&classes)
}

/// Outcome of checking a (K3, K3, K3, K3+e)-coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C51Report {
    pub verdict: Verdict,
    /// Every triangle of the last color, vertices ascending.
    pub last_color_triangles: Vec<[usize; 3]>,
}

impl C51Report {
    pub fn is_valid(&self) -> bool {
        self.verdict.is_valid()
    }
}

pub fn c51_targets() -> [Target; 4] {
    [Target::Clique(3), Target::Clique(3), Target::Clique(3), Target::TrianglePlusPendant]
}

/// Checks that colors 0 to 2 are triangle-free and color 3 avoids K3+e, and
/// lists the triangles of color 3. Meant for 51 vertices, works for any.
pub fn verify_c51(c: &EdgeColoring) -> Result<C51Report> {
    if c.color_count() != 4 {
        return Err(Error::Precondition(format!("{} colors given, 4 required", c.color_count())));
    }
    let verdict = match coloring_is_valid(c, &c51_targets()) {
        Verdict::Valid { permuted: true, .. } => {
            // Only the stated order counts here; report its failure.
            let classes = c.color_classes();
            let t = c51_targets();
            let bad = (0..4).find(|&i| crate::detect::contains(&classes[i], t[i])).expect("identity failed");
            let copy = crate::detect::find_copy(&classes[bad], t[bad]).expect("copy exists");
            Verdict::Invalid { color: bad, target: t[bad], copy }
        }
        v => v,
    };
    let yellow = c.color_class(3);
    let adj = yellow.adjacency();
    let mut tris = Vec::new();
    for a in 0..yellow.order() {
        for b in Bits(adj[a] & !crate::graph::low_bits(a + 1)) {
            for t in Bits(adj[a] & adj[b] & !crate::graph::low_bits(b + 1)) {
                tris.push([a, b, t]);
            }
        }
    }
    Ok(C51Report { verdict, last_color_triangles: tris })
}
