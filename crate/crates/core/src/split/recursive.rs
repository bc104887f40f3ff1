//! Backtracking edge coloring for any number of colors.
//!
//! Copies of every target are listed once up front. Each copy keeps a count
//! of its edges already painted in the copy's color, so assigning a color to
//! an edge only inspects the copies through that edge, and a copy whose count
//! reaches its size is a forbidden monochromatic structure. A copy one edge
//! short of monochromatic forbids that color on its last edge. The next edge
//! is one with the fewest colors left, ties going to the edge whose live
//! copies are closest to monochromatic, then to the lowest edge; its colors
//! are tried least risky first.

use crate::detect::{list_copies, Edge};
use crate::graph::Graph;
use crate::split::SplitWitness;
use crate::target::Target;

struct Copies {
    size: usize,
    // Edge indices of each copy.
    edges: Vec<Vec<usize>>,
    // Copies through each edge.
    through: Vec<Vec<usize>>,
}

struct Splitter {
    copies: Vec<Copies>,
    colors: Vec<Option<u8>>,
    // painted[c][k]: edges of copy k of target c painted c.
    painted: Vec<Vec<u32>>,
    // other[c][k]: edges of that copy painted another color; such a copy
    // can no longer become monochromatic.
    other: Vec<Vec<u32>>,
    // Sum over live copies through each edge of a weight growing with how
    // close the copy is to monochromatic.
    score: Vec<u64>,
    // forbid[e][c]: copies of target c through e whose other edges are all c.
    forbid: Vec<[u32; 4]>,
    // Edges per color, for breaking symmetry between equal targets.
    used: Vec<usize>,
    // twin[c]: a lower color with the same target, if any.
    twin: Vec<Option<usize>>,
}

#[inline]
fn weight(painted: u32, other: u32) -> u64 {
    if other > 0 { 0 } else { 1 << (2 * painted) }
}

impl Splitter {
    /// Uncolored edge to branch on and its open colors; `None` when done.
    fn pick(&self) -> Option<(usize, u8)> {
        let m = self.copies.len();
        let mut best: Option<(usize, u8, u32)> = None;
        for e in 0..self.colors.len() {
            if self.colors[e].is_some() {
                continue;
            }
            let open = (0..m).filter(|&c| self.forbid[e][c] == 0).fold(0u8, |s, c| s | 1 << c);
            let size = open.count_ones();
            if size == 0 {
                return Some((e, 0));
            }
            // Fewest open colors first, then the highest score.
            let better = match best {
                None => true,
                Some((b, _, bsize)) => size < bsize || (size == bsize && self.score[e] > self.score[b]),
            };
            if better {
                best = Some((e, open, size));
            }
        }
        best.map(|(e, open, _)| (e, open))
    }

    /// The edge of copy `k` of color `c` not painted `c`, other than `skip`.
    fn odd_edge(&self, c: usize, k: usize, skip: usize) -> usize {
        *self.copies[c].edges[k]
            .iter()
            .find(|&&f| f != skip && self.colors[f] != Some(c as u8))
            .expect("copy has an edge outside the color")
    }

    fn rescore(&mut self, d: usize, k: usize, before: u64) {
        let after = weight(self.painted[d][k], self.other[d][k]);
        if after != before {
            for &f in &self.copies[d].edges[k] {
                self.score[f] = self.score[f] + after - before;
            }
        }
    }

    fn paint(&mut self, e: usize, c: usize) {
        self.colors[e] = Some(c as u8);
        self.used[c] += 1;
        for d in 0..self.copies.len() {
            let size = self.copies[d].size as u32;
            for i in 0..self.copies[d].through[e].len() {
                let k = self.copies[d].through[e][i];
                let before = weight(self.painted[d][k], self.other[d][k]);
                if d == c {
                    self.painted[d][k] += 1;
                    if self.painted[d][k] + 1 == size {
                        let f = self.odd_edge(d, k, e);
                        self.forbid[f][d] += 1;
                    }
                } else {
                    self.other[d][k] += 1;
                }
                self.rescore(d, k, before);
            }
        }
    }

    fn unpaint(&mut self, e: usize, c: usize) {
        for d in 0..self.copies.len() {
            let size = self.copies[d].size as u32;
            for i in 0..self.copies[d].through[e].len() {
                let k = self.copies[d].through[e][i];
                let before = weight(self.painted[d][k], self.other[d][k]);
                if d == c {
                    if self.painted[d][k] + 1 == size {
                        let f = self.odd_edge(d, k, e);
                        self.forbid[f][d] -= 1;
                    }
                    self.painted[d][k] -= 1;
                } else {
                    self.other[d][k] -= 1;
                }
                self.rescore(d, k, before);
            }
        }
        self.used[c] -= 1;
        self.colors[e] = None;
    }

    /// Weight of the live copies through `e` that painting it `c` advances.
    fn risk(&self, e: usize, c: usize) -> u64 {
        self.copies[c].through[e].iter().map(|&k| weight(self.painted[c][k], self.other[c][k])).sum()
    }

    fn solve(&mut self) -> bool {
        let Some((e, open)) = self.pick() else {
            return true;
        };
        let mut order: Vec<(u64, usize)> = (0..self.copies.len())
            .filter(|&c| open >> c & 1 == 1)
            .filter(|&c| !matches!(self.twin[c], Some(t) if self.used[c] == 0 && self.used[t] == 0))
            .map(|c| (self.risk(e, c), c))
            .collect();
        order.sort_unstable();
        for (_, c) in order {
            self.paint(e, c);
            if self.solve() {
                return true;
            }
            self.unpaint(e, c);
        }
        false
    }
}

/// A coloring of `g`'s edges in which color `i` avoids `targets[i]`, or
/// `None` when `g` arrows the targets.
///
/// Panics unless `1 <= targets.len() <= 4`.
pub fn recursive_split(g: &Graph, targets: &[Target]) -> Option<SplitWitness> {
    assert!((1..=4).contains(&targets.len()), "between 1 and 4 targets required");
    let edges: Vec<Edge> = g.edges().collect();
    let index = |e: &Edge| edges.binary_search(e).expect("copy edges are host edges");
    let copies: Vec<Copies> = targets
        .iter()
        .map(|&t| {
            let list: Vec<Vec<usize>> =
                list_copies(g, t).copies.iter().map(|c| c.iter().map(index).collect()).collect();
            let mut through = vec![Vec::new(); edges.len()];
            for (k, c) in list.iter().enumerate() {
                for &e in c {
                    through[e].push(k);
                }
            }
            Copies { size: t.edge_count(), edges: list, through }
        })
        .collect();
    let painted: Vec<Vec<u32>> = copies.iter().map(|c| vec![0; c.edges.len()]).collect();
    let mut score = vec![0u64; edges.len()];
    for c in &copies {
        for k in &c.edges {
            for &f in k {
                score[f] += 1;
            }
        }
    }
    let twin = (0..targets.len()).map(|c| (0..c).rev().find(|&d| targets[d] == targets[c])).collect();
    let mut s = Splitter {
        copies,
        colors: vec![None; edges.len()],
        other: painted.clone(),
        painted,
        score,
        forbid: vec![[0; 4]; edges.len()],
        used: vec![0; targets.len()],
        twin,
    };
    if !s.solve() {
        return None;
    }
    let colors = s.colors.into_iter().map(|c| c.expect("every edge painted")).collect();
    Some(SplitWitness { order: g.order(), color_count: targets.len(), edges, colors })
}
