//! Canonical labeling by partition refinement and individualization.
//!
//! The search tree is the usual one: refine an ordered partition to an
//! equitable one, individualize each vertex of the first smallest
//! non-singleton cell, recurse. Leaves are compared by their relabeled
//! adjacency rows and the minimum is kept. Two prunings keep symmetric
//! graphs cheap:
//!
//! * automorphisms found at equal leaves are stored, and at every node only
//!   one child per orbit of the stored automorphisms fixing that node's
//!   individualized vertices is explored;
//! * a leaf equivalent to the first leaf lets the search abandon the whole
//!   subtree hanging off the first path at the point of divergence.

use std::cmp::Ordering;

use crate::graph::{Bits, Graph};

/// Equal exactly for isomorphic graphs. Bytes: the order, then the upper
/// triangle of the canonical adjacency matrix row by row, packed MSB first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn from_rows(n: usize, rows: &[u64]) -> CanonicalForm {
        let bits = n * n.saturating_sub(1) / 2;
        let mut out = Vec::with_capacity(1 + bits.div_ceil(8));
        out.push(n as u8);
        let mut acc = 0u8;
        let mut filled = 0;
        for i in 0..n {
            for j in i + 1..n {
                acc = acc << 1 | (rows[i] >> j & 1) as u8;
                filled += 1;
                if filled == 8 {
                    out.push(acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(acc << (8 - filled));
        }
        CanonicalForm(out)
    }
}

/// Splits cells by neighbor counts into each splitter cell until stable.
/// Fragments keep their cell's position, ordered by count; this makes the
/// result depend only on the structure, never on labels.
fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    let mut buckets = [0u64; 65];
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut next = Vec::with_capacity(cells.len() + 4);
            for &cell in cells.iter() {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                let (mut lo, mut hi) = (64usize, 0usize);
                for v in Bits(cell) {
                    let c = (adj[v] & splitter).count_ones() as usize;
                    buckets[c] |= 1 << v;
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
                for b in &mut buckets[lo..=hi] {
                    if *b != 0 {
                        next.push(*b);
                        *b = 0;
                    }
                }
            }
            if next.len() != cells.len() {
                changed = true;
                *cells = next;
            }
            s += 1;
        }
        if !changed {
            break;
        }
    }
}

fn relabeled_rows(adj: &[u64], perm: &[usize]) -> Vec<u64> {
    let n = perm.len();
    let mut inv = [0usize; 64];
    for (i, &v) in perm.iter().enumerate() {
        inv[v] = i;
    }
    (0..n)
        .map(|i| Bits(adj[perm[i]]).fold(0u64, |m, u| m | 1 << inv[u]))
        .collect()
}

struct Leaf {
    perm: Vec<usize>,
    rows: Vec<u64>,
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    first_path: Vec<usize>,
    best: Option<Leaf>,
    // Each generator maps vertex v to gens[k][v].
    gens: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn orbit_reps(&self, fixed: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for g in &self.gens {
            if fixed.iter().any(|&v| g[v] != v) {
                continue;
            }
            for v in 0..self.n {
                let (a, b) = (find(&mut parent, v), find(&mut parent, g[v]));
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
        (0..self.n).map(|v| find(&mut parent, v)).collect()
    }

    fn record_automorphism(&mut self, from: &[usize], to: &[usize]) {
        let mut g = vec![0; self.n];
        for (i, &v) in from.iter().enumerate() {
            g[v] = to[i];
        }
        if g.iter().enumerate().any(|(v, &w)| v != w) {
            self.gens.push(g);
        }
    }

    /// Returns `Some(d)` to unwind to the node at depth `d`.
    fn visit(&mut self, mut cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        refine(self.adj, &mut cells);
        if cells.len() == self.n {
            return self.leaf(&cells, path);
        }
        let (idx, target) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, &c)| (i, c))
            .expect("non-discrete partition has a non-singleton cell");
        let depth = path.len();
        for v in Bits(target) {
            if self.first.is_some() {
                let reps = self.orbit_reps(path);
                if reps[v] != v && target >> reps[v] & 1 == 1 {
                    continue;
                }
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..idx]);
            child.push(1 << v);
            child.push(target & !(1 << v));
            child.extend_from_slice(&cells[idx + 1..]);
            path.push(v);
            let jump = self.visit(child, path);
            path.pop();
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let perm: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let rows = relabeled_rows(self.adj, &perm);
        let Some(first) = &self.first else {
            self.first_path = path.to_vec();
            self.first = Some(Leaf { perm: perm.clone(), rows: rows.clone() });
            self.best = Some(Leaf { perm, rows });
            return None;
        };
        if rows == first.rows {
            let into = first.perm.clone();
            self.record_automorphism(&perm, &into);
            let common = path.iter().zip(&self.first_path).take_while(|(a, b)| a == b).count();
            return Some(common);
        }
        let best = self.best.as_ref().expect("best set with first");
        match rows.cmp(&best.rows) {
            Ordering::Less => self.best = Some(Leaf { perm, rows }),
            Ordering::Equal => {
                let into = best.perm.clone();
                self.record_automorphism(&perm, &into);
            }
            Ordering::Greater => {}
        }
        None
    }
}

/// `perm[i]` is the original vertex placed at canonical position `i`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    let mut search = Search {
        adj: g.adjacency(),
        n,
        first: None,
        first_path: Vec::new(),
        best: None,
        gens: Vec::new(),
    };
    search.visit(vec![g.vertices()], &mut Vec::new());
    search.best.expect("search visits at least one leaf").perm
}

pub fn canonical_graph(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let perm = canonical_labeling(g);
    CanonicalForm::from_rows(g.order(), &relabeled_rows(g.adjacency(), &perm))
}

/// Canonical form together with the canonically relabeled graph.
pub fn canonical_pair(g: &Graph) -> (CanonicalForm, Graph) {
    let h = canonical_graph(g);
    let key = CanonicalForm::from_rows(h.order(), h.adjacency());
    (key, h)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.edge_count() == h.edge_count()
        && canonical_form(g) == canonical_form(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeling_invariance_on_c5() {
        let c5 = Graph::cycle(5).unwrap();
        let key = canonical_form(&c5);
        let perm = [3, 0, 4, 1, 2];
        assert_eq!(canonical_form(&c5.permuted(&perm)), key);
        assert!(are_isomorphic(&c5, &c5.complement()));
    }

    #[test]
    fn distinguishes_small_graphs() {
        let p4 = Graph::path(4).unwrap();
        let k3_plus_point = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_ne!(canonical_form(&p4), canonical_form(&k3_plus_point));
        let c6 = Graph::cycle(6).unwrap();
        let k3 = Graph::complete(3).unwrap();
        assert!(!are_isomorphic(&c6, &k3.disjoint_union(&k3).unwrap()));
    }

    #[test]
    fn symmetric_graphs_terminate() {
        for n in [0, 1, 2, 12, 40, 64] {
            let e = Graph::empty(n).unwrap();
            assert_eq!(canonical_graph(&e), e);
            let k = Graph::complete(n).unwrap();
            assert_eq!(canonical_graph(&k), k);
        }
        let c = Graph::cycle(30).unwrap();
        let shifted: Vec<usize> = (0..30).map(|i| (i * 7) % 30).collect();
        assert!(are_isomorphic(&c, &c.permuted(&shifted)));
    }

    #[test]
    fn key_layout() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(canonical_form(&k3).as_bytes(), &[3, 0b1110_0000]);
        assert_eq!(canonical_form(&Graph::empty(1).unwrap()).as_bytes(), &[1]);
    }

    #[test]
    fn stable_across_calls() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (0, 4)]).unwrap();
        assert_eq!(canonical_form(&g), canonical_form(&g));
    }
}
