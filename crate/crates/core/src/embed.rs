//! Backtracking subgraph embedding over bitset hosts.
//!
//! Used for copy listing and counting, and as the general fallback whenever a
//! target has no dedicated detector.

use std::ops::ControlFlow;

use crate::graph::{Bits, Graph};

/// A pattern prepared for matching: vertices in search order, each with the
/// set of earlier positions it must be adjacent to.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    order: Vec<usize>,
    back: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

impl Plan {
    /// `anchors` come first in the order; the rest is greedy by connections to
    /// already-placed vertices, then degree, then index.
    pub(crate) fn new(pattern: &Graph, anchors: &[usize]) -> Plan {
        let k = pattern.order();
        let mut order: Vec<usize> = anchors.to_vec();
        let mut placed = anchors.iter().fold(0u64, |m, &p| m | 1 << p);
        while order.len() < k {
            let next = (0..k)
                .filter(|&p| placed >> p & 1 == 0)
                .max_by_key(|&p| {
                    let links = (pattern.neighbors(p) & placed).count_ones();
                    (links, pattern.degree(p), std::cmp::Reverse(p))
                })
                .expect("unplaced vertex remains");
            order.push(next);
            placed |= 1 << next;
        }
        let mut pos = vec![0; k];
        for (i, &p) in order.iter().enumerate() {
            pos[p] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &p)| Bits(pattern.neighbors(p)).filter(|&q| pos[q] < i).fold(0u64, |m, q| m | 1 << pos[q]))
            .collect();
        Plan { order, back, edges: pattern.edges().collect() }
    }

    pub(crate) fn len(&self) -> usize {
        self.order.len()
    }

    /// Translates position-indexed images into the host edge set of the copy.
    pub(crate) fn copy_edges(&self, images: &[usize]) -> Vec<(usize, usize)> {
        let mut phi = [0usize; 64];
        for (i, &p) in self.order.iter().enumerate() {
            phi[p] = images[i];
        }
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (phi[a], phi[b]);
                if x < y { (x, y) } else { (y, x) }
            })
            .collect();
        edges.sort_unstable();
        edges
    }

    /// Visits every injective, edge-preserving map of the pattern into
    /// `host[mask]` that sends the first `fixed.len()` positions to `fixed`.
    /// The callback receives images indexed by search position.
    pub(crate) fn for_each<F>(&self, host: &[u64], mask: u64, fixed: &[usize], f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut images = vec![0usize; self.len()];
        let mut used = 0u64;
        for (i, &h) in fixed.iter().enumerate() {
            if mask >> h & 1 == 0 || used >> h & 1 == 1 {
                return ControlFlow::Continue(());
            }
            for j in Bits(self.back[i]) {
                if host[h] >> images[j] & 1 == 0 {
                    return ControlFlow::Continue(());
                }
            }
            images[i] = h;
            used |= 1 << h;
        }
        self.extend(host, mask, fixed.len(), &mut images, used, f)
    }

    fn extend<F>(&self, host: &[u64], mask: u64, i: usize, images: &mut [usize], used: u64, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if i == self.len() {
            return f(images);
        }
        let cand = Bits(self.back[i]).fold(mask & !used, |c, j| c & host[images[j]]);
        for h in Bits(cand) {
            images[i] = h;
            self.extend(host, mask, i + 1, images, used | 1 << h, f)?;
        }
        ControlFlow::Continue(())
    }

    pub(crate) fn exists(&self, host: &[u64], mask: u64, fixed: &[usize]) -> bool {
        self.for_each(host, mask, fixed, &mut |_| ControlFlow::Break(())).is_break()
    }

    pub(crate) fn count(&self, host: &[u64], mask: u64, fixed: &[usize]) -> u64 {
        let mut n = 0u64;
        let _ = self.for_each(host, mask, fixed, &mut |_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_embeddings_in_k4() {
        let k3 = Graph::complete(3).unwrap();
        let k4 = Graph::complete(4).unwrap();
        let plan = Plan::new(&k3, &[]);
        assert_eq!(plan.count(k4.adjacency(), k4.vertices(), &[]), 24);
        let anchored = Plan::new(&k3, &[0]);
        assert_eq!(anchored.count(k4.adjacency(), k4.vertices(), &[2]), 6);
    }

    #[test]
    fn anchors_respect_adjacency() {
        let p3 = Graph::path(3).unwrap();
        let c4 = Graph::cycle(4).unwrap();
        let plan = Plan::new(&p3, &[0, 1]);
        // 0 and 2 are not adjacent in C4.
        assert_eq!(plan.count(c4.adjacency(), c4.vertices(), &[0, 2]), 0);
        assert_eq!(plan.count(c4.adjacency(), c4.vertices(), &[0, 1]), 1);
    }
}
