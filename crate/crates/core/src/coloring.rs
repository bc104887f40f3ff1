//! Edge colorings of complete graphs.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

pub const MAX_COLORS: usize = 4;

/// A partition of `E(K_n)` into `m` classes. Colors are `0..m` in this API;
/// the text formats shift them to `1..=m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EdgeColoring {
    n: usize,
    m: usize,
    // Row-major strict upper triangle: pair (u, v), u < v, lives at tri_index(n, u, v).
    colors: Vec<u8>,
}

#[inline]
fn tri_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

impl EdgeColoring {
    pub fn uniform(n: usize, m: usize, color: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::TooManyVertices(n));
        }
        check_color_count(m)?;
        if color >= m {
            return Err(Error::Precondition(format!("color {color} outside 0..{m}")));
        }
        Ok(EdgeColoring {
            n,
            m,
            colors: vec![color as u8; n * n.saturating_sub(1) / 2],
        })
    }

    /// Two-coloring in which the edges of `g` get color 0 and the non-edges color 1.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.order();
        let mut c = EdgeColoring::uniform(n, 2, 1).expect("order already validated");
        for (u, v) in g.edges() {
            c.set_color(u, v, 0);
        }
        c
    }

    /// Builds a coloring from pairwise edge-disjoint classes covering `K_n`.
    pub fn from_classes(classes: &[Graph]) -> Result<Self> {
        let n = classes.first().map(Graph::order).unwrap_or(0);
        check_color_count(classes.len())?;
        if classes.iter().any(|g| g.order() != n) {
            return Err(Error::Precondition("color classes differ in order".into()));
        }
        let mut colors = vec![u8::MAX; n * n.saturating_sub(1) / 2];
        for (i, g) in classes.iter().enumerate() {
            for (u, v) in g.edges() {
                let slot = &mut colors[tri_index(n, u, v)];
                if *slot != u8::MAX {
                    return Err(Error::Precondition(format!(
                        "edge {{{u}, {v}}} appears in colors {} and {i}",
                        *slot
                    )));
                }
                *slot = i as u8;
            }
        }
        if let Some(k) = colors.iter().position(|&c| c == u8::MAX) {
            let (u, v) = pair_at(n, k);
            return Err(Error::Precondition(format!("edge {{{u}, {v}}} is uncolored")));
        }
        Ok(EdgeColoring { n, m: classes.len(), colors })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn color_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> usize {
        assert!(u != v && u < self.n && v < self.n, "invalid pair {{{u}, {v}}}");
        self.colors[tri_index(self.n, u, v)] as usize
    }

    pub fn set_color(&mut self, u: usize, v: usize, color: usize) {
        assert!(u != v && u < self.n && v < self.n, "invalid pair {{{u}, {v}}}");
        assert!(color < self.m, "color {color} outside 0..{}", self.m);
        self.colors[tri_index(self.n, u, v)] = color as u8;
    }

    /// Raises the number of available colors without recoloring anything.
    pub fn with_color_count(mut self, m: usize) -> Result<Self> {
        check_color_count(m)?;
        if let Some(&c) = self.colors.iter().find(|&&c| c as usize >= m) {
            return Err(Error::Precondition(format!("color {c} in use, cannot shrink to {m}")));
        }
        self.m = m;
        Ok(self)
    }

    /// The graph on `n` vertices formed by the edges of color `i`.
    pub fn color_class(&self, i: usize) -> Graph {
        let mut adj = vec![0u64; self.n];
        let mut k = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.colors[k] as usize == i {
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
                k += 1;
            }
        }
        Graph::from_adjacency_unchecked(adj)
    }

    pub fn color_classes(&self) -> Vec<Graph> {
        (0..self.m).map(|i| self.color_class(i)).collect()
    }

    /// Coloring induced on `vertices`, relabeled in increasing order.
    pub fn induced(&self, vertices: u64) -> EdgeColoring {
        let keep: Vec<usize> = crate::graph::Bits(vertices & crate::graph::low_bits(self.n)).collect();
        let n = keep.len();
        let mut colors = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for (i, &u) in keep.iter().enumerate() {
            for &v in &keep[i + 1..] {
                colors.push(self.colors[tri_index(self.n, u, v)]);
            }
        }
        EdgeColoring { n, m: self.m, colors }
    }

    pub fn remove_vertex(&self, v: usize) -> EdgeColoring {
        self.induced(crate::graph::low_bits(self.n) & !(1 << v))
    }
}

fn check_color_count(m: usize) -> Result<()> {
    if m == 0 || m > MAX_COLORS {
        return Err(Error::Precondition(format!(
            "color count {m} outside 1..={MAX_COLORS}"
        )));
    }
    Ok(())
}

fn pair_at(n: usize, k: usize) -> (usize, usize) {
    let mut k = k;
    for u in 0..n {
        let row = n - u - 1;
        if k < row {
            return (u, u + 1 + k);
        }
        k -= row;
    }
    unreachable!("index past the triangle")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_partition_the_complete_graph() {
        let mut c = EdgeColoring::uniform(7, 3, 0).unwrap();
        for u in 0..7 {
            for v in u + 1..7 {
                c.set_color(u, v, (u * 3 + v * 5) % 3);
            }
        }
        let classes = c.color_classes();
        let total: usize = classes.iter().map(Graph::edge_count).sum();
        assert_eq!(total, 21);
        for i in 0..3 {
            for j in i + 1..3 {
                for v in 0..7 {
                    assert_eq!(classes[i].neighbors(v) & classes[j].neighbors(v), 0);
                }
            }
        }
        assert_eq!(EdgeColoring::from_classes(&classes).unwrap(), c);
    }

    #[test]
    fn one_coloring_class_is_complete() {
        let c = EdgeColoring::uniform(6, 1, 0).unwrap();
        assert_eq!(c.color_class(0), Graph::complete(6).unwrap());
    }

    #[test]
    fn overlapping_or_missing_classes_rejected() {
        let k3 = Graph::complete(3).unwrap();
        assert!(EdgeColoring::from_classes(&[k3.clone(), k3]).is_err());
        let p = Graph::path(3).unwrap();
        assert!(EdgeColoring::from_classes(&[p]).is_err());
    }

    #[test]
    fn induced_matches_pairwise_colors() {
        let mut c = EdgeColoring::uniform(5, 2, 0).unwrap();
        c.set_color(1, 3, 1);
        c.set_color(3, 4, 1);
        let d = c.remove_vertex(0);
        assert_eq!(d.order(), 4);
        assert_eq!(d.color(0, 2), 1);
        assert_eq!(d.color(2, 3), 1);
        assert_eq!(d.color(0, 1), 0);
    }

    #[test]
    fn pair_at_inverts_tri_index() {
        let n = 9;
        for u in 0..n {
            for v in u + 1..n {
                assert_eq!(pair_at(n, tri_index(n, u, v)), (u, v));
            }
        }
    }
}
