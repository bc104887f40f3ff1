//! Undirected simple graphs on at most 64 vertices.
//!
//! Every neighborhood is a single `u64`, bit `u` of `adj[v]` set iff `{u, v}`
//! is an edge. Vertex sets throughout the crate use the same encoding.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 64;

/// Mask with the low `n` bits set.
#[inline]
pub const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a vertex set in increasing order.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let all = low_bits(n);
        for v in 0..n {
            g.adj[v] = all & !(1u64 << v);
        }
        Ok(g)
    }

    /// The cycle `0-1-...-(n-1)-0`. For `n < 3` this is a path.
    pub fn cycle(n: usize) -> Result<Self> {
        let mut g = Graph::path(n)?;
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::Precondition(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw neighborhoods, checking symmetry, irreflexivity
    /// and that no bit at or above `adj.len()` is set.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        if n > MAX_ORDER {
            return Err(Error::TooManyVertices(n));
        }
        let all = low_bits(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & !all != 0 {
                return Err(Error::Precondition(format!(
                    "vertex {v} has neighbors outside 0..{n}"
                )));
            }
            if row >> v & 1 == 1 {
                return Err(Error::Precondition(format!("self-loop at vertex {v}")));
            }
            for u in Bits(row) {
                if adj[u] >> v & 1 == 0 {
                    return Err(Error::Precondition(format!(
                        "asymmetric adjacency between {u} and {v}"
                    )));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    /// Unchecked constructor for internal callers that maintain the invariants.
    pub(crate) fn from_adjacency_unchecked(adj: Vec<u64>) -> Self {
        debug_assert!(Graph::from_adjacency(adj.clone()).is_ok());
        Graph { n: adj.len(), adj }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> u64 {
        low_bits(self.n)
    }

    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "invalid edge {{{u}, {v}}}");
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "invalid edge {{{u}, {v}}}");
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.adj[u] & !low_bits(u + 1)).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let all = low_bits(self.n);
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & all & !(1u64 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by `vertices`, relabeled in increasing vertex order.
    pub fn induced_subgraph(&self, vertices: u64) -> Graph {
        let keep: Vec<usize> = Bits(vertices & self.vertices()).collect();
        let mut pos = [usize::MAX; MAX_ORDER];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                Bits(self.adj[v] & vertices)
                    .fold(0u64, |acc, u| acc | 1 << pos[u])
            })
            .collect();
        Graph { n: keep.len(), adj }
    }

    /// `G - v`.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        self.induced_subgraph(self.vertices() & !(1 << v))
    }

    /// A copy of `self` with one extra vertex adjacent to `neighborhood`.
    pub fn with_new_vertex(&self, neighborhood: u64) -> Result<Graph> {
        if self.n >= MAX_ORDER {
            return Err(Error::TooManyVertices(self.n + 1));
        }
        let nb = neighborhood & self.vertices();
        let z = self.n;
        let mut adj = self.adj.clone();
        for u in Bits(nb) {
            adj[u] |= 1 << z;
        }
        adj.push(nb);
        Ok(Graph { n: z + 1, adj })
    }

    /// Relabels so that old vertex `perm[i]` becomes new vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut inv = [0usize; MAX_ORDER];
        for (i, &v) in perm.iter().enumerate() {
            inv[v] = i;
        }
        let adj = perm
            .iter()
            .map(|&v| Bits(self.adj[v]).fold(0u64, |acc, u| acc | 1 << inv[u]))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Disjoint union, vertices of `other` shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(Error::TooManyVertices(n));
        }
        let shift = self.n;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << shift));
        Ok(Graph { n, adj })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_complete_is_empty() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.complement(), Graph::empty(5).unwrap());
        assert_eq!(k5.edge_count(), 10);
    }

    #[test]
    fn induced_subgraph_cases() {
        let k6 = Graph::complete(6).unwrap();
        assert_eq!(
            k6.induced_subgraph(0b101101),
            Graph::complete(4).unwrap()
        );
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(c6.induced_subgraph(c6.vertices()), c6);
        assert_eq!(c6.induced_subgraph(0b111), Graph::path(3).unwrap());
    }

    #[test]
    fn rejects_oversized_and_bad_input() {
        assert!(matches!(Graph::empty(65), Err(Error::TooManyVertices(65))));
        assert!(Graph::from_adjacency(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_adjacency(vec![0b01]).is_err());
        assert!(Graph::from_adjacency(vec![0b100, 0]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn new_vertex_and_removal_are_inverse() {
        let g = Graph::cycle(5).unwrap();
        let h = g.with_new_vertex(0b10101).unwrap();
        assert_eq!(h.order(), 6);
        assert_eq!(h.degree(5), 3);
        assert_eq!(h.remove_vertex(5), g);
    }

    #[test]
    fn full_order_graph_works() {
        let k = Graph::complete(64).unwrap();
        assert_eq!(k.edge_count(), 64 * 63 / 2);
        assert_eq!(k.complement().edge_count(), 0);
    }
}
