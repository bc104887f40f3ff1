//! Forbidden-subgraph detection, copy listing and coloring validation.
//!
//! Containment is non-induced throughout. Every target has a dedicated bitset
//! detector; the generic embedder in [`crate::embed`] backs copy listing,
//! counting and the through-vertex checks without a shortcut.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::coloring::EdgeColoring;
use crate::embed::Plan;
use crate::graph::{low_bits, Bits, Graph};
use crate::target::Target;

pub type Edge = (usize, usize);

/// All distinct copies of a target in a host, each as its sorted edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyList {
    pub target: Target,
    pub copies: Vec<Vec<Edge>>,
}

impl CopyList {
    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }
}

pub(crate) fn has_clique(adj: &[u64], mut cand: u64, k: usize) -> bool {
    match k {
        0 => return true,
        1 => return cand != 0,
        2 => return Bits(cand).any(|v| adj[v] & cand != 0),
        _ => {}
    }
    while cand.count_ones() as usize >= k {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if has_clique(adj, cand & adj[v], k - 1) {
            return true;
        }
    }
    false
}

pub(crate) fn count_cliques(adj: &[u64], mut cand: u64, k: usize) -> u64 {
    match k {
        0 => return 1,
        1 => return cand.count_ones() as u64,
        _ => {}
    }
    let mut total = 0;
    while cand.count_ones() as usize >= k {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        total += count_cliques(adj, cand & adj[v], k - 1);
    }
    total
}

fn for_each_clique<F: FnMut(u64) -> ControlFlow<()>>(
    adj: &[u64],
    chosen: u64,
    mut cand: u64,
    k: usize,
    f: &mut F,
) -> ControlFlow<()> {
    if k == 0 {
        return f(chosen);
    }
    while cand.count_ones() as usize >= k {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        for_each_clique(adj, chosen | 1 << v, cand & adj[v], k - 1, f)?;
    }
    ControlFlow::Continue(())
}

/// `J_k` inside `mask`, for `k >= 3` (`J_3` is the 3-vertex path): a pair
/// whose common neighborhood holds a `(k-2)`-clique.
fn has_clique_minus_edge(adj: &[u64], mask: u64, k: usize) -> bool {
    let need = k - 2;
    for u in Bits(mask) {
        let rest = mask & !low_bits(u + 1);
        for w in Bits(rest) {
            let common = adj[u] & adj[w] & mask;
            if common.count_ones() as usize >= need && has_clique(adj, common, need) {
                return true;
            }
        }
    }
    false
}

fn has_triangle_plus_pendant(adj: &[u64], mask: u64) -> bool {
    let deg = |v: usize| (adj[v] & mask).count_ones();
    for a in Bits(mask) {
        let na = adj[a] & mask & !low_bits(a + 1);
        for b in Bits(na) {
            for c in Bits(na & adj[b] & !low_bits(b + 1)) {
                if deg(a) >= 3 || deg(b) >= 3 || deg(c) >= 3 {
                    return true;
                }
            }
        }
    }
    false
}

/// A `(k-1)`-clique plus an outside vertex seeing at least `k-3` of it.
fn has_clique_minus_p3(adj: &[u64], mask: u64, k: usize) -> bool {
    for_each_clique(adj, 0, mask, k - 1, &mut |q| {
        let hit = Bits(mask & !q).any(|b| (adj[b] & q).count_ones() as usize >= k - 3);
        if hit { ControlFlow::Break(()) } else { ControlFlow::Continue(()) }
    })
    .is_break()
}

/// Cycle of length `k` whose smallest vertex is `start`, by DFS over simple paths.
fn has_cycle_from(adj: &[u64], allowed: u64, start: usize, k: usize) -> bool {
    fn walk(adj: &[u64], allowed: u64, start: usize, at: usize, used: u64, left: usize) -> bool {
        if left == 0 {
            return adj[at] >> start & 1 == 1;
        }
        Bits(adj[at] & allowed & !used).any(|nx| walk(adj, allowed, start, nx, used | 1 << nx, left - 1))
    }
    walk(adj, allowed, start, start, 1 << start, k - 1)
}

fn has_cycle(adj: &[u64], mask: u64, k: usize) -> bool {
    Bits(mask).any(|s| {
        let above = mask & !low_bits(s + 1);
        (above.count_ones() as usize) >= k - 1 && has_cycle_from(adj, above, s, k)
    })
}

/// Whether `adj[mask]` contains the target.
pub fn contains_in(adj: &[u64], mask: u64, t: Target) -> bool {
    if (mask.count_ones() as usize) < t.order() {
        return false;
    }
    match t {
        Target::Clique(k) => has_clique(adj, mask, k),
        Target::CliqueMinusEdge(k) => has_clique_minus_edge(adj, mask, k),
        Target::TrianglePlusPendant => has_triangle_plus_pendant(adj, mask),
        Target::CliqueMinusP3(k) => has_clique_minus_p3(adj, mask, k),
        Target::Cycle(k) => has_cycle(adj, mask, k),
    }
}

pub fn contains(g: &Graph, t: Target) -> bool {
    contains_in(g.adjacency(), g.vertices(), t)
}

/// Whether some copy of the target inside `adj[mask]` uses vertex `v`.
pub fn contains_through_vertex(adj: &[u64], mask: u64, v: usize, t: Target) -> bool {
    let mask = mask | 1 << v;
    let nv = adj[v] & mask;
    match t {
        Target::Clique(k) => has_clique(adj, nv, k - 1),
        Target::CliqueMinusEdge(k) => {
            // v as an endpoint of the missing edge, or v in the clique part.
            Bits(mask & !(1 << v)).any(|u| has_clique(adj, nv & adj[u], k - 2))
                || has_clique_minus_edge(adj, nv, k - 1)
        }
        Target::Cycle(k) => has_cycle_from(adj, mask, v, k),
        _ => {
            let pattern = t.pattern();
            (0..t.order()).any(|p| Plan::new(&pattern, &[p]).exists(adj, mask, &[v]))
        }
    }
}

/// Detection through the generic embedder only; an independent route used to
/// cross-check the dedicated detectors.
pub fn contains_generic(g: &Graph, t: Target) -> bool {
    Plan::new(&t.pattern(), &[]).exists(g.adjacency(), g.vertices(), &[])
}

pub fn find_copy(g: &Graph, t: Target) -> Option<Vec<Edge>> {
    let plan = Plan::new(&t.pattern(), &[]);
    let mut found = None;
    let _ = plan.for_each(g.adjacency(), g.vertices(), &[], &mut |img| {
        found = Some(plan.copy_edges(img));
        ControlFlow::Break(())
    });
    found
}

pub fn list_copies(g: &Graph, t: Target) -> CopyList {
    let plan = Plan::new(&t.pattern(), &[]);
    let mut seen = BTreeSet::new();
    let _ = plan.for_each(g.adjacency(), g.vertices(), &[], &mut |img| {
        seen.insert(plan.copy_edges(img));
        ControlFlow::Continue(())
    });
    CopyList { target: t, copies: seen.into_iter().collect() }
}

pub fn count_copies(g: &Graph, t: Target) -> u64 {
    count_copies_in(g.adjacency(), g.vertices(), t)
}

pub(crate) fn count_copies_in(adj: &[u64], mask: u64, t: Target) -> u64 {
    match t {
        Target::Clique(k) => count_cliques(adj, mask, k),
        _ => Plan::new(&t.pattern(), &[]).count(adj, mask, &[]) / t.automorphism_count(),
    }
}

/// Number of copies of `t` that use edge `{u, v}` in the graph `adj + {u, v}`.
pub fn count_copies_through_edge(adj: &[u64], u: usize, v: usize, t: Target) -> u64 {
    let nu = adj[u] | 1 << v;
    let nv = adj[v] | 1 << u;
    let common = nu & nv;
    match t {
        Target::Clique(k) => count_cliques(adj, common, k - 2),
        Target::CliqueMinusEdge(4) => {
            let c = common.count_ones() as u64;
            let spine = c * c.saturating_sub(1) / 2;
            let sides: u64 = Bits(common)
                .map(|y| ((nu & adj[y] & !(1 << v)).count_ones() + (nv & adj[y] & !(1 << u)).count_ones()) as u64)
                .sum();
            spine + sides
        }
        _ => {
            let mut host = adj.to_vec();
            host[u] = nu;
            host[v] = nv;
            let pattern = t.pattern();
            let mask = low_bits(adj.len());
            let embeddings: u64 = pattern
                .edges()
                .flat_map(|(p, q)| [(p, q), (q, p)])
                .map(|(p, q)| Plan::new(&pattern, &[p, q]).count(&host, mask, &[u, v]))
                .sum();
            embeddings / t.automorphism_count()
        }
    }
}

/// `g` avoids `t1` and its complement avoids `t2`.
pub fn is_good(g: &Graph, t1: Target, t2: Target) -> bool {
    !contains(g, t1) && !contains(&g.complement(), t2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `assignment[i]` is the target avoided by color `i`; equal to the
    /// requested list unless a permutation was needed.
    Valid { assignment: Vec<Target>, permuted: bool },
    /// Under the requested assignment, color `color` contains `target` on `copy`.
    Invalid { color: usize, target: Target, copy: Vec<Edge> },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for i in 0..k {
            if !prefix.contains(&i) {
                prefix.push(i);
                rec(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), k, &mut out);
    out
}

/// Checks that color `i` avoids `targets[i]`, falling back to other
/// assignments of the same targets to colors when the requested one fails.
///
/// Panics if `targets.len()` differs from the number of colors.
pub fn coloring_is_valid(c: &EdgeColoring, targets: &[Target]) -> Verdict {
    assert_eq!(targets.len(), c.color_count(), "one target per color required");
    let classes = c.color_classes();
    let first_failure = |assign: &[Target]| {
        classes.iter().zip(assign).position(|(g, &t)| contains(g, t))
    };
    let Some(bad) = first_failure(targets) else {
        return Verdict::Valid { assignment: targets.to_vec(), permuted: false };
    };
    let mut tried = BTreeSet::new();
    for perm in permutations(targets.len()) {
        let assign: Vec<Target> = perm.iter().map(|&i| targets[i]).collect();
        if !tried.insert(assign.clone()) {
            continue;
        }
        if first_failure(&assign).is_none() {
            return Verdict::Valid { assignment: assign, permuted: true };
        }
    }
    let copy = find_copy(&classes[bad], targets[bad]).expect("detectors agree with the embedder");
    Verdict::Invalid { color: bad, target: targets[bad], copy }
}
