//! Level-by-level generation of all `(T1, T2; n)`-good graphs.
//!
//! Goodness is hereditary: deleting a vertex from a good graph leaves a good
//! graph. Every good graph on `n + 1` vertices therefore arises by adding one
//! vertex to some good graph on `n` vertices, and extending the complete list
//! of level-`n` classes in every possible way, then discarding isomorphs,
//! yields the complete list at level `n + 1`.
//!
//! Neighborhoods of the new vertex are built by a binary decision over the
//! old vertices. A partial choice is abandoned as soon as the vertices
//! already taken create `T1` through the new vertex (more neighbors only add
//! edges) or the vertices already excluded create `T2` through it in the
//! complement (fewer neighbors only add complement edges).

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::canon::{canonical_pair, CanonicalForm};
use crate::detect::contains_through_vertex;
use crate::error::{Error, Result};
use crate::graph::{low_bits, Bits, Graph, MAX_ORDER};
use crate::target::Target;

/// Class count and edge-count range for one order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelStats {
    pub order: usize,
    pub count: usize,
    /// `None` for an empty level.
    pub edges: Option<(usize, usize)>,
}

impl LevelStats {
    pub fn of(order: usize, level: &[Graph]) -> LevelStats {
        let edges = level.iter().map(Graph::edge_count).fold(None, |acc, e| match acc {
            None => Some((e, e)),
            Some((lo, hi)) => Some((lo.min(e), hi.max(e))),
        });
        LevelStats { order, count: level.len(), edges }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub levels: Vec<LevelStats>,
}

impl EnumerationStats {
    pub fn level(&self, order: usize) -> Option<&LevelStats> {
        self.levels.iter().find(|l| l.order == order)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.count).collect()
    }

    /// Tab-separated `n`, class count, edge range (`lo-hi`, a single number
    /// when equal, `-` for an empty level), header line first.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tcount\tedges\n");
        for l in &self.levels {
            out.push_str(&l.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for LevelStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t", self.order, self.count)?;
        match self.edges {
            None => write!(f, "-"),
            Some((lo, hi)) if lo == hi => write!(f, "{lo}"),
            Some((lo, hi)) => write!(f, "{lo}-{hi}"),
        }
    }
}

/// All neighborhoods `S` of a new vertex such that `g + v_S` stays good.
pub fn good_extensions(g: &Graph, t1: Target, t2: Target) -> Vec<u64> {
    let n = g.order();
    let mut host = g.adjacency().to_vec();
    host.push(0);
    let mut co_host = g.complement().adjacency().to_vec();
    co_host.push(0);
    let mut ext = Extender { n, t1, t2, host, co_host, out: Vec::new() };
    ext.decide(0, 0);
    ext.out
}

struct Extender {
    n: usize,
    t1: Target,
    t2: Target,
    host: Vec<u64>,
    co_host: Vec<u64>,
    out: Vec<u64>,
}

impl Extender {
    /// `taken` holds the chosen neighbors; vertices `>= next` are undecided.
    fn decide(&mut self, taken: u64, next: usize) {
        let (n, all) = (self.n, low_bits(self.n + 1));
        if creates(&mut self.host, n, taken, all, self.t1) {
            return;
        }
        let excluded = low_bits(next) & !taken;
        if creates(&mut self.co_host, n, excluded, all, self.t2) {
            return;
        }
        if next == n {
            self.out.push(taken);
            return;
        }
        self.decide(taken, next + 1);
        self.decide(taken | 1 << next, next + 1);
    }
}

/// Whether joining vertex `z` to `nb` creates a copy of `t` through `z`.
fn creates(adj: &mut [u64], z: usize, nb: u64, all: u64, t: Target) -> bool {
    for u in Bits(nb) {
        adj[u] |= 1 << z;
    }
    adj[z] = nb;
    let hit = contains_through_vertex(adj, all, z, t);
    for u in Bits(nb) {
        adj[u] &= !(1 << z);
    }
    adj[z] = 0;
    hit
}

/// One-vertex extensions of `level`, deduplicated and sorted by canonical form.
/// Output graphs are in canonical labeling.
pub fn extend_level(level: &[Graph], t1: Target, t2: Target) -> Result<Vec<Graph>> {
    extend_level_keyed(level, t1, t2).map(|v| v.into_iter().map(|(_, g)| g).collect())
}

fn extend_level_keyed(level: &[Graph], t1: Target, t2: Target) -> Result<Vec<(CanonicalForm, Graph)>> {
    if let Some(g) = level.iter().find(|g| g.order() >= MAX_ORDER) {
        return Err(Error::TooManyVertices(g.order() + 1));
    }
    let merged = level
        .par_iter()
        .fold(HashMap::new, |mut acc: HashMap<CanonicalForm, Graph>, g| {
            for nb in good_extensions(g, t1, t2) {
                let child = g.with_new_vertex(nb).expect("order checked above");
                let (key, canon) = canonical_pair(&child);
                acc.entry(key).or_insert(canon);
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            if a.len() < b.len() {
                return merge(b, a);
            }
            merge_into(&mut a, b);
            a
        });
    let mut out: Vec<(CanonicalForm, Graph)> = merged.into_iter().collect();
    out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn merge(mut a: HashMap<CanonicalForm, Graph>, b: HashMap<CanonicalForm, Graph>) -> HashMap<CanonicalForm, Graph> {
    merge_into(&mut a, b);
    a
}

fn merge_into(a: &mut HashMap<CanonicalForm, Graph>, b: HashMap<CanonicalForm, Graph>) {
    for (k, g) in b {
        a.entry(k).or_insert(g);
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerateOptions {
    /// Stop with a resource error once a level exceeds this many classes.
    pub max_level_size: Option<usize>,
}

/// Result of an enumeration that stopped early at a resource limit.
#[derive(Debug)]
pub struct Partial {
    pub stats: EnumerationStats,
    pub error: Error,
}

impl fmt::Display for Partial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (after {} complete levels)", self.error, self.stats.levels.len())
    }
}

impl std::error::Error for Partial {}

/// Enumerates levels `1..=max_n`, handing each finished level to `on_level`
/// before building the next.
pub fn enumerate_good<F>(
    t1: Target,
    t2: Target,
    max_n: usize,
    opts: EnumerateOptions,
    mut on_level: F,
) -> std::result::Result<EnumerationStats, Partial>
where
    F: FnMut(usize, &[Graph]) -> Result<()>,
{
    let mut stats = EnumerationStats::default();
    if max_n > MAX_ORDER {
        return Err(Partial { stats, error: Error::TooManyVertices(max_n) });
    }
    let mut level: Vec<Graph> = Vec::new();
    for n in 1..=max_n {
        level = if n == 1 {
            let k1 = Graph::empty(1).expect("order 1");
            let k1_good = !contains_through_vertex(k1.adjacency(), 1, 0, t1)
                && !contains_through_vertex(k1.complement().adjacency(), 1, 0, t2);
            if k1_good { vec![k1] } else { Vec::new() }
        } else {
            match extend_level(&level, t1, t2) {
                Ok(next) => next,
                Err(error) => return Err(Partial { stats, error }),
            }
        };
        if let Some(limit) = opts.max_level_size {
            if level.len() > limit {
                let error = Error::Resource(format!(
                    "level {n} has {} classes, above the limit of {limit}",
                    level.len()
                ));
                return Err(Partial { stats, error });
            }
        }
        if let Err(error) = on_level(n, &level) {
            return Err(Partial { stats, error });
        }
        stats.levels.push(LevelStats::of(n, &level));
    }
    Ok(stats)
}

/// Convenience wrapper returning every level in memory.
pub fn enumerate_levels(t1: Target, t2: Target, max_n: usize) -> Result<Vec<Vec<Graph>>> {
    let mut levels = Vec::new();
    enumerate_good(t1, t2, max_n, EnumerateOptions::default(), |_, l| {
        levels.push(l.to_vec());
        Ok(())
    })
    .map_err(|p| p.error)?;
    Ok(levels)
}

/// Archive file name for one level.
pub fn archive_name(t1: Target, t2: Target, n: usize) -> String {
    format!("good_{t1}_{t2}_n{n}.g6")
}
