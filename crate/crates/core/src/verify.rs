//! Exhaustive checks of the lemma-level claims, as plain-text reports.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use rayon::prelude::*;

use crate::canon::{are_isomorphic, canonical_form, CanonicalForm};
use crate::constructions::{figure_coloring, j_graph, schlafli, two_k3, Figure};
use crate::detect::{coloring_is_valid, contains, is_good, Verdict};
use crate::enumerate::{archive_name, enumerate_levels};
use crate::error::{Error, Result};
use crate::format::parse_graph6_stream;
use crate::graph::Graph;
use crate::split::{
    brute_force_split, compose_coloring, encode_split_cnf, recursive_split, solve_with_budget, split_with, Engine,
    SatBudget, SatResult, SplitOptions,
};
use crate::target::Target;

const K3: Target = Target::Clique(3);
const K3E: Target = Target::TrianglePlusPendant;
const J4: Target = Target::CliqueMinusEdge(4);
const J7: Target = Target::CliqueMinusEdge(7);

/// A titled list of findings with an overall verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub lines: Vec<String>,
    pub passed: bool,
}

impl Report {
    fn new(title: &str) -> Report {
        Report { title: title.to_string(), lines: Vec::new(), passed: true }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    /// Records a check; any failed check fails the report.
    fn check(&mut self, ok: bool, line: impl Into<String>) {
        self.passed &= ok;
        self.lines.push(format!("[{}] {}", if ok { "ok" } else { "FAILED" }, line.into()));
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {} (ramsey-core {})", self.title, env!("CARGO_PKG_VERSION"))?;
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        write!(f, "{}", if self.passed { "PASS" } else { "FAIL" })
    }
}

/// Every labeled graph on `n <= 7` vertices.
fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..1u64 << pairs.len())
        .map(|bits| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &edges).expect("small order")
        })
        .collect()
}

/// Every (K3+e, J4; 6)-good graph contains a 6-cycle or is two disjoint triangles.
pub fn verify_lemma_hex() -> Report {
    let mut r = Report::new("(K3+e, J4; 6)-good graphs contain C6 or equal 2K3");
    let levels = enumerate_levels(K3E, J4, 6).expect("small enumeration");
    let good = &levels[5];
    r.note(format!("good classes on 6 vertices: {}", good.len()));

    let labeled = all_graphs(6);
    let classes: BTreeSet<CanonicalForm> = labeled.par_iter().map(canonical_form).collect::<Vec<_>>().into_iter().collect();
    let filtered: BTreeSet<CanonicalForm> = labeled.iter().filter(|g| is_good(g, K3E, J4)).map(canonical_form).collect();
    r.check(classes.len() == 156, format!("classes of 6-vertex graphs: {}", classes.len()));
    let enumerated: BTreeSet<CanonicalForm> = good.iter().map(canonical_form).collect();
    r.check(
        enumerated == filtered,
        format!("filtering all classes finds the same {} good classes", filtered.len()),
    );

    let pair = two_k3();
    let mut with_c6 = 0;
    let mut is_pair = 0;
    let mut bad = 0;
    for g in good {
        if contains(g, Target::Cycle(6)) {
            with_c6 += 1;
        } else if are_isomorphic(g, &pair) {
            is_pair += 1;
        } else {
            bad += 1;
        }
    }
    r.note(format!("containing C6: {with_c6}"));
    r.note(format!("isomorphic to 2K3 without C6: {is_pair}"));
    r.check(bad == 0, format!("neither: {bad}"));
    r.check(good.iter().any(|g| are_isomorphic(g, &pair)), "2K3 is among the good graphs");
    let c6 = Graph::cycle(6).expect("6 vertices");
    r.check(is_good(&c6, K3E, J4), "C6 is (K3+e, J4)-good");
    r
}

/// J7 arrows (K3+e, J4), checked over all 2^20 colorings.
pub fn verify_j7_arrow() -> Report {
    let mut r = Report::new("J7 -> (K3+e, J4)");
    let j7 = j_graph(7).expect("7 vertices");
    r.note(format!("J7 edges: {}", j7.edge_count()));
    for targets in [[K3E, J4], [K3, J4]] {
        let ex = brute_force_split(&j7, &targets).expect("2^20 colorings");
        let label = format!("({}, {})", targets[0], targets[1]);
        r.check(ex.examined == 1 << 20, format!("{label}: colorings examined: {}", ex.examined));
        r.check(ex.avoiding == 0, format!("{label}: colorings avoiding both targets: {}", ex.avoiding));
        let opts = SplitOptions { engine: Engine::Both, ..Default::default() };
        let engines = split_with(&j7, &targets, &opts).map(|w| w.is_none());
        r.check(matches!(engines, Ok(true)), format!("{label}: SAT and recursion agree: arrows"));
    }
    let levels = enumerate_levels(K3E, J4, 7).expect("small enumeration");
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    r.note(format!("(K3+e, J4)-good classes by order: {counts:?}"));
    r.check(
        counts[5] > 0 && counts[6] == 0,
        "no (K3+e, J4; 7)-good graph while order 6 has some: R(K3+e, J4) = 7",
    );
    r
}

/// Reads the (J7, K3; n) graphs from `dir`: `good_J7_K3_n<n>.g6` if present,
/// otherwise the complements of `good_K3_J7_n<n>.g6`.
pub fn load_pipeline_level(dir: &Path, n: usize) -> Result<Vec<Graph>> {
    let direct = dir.join(archive_name(J7, K3, n));
    if direct.exists() {
        return parse_graph6_stream(&std::fs::read_to_string(direct)?);
    }
    let dual = dir.join(archive_name(K3, J7, n));
    if dual.exists() {
        let graphs = parse_graph6_stream(&std::fs::read_to_string(dual)?)?;
        return Ok(graphs.iter().map(Graph::complement).collect());
    }
    Err(Error::Io(std::io::Error::new(
        std::io::ErrorKind::NotFound,
        format!("neither {} nor {} exists", direct.display(), dual.display()),
    )))
}

/// Splits each (J7, K3; n)-good graph into a K3-free and a J4-free part and
/// turns every split into a (K3, K3, J4; n)-coloring.
pub fn verify_split_pipeline(graphs: &[Graph], n: usize, budget: SatBudget) -> Result<Report> {
    let mut r = Report::new(&format!("splittable (J7, K3; {n})-good graphs"));
    r.note(format!("graphs examined: {}", graphs.len()));
    let wrong = graphs.iter().filter(|g| g.order() != n || !is_good(g, J7, K3)).count();
    r.check(wrong == 0, format!("graphs that are not (J7, K3; {n})-good: {wrong}"));
    let opts = SplitOptions { engine: Engine::Sat, budget };
    let outcomes: Vec<Result<Option<bool>>> = graphs
        .par_iter()
        .map(|g| {
            let Some(w) = split_with(g, &[K3, J4], &opts)? else {
                return Ok(None);
            };
            let c = compose_coloring(&g.complement(), &w)?;
            Ok(Some(matches!(coloring_is_valid(&c, &[K3, K3, J4]), Verdict::Valid { permuted: false, .. })))
        })
        .collect();
    let mut splittable = 0;
    let mut valid = 0;
    for o in outcomes {
        match o? {
            None => {}
            Some(ok) => {
                splittable += 1;
                valid += usize::from(ok);
            }
        }
    }
    r.note(format!("splittable: {splittable}"));
    r.check(valid == splittable, format!("composed (K3, K3, J4; {n})-colorings valid: {valid}"));
    Ok(r)
}

pub fn verify_figure(which: Figure) -> Report {
    let c = figure_coloring(which);
    let t = which.targets();
    let mut r = Report::new(&format!("({}, {}, {}; {})-coloring", t[0], t[1], t[2], c.order()));
    let want = match which {
        Figure::Fig3 => 20,
        Figure::Fig4 => 32,
    };
    r.check(c.order() == want && c.color_count() == 3, format!("{} vertices, {} colors", c.order(), c.color_count()));
    let classes = c.color_classes();
    for (i, (g, &ti)) in classes.iter().zip(&t).enumerate() {
        r.check(!contains(g, ti), format!("color {} ({} edges) avoids {ti}", i + 1, g.edge_count()));
    }
    if which == Figure::Fig3 {
        let red = &classes[0];
        r.check(red.edge_count() == 60, format!("color 1 has {} edges", red.edge_count()));
        r.check(is_good(red, K3, J7), "color 1 is (K3, J7; 20)-good");
        let rest = red.complement();
        r.check(recursive_split(&rest, &[J4, J4]).is_some(), "colors 2 and 3 together split again into two J4-free parts");
    }
    r
}

pub fn verify_schlafli(budget: SatBudget) -> Result<Report> {
    let mut r = Report::new("Schlafli graph");
    let g = schlafli();
    let n = g.order();
    let regular = (0..n).all(|v| g.degree(v) == 10);
    let mut lambda = BTreeSet::new();
    let mut mu = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            let c = (g.neighbors(u) & g.neighbors(v)).count_ones();
            if g.has_edge(u, v) { lambda.insert(c) } else { mu.insert(c) };
        }
    }
    r.check(n == 27 && regular, format!("{n} vertices, {} edges, 10-regular: {regular}", g.edge_count()));
    r.check(lambda == BTreeSet::from([1]), format!("common neighbors of adjacent pairs: {lambda:?}"));
    r.check(mu == BTreeSet::from([5]), format!("common neighbors of nonadjacent pairs: {mu:?}"));
    r.check(is_good(&g, J4, J7), "(J4, J7; 27)-good");

    let opts = SplitOptions { engine: Engine::Sat, budget };
    let w = split_with(&g, &[J4, J4], &opts)?;
    r.check(w.is_some(), "splits into two J4-free graphs");

    let co = g.complement();
    let f = encode_split_cnf(&co, K3, J4);
    r.note(format!("complement: {} variables, {} clauses", f.var_count, f.clauses.len()));
    let (res, stats) = solve_with_budget(&f, budget)?;
    r.note(format!("SAT search: {} decisions, {} conflicts", stats.decisions, stats.conflicts));
    r.check(res == SatResult::Unsat, "complement arrows (K3, J4)");
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_hex_passes() {
        let r = verify_lemma_hex();
        assert!(r.passed, "{r}");
        assert!(r.to_string().ends_with("PASS"));
    }

    #[test]
    fn figures_pass() {
        for f in [Figure::Fig3, Figure::Fig4] {
            let r = verify_figure(f);
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn pipeline_at_five() {
        let levels = enumerate_levels(K3, J7, 5).unwrap();
        let graphs: Vec<Graph> = levels[4].iter().map(Graph::complement).collect();
        let r = verify_split_pipeline(&graphs, 5, SatBudget::default()).unwrap();
        assert!(r.passed, "{r}");
        let oracle = graphs.iter().filter(|g| brute_force_split(g, &[K3, J4]).unwrap().avoiding > 0).count();
        assert!(r.lines.contains(&format!("splittable: {oracle}")), "{r}");
    }
}
