use std::collections::BTreeSet;

use proptest::prelude::*;
use ramsey_core::canon::{are_isomorphic, canonical_form, canonical_graph};
use ramsey_core::detect::{contains, count_copies, count_copies_through_edge, list_copies};
use ramsey_core::format::{emit_coloring_matrix, emit_graph6, parse_coloring_matrix, parse_graph6};
use ramsey_core::{EdgeColoring, Graph, Target};

const FAMILY: [Target; 9] = [
    Target::Clique(3),
    Target::Clique(4),
    Target::CliqueMinusEdge(4),
    Target::CliqueMinusEdge(5),
    Target::TrianglePlusPendant,
    Target::CliqueMinusP3(5),
    Target::Cycle(4),
    Target::Cycle(5),
    Target::Cycle(6),
];

fn graph(n: usize, bits: u64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits >> (i % 64) & 1 == 1 {
                g.add_edge(u, v);
            }
            i += 1;
        }
    }
    g
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, bits)| graph(n, bits))
}

/// Every injective map of the pattern into the host that keeps edges,
/// collected as distinct host edge sets.
fn naive_copies(g: &Graph, t: Target) -> BTreeSet<Vec<(usize, usize)>> {
    let p = t.pattern();
    let k = p.order();
    let n = g.order();
    let mut out = BTreeSet::new();
    let mut img = Vec::with_capacity(k);
    fn rec(
        g: &Graph,
        p: &Graph,
        n: usize,
        img: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<(usize, usize)>>,
    ) {
        if img.len() == p.order() {
            let mut edges: Vec<(usize, usize)> = p
                .edges()
                .map(|(a, b)| {
                    let (x, y) = (img[a], img[b]);
                    if x < y { (x, y) } else { (y, x) }
                })
                .collect();
            if edges.iter().all(|&(x, y)| g.has_edge(x, y)) {
                edges.sort();
                out.insert(edges);
            }
            return;
        }
        for v in 0..n {
            if !img.contains(&v) {
                img.push(v);
                rec(g, p, n, img, out);
                img.pop();
            }
        }
    }
    if k <= n {
        rec(g, &p, n, &mut img, &mut out);
    }
    out
}

/// Lexicographically smallest adjacency encoding over all relabelings.
fn brute_canon(g: &Graph) -> Vec<bool> {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    fn heap(k: usize, perm: &mut Vec<usize>, g: &Graph, best: &mut Option<Vec<bool>>) {
        if k <= 1 {
            let n = perm.len();
            let code: Vec<bool> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| g.has_edge(perm[i], perm[j])).collect();
            if best.as_ref().map_or(true, |b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, g, best);
            let j = if k % 2 == 0 { i } else { 0 };
            perm.swap(j, k - 1);
        }
    }
    heap(n, &mut perm, g, &mut best);
    best.unwrap_or_default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn detectors_match_naive_embedding(g in arb_graph(7)) {
        for t in FAMILY {
            let naive = naive_copies(&g, t);
            prop_assert_eq!(contains(&g, t), !naive.is_empty(), "{}", t);
            prop_assert_eq!(count_copies(&g, t), naive.len() as u64, "{}", t);
            let listed: BTreeSet<_> = list_copies(&g, t).copies.into_iter().collect();
            prop_assert_eq!(listed, naive, "{}", t);
        }
    }

    #[test]
    fn through_edge_counts_match_difference(g in arb_graph(7), a in 0usize..7, b in 0usize..7) {
        let n = g.order();
        let (u, v) = (a % n, b % n);
        prop_assume!(u != v);
        let mut with = g.clone();
        with.add_edge(u, v);
        let mut without = g.clone();
        without.remove_edge(u, v);
        for t in FAMILY {
            let expect = count_copies(&with, t) - count_copies(&without, t);
            prop_assert_eq!(count_copies_through_edge(g.adjacency(), u, v, t), expect, "{}", t);
        }
    }

    #[test]
    fn canonical_form_is_a_complete_invariant(g in arb_graph(6), h in arb_graph(6)) {
        let same = g.order() == h.order() && brute_canon(&g) == brute_canon(&h);
        prop_assert_eq!(canonical_form(&g) == canonical_form(&h), same);
        prop_assert_eq!(are_isomorphic(&g, &h), same);
    }

    #[test]
    fn canonical_form_ignores_labels(g in arb_graph(20), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed | 1;
        for i in (1..n).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let h = g.permuted(&perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert_eq!(canonical_graph(&g), canonical_graph(&h));
    }

    #[test]
    fn graph6_round_trip(n in 0usize..=64, bits in any::<u64>(), salt in any::<u64>()) {
        let mut g = Graph::empty(n).unwrap();
        let mut s = bits | 1;
        for u in 0..n {
            for v in u + 1..n {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                if (s ^ salt) & 3 == 0 {
                    g.add_edge(u, v);
                }
            }
        }
        let text = emit_graph6(&g);
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn matrix_round_trip(n in 2usize..=20, m in 1usize..=4, seed in any::<u64>()) {
        let mut c = EdgeColoring::uniform(n, m, 0).unwrap();
        let mut s = seed | 1;
        for u in 0..n {
            for v in u + 1..n {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                c.set_color(u, v, (s % m as u64) as usize);
            }
        }
        c.set_color(0, 1, m - 1);
        let back = parse_coloring_matrix(&emit_coloring_matrix(&c)).unwrap();
        prop_assert_eq!(back, c);
    }
}

fn labeled_graphs(n: usize) -> Vec<Graph> {
    let e = n * n.saturating_sub(1) / 2;
    (0..1u64 << e).map(|bits| graph(n, bits)).collect()
}

#[test]
fn small_class_counts() {
    for (n, classes) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)] {
        let keys: BTreeSet<_> = labeled_graphs(n).iter().map(canonical_form).collect();
        assert_eq!(keys.len(), classes, "n = {n}");
    }
}

#[test]
fn enumeration_matches_filtering_all_graphs() {
    use ramsey_core::detect::is_good;
    use ramsey_core::enumerate::enumerate_levels;
    let pairs = [
        (Target::Clique(3), Target::Clique(3)),
        (Target::Clique(3), Target::CliqueMinusEdge(5)),
        (Target::TrianglePlusPendant, Target::CliqueMinusEdge(4)),
        (Target::Cycle(4), Target::Clique(4)),
        (Target::CliqueMinusP3(5), Target::Clique(3)),
    ];
    for (t1, t2) in pairs {
        let levels = enumerate_levels(t1, t2, 6).unwrap();
        for n in 1..=6 {
            let oracle: BTreeSet<_> =
                labeled_graphs(n).iter().filter(|g| is_good(g, t1, t2)).map(canonical_form).collect();
            let found: BTreeSet<_> = levels[n - 1].iter().map(canonical_form).collect();
            assert_eq!(found.len(), levels[n - 1].len(), "duplicates at n = {n}");
            assert_eq!(found, oracle, "({t1}, {t2}; {n})");
        }
    }
}

#[test]
fn levels_are_hereditary() {
    use ramsey_core::detect::is_good;
    use ramsey_core::enumerate::enumerate_levels;
    let (t1, t2) = (Target::Clique(3), Target::CliqueMinusEdge(6));
    let levels = enumerate_levels(t1, t2, 9).unwrap();
    for n in 2..=9 {
        let below: BTreeSet<_> = levels[n - 2].iter().map(canonical_form).collect();
        for g in &levels[n - 1] {
            assert!(is_good(g, t1, t2));
            for v in 0..n {
                assert!(below.contains(&canonical_form(&g.remove_vertex(v))), "n = {n}");
            }
        }
    }
}

#[test]
fn figure_assets_unchanged() {
    use ramsey_core::constructions::{FIG3_MATRIX, FIG4_MATRIX};
    use sha2::{Digest, Sha256};
    let hex = |s: &str| Sha256::digest(s.as_bytes()).iter().map(|b| format!("{b:02x}")).collect::<String>();
    assert_eq!(hex(FIG3_MATRIX), "eeb0c66c53d97d293487840779dbb9f5b86367f3e3c9b208dd2f19602fd6a66d");
    assert_eq!(hex(FIG4_MATRIX), "3f73b8206e25a2c6ae076dbfe1b789477c1c5c87e5516becb08d8adda31cd62d");
}
