//! End-to-end acceptance gate. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails. The extended criterion runs only with
//! `--ignored` or `--include-ignored`.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::Instant;

use ramsey_core::canon::canonical_form;
use ramsey_core::constructions::{clone_vertex, schlafli};
use ramsey_core::detect::{coloring_is_valid, contains, is_good};
use ramsey_core::enumerate::enumerate_levels;
use ramsey_core::format::parse_coloring_matrix;
use ramsey_core::split::{brute_force_split, split_with, Engine, SplitOptions};
use ramsey_core::{EdgeColoring, Graph, Target};

const K3: Target = Target::Clique(3);
const K4: Target = Target::Clique(4);
const K3E: Target = Target::TrianglePlusPendant;
const J4: Target = Target::CliqueMinusEdge(4);
const J7: Target = Target::CliqueMinusEdge(7);

type Outcome = Result<String, String>;

struct Run {
    stdout: String,
    stderr: String,
    code: Option<i32>,
}

fn ramsey(args: &[&str], stdin: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ramsey"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn ramsey");
    {
        let mut input = child.stdin.take().expect("stdin");
        if let Some(text) = stdin {
            input.write_all(text.as_bytes()).expect("write stdin");
        }
    }
    let out = child.wait_with_output().expect("wait ramsey");
    Run {
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        code: out.status.code(),
    }
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg.into()) }
}

fn verify_passes(check: &str, extra: &[&str]) -> Result<Run, String> {
    let mut args = vec!["verify", check];
    args.extend_from_slice(extra);
    let r = ramsey(&args, None);
    ensure(
        r.code == Some(0) && r.stdout.trim_end().ends_with("PASS"),
        format!("verify {check} exited {:?}:\n{}{}", r.code, r.stdout, r.stderr),
    )?;
    Ok(r)
}

fn table_rows() -> Outcome {
    let expect = [
        (1, 1, "0"),
        (2, 2, "0-1"),
        (3, 3, "0-2"),
        (4, 7, "0-4"),
        (5, 14, "0-6"),
        (6, 38, "0-9"),
        (7, 105, "2-12"),
        (8, 392, "3-16"),
        (9, 1697, "4-20"),
        (10, 9430, "5-25"),
        (11, 58522, "8-30"),
    ];
    let r = ramsey(&["enumerate", "--t1", "K3", "--t2", "J7", "--max-n", "11"], None);
    ensure(r.code == Some(0), format!("enumerate exited {:?}: {}", r.code, r.stderr))?;
    let rows: Vec<Vec<&str>> = r.stdout.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    ensure(rows.len() == expect.len(), format!("{} rows", rows.len()))?;
    for (row, (n, count, edges)) in rows.iter().zip(expect) {
        let want = [n.to_string(), count.to_string(), edges.to_string()];
        ensure(row.as_slice() == want, format!("row {row:?}, expected {want:?}"))?;
    }
    Ok("11 rows, 58522 classes at n = 11".into())
}

fn lemma_hex() -> Outcome {
    verify_passes("lemma-hex", &[])?;
    Ok("every good class on 6 vertices has C6 or is 2K3".into())
}

fn j7_arrow() -> Outcome {
    let r = verify_passes("j7-arrow", &[])?;
    ensure(r.stdout.contains("colorings examined: 1048576"), "2^20 colorings not all examined")?;
    let levels = enumerate_levels(K3E, J4, 7).map_err(|e| e.to_string())?;
    ensure(!levels[5].is_empty() && levels[6].is_empty(), "order 7 level is not the first empty one")?;
    Ok("no avoiding coloring among 2^20, order 7 level empty".into())
}

fn figures() -> Outcome {
    verify_passes("figure3", &[])?;
    verify_passes("figure4", &[])?;
    Ok("(K3,J4,J4;20) and (J4,J4,K4;32) colorings".into())
}

fn schlafli_suite() -> Outcome {
    let g = schlafli();
    let n = g.order();
    ensure(n == 27, format!("{n} vertices"))?;
    for u in 0..n {
        ensure(g.degree(u) == 10, format!("vertex {u} has degree {}", g.degree(u)))?;
        for v in u + 1..n {
            let common = (0..n).filter(|&w| g.has_edge(u, w) && g.has_edge(v, w)).count();
            let want = if g.has_edge(u, v) { 1 } else { 5 };
            ensure(common == want, format!("{{{u},{v}}} has {common} common neighbors"))?;
        }
    }
    ensure(is_good(&g, J4, J7), "not (J4, J7)-good")?;

    let g6 = ramsey(&["named", "--id", "SCHLAFLI"], None).stdout;
    let r = ramsey(&["split", "--targets", "J4,J4"], Some(&g6));
    ensure(r.stdout.trim_end().ends_with(" SPLITTABLE"), format!("J4,J4 split: {}{}", r.stdout, r.stderr))?;
    let co = ramsey(&["named", "--id", "SCHLAFLI", "--complement"], None).stdout;
    let r = ramsey(&["split", "--targets", "K3,J4"], Some(&co));
    ensure(r.stdout.trim_end().ends_with(" UNSPLITTABLE"), format!("complement split: {}{}", r.stdout, r.stderr))?;
    verify_passes("schlafli", &[])?;
    Ok("SRG(27,10,1,5), (J4,J7)-good, splits into J4-free parts, complement unsplittable".into())
}

fn engines_agree() -> Outcome {
    let families = [(K3, J7), (K3E, J4), (J4, K4), (Target::Cycle(4), K4), (K3, Target::CliqueMinusP3(5))];
    let mut hosts = Vec::new();
    let mut seen = BTreeSet::new();
    for (t1, t2) in families {
        for level in enumerate_levels(t1, t2, 6).map_err(|e| e.to_string())? {
            for g in level {
                if g.edge_count() <= 15 && seen.insert(canonical_form(&g)) {
                    hosts.push(g);
                }
            }
        }
    }
    let pairs = [
        [K3, K3],
        [K3, J4],
        [K3E, J4],
        [J4, J4],
        [K3, Target::Cycle(4)],
        [K3E, Target::CliqueMinusP3(5)],
        [Target::Cycle(5), K4],
    ];
    let mut checked = 0;
    for g in hosts.iter().filter(|g| g.edge_count() > 0) {
        for targets in &pairs {
            let oracle = brute_force_split(g, targets).map_err(|e| e.to_string())?.avoiding > 0;
            for engine in [Engine::Sat, Engine::Recurse] {
                let opts = SplitOptions { engine, ..Default::default() };
                let verdict = split_with(g, targets, &opts).map_err(|e| e.to_string())?.is_some();
                ensure(
                    verdict == oracle,
                    format!("{engine} says {verdict}, oracle {oracle} on {g:?} with {targets:?}"),
                )?;
            }
            checked += 1;
        }
    }
    Ok(format!("{} hosts, {checked} decisions, all three agree", hosts.len()))
}

fn found_coloring(args: &[&str], targets: &[Target]) -> Result<(), String> {
    let r = ramsey(args, None);
    ensure(r.code == Some(0), format!("anneal exited {:?}: {}", r.code, r.stderr))?;
    let mut lines = r.stdout.lines().filter(|l| !l.starts_with('#'));
    let head = lines.next().unwrap_or_default();
    ensure(head.starts_with("FOUND") && head.ends_with("energy 0"), format!("anneal said {head:?}"))?;
    let matrix: String = lines.map(|l| format!("{l}\n")).collect();
    let c = parse_coloring_matrix(&matrix).map_err(|e| e.to_string())?;
    ensure(coloring_is_valid(&c, targets).is_valid(), "annealed coloring does not validate")
}

fn annealing() -> Outcome {
    found_coloring(&["anneal", "--n", "5", "--targets", "K3,K3"], &[K3, K3])?;
    found_coloring(&["anneal", "--n", "14", "--targets", "K3,K3,K3"], &[K3, K3, K3])?;
    let r = ramsey(&["anneal", "--n", "6", "--targets", "K3,K3"], None);
    ensure(r.stdout.lines().any(|l| l.starts_with("NONE n 6")), format!("K6 annealing said {}", r.stdout))?;
    let a = ramsey(&["anneal", "--n", "14", "--targets", "K3,K3,K3"], None);
    let b = ramsey(&["anneal", "--n", "14", "--targets", "K3,K3,K3"], None);
    ensure(a.stdout == b.stdout, "same seed gave different output")?;
    Ok("n = 5 and n = 14 found and valid, n = 6 none, reproducible".into())
}

fn twin_coloring(n: usize, m: usize, seed: u64) -> EdgeColoring {
    let mut c = EdgeColoring::uniform(n, m, 0).expect("small coloring");
    let mut s = seed | 1;
    for u in 0..n {
        for v in u + 1..n {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            c.set_color(u, v, (s % m as u64) as usize);
        }
    }
    for v in 2..n {
        let k = c.color(0, v);
        c.set_color(1, v, k);
    }
    c
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ramsey-acceptance-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

fn clone_checks() -> Outcome {
    for (i, (n, m)) in [(3, 2), (6, 3), (10, 4), (25, 3)].into_iter().enumerate() {
        let c = twin_coloring(n, m, 1000 + i as u64);
        for link in 0..m {
            let z = clone_vertex(&c, 0, 1, link).map_err(|e| e.to_string())?;
            ensure(z.remove_vertex(n) == c, format!("n = {n}: deleting the clone changes the coloring"))?;
            ensure(z.color(0, n) == link && z.color(1, n) == link, "link edges")?;
            ensure((2..n).all(|v| z.color(v, n) == c.color(0, v)), "clone edges")?;
        }
    }

    let dir = scratch_dir("clone");
    let input = dir.join("k3.coloring");
    std::fs::write(&input, "0 2 1\n2 0 1\n1 1 0\n").map_err(|e| e.to_string())?;
    let r = ramsey(
        &["clone", "--coloring", path_str(&input), "--x", "1", "--y", "2", "--link-color", "2"],
        None,
    );
    ensure(r.code == Some(0), format!("clone exited {:?}: {}", r.code, r.stderr))?;
    let k4 = parse_coloring_matrix(&r.stdout).map_err(|e| e.to_string())?;
    let second = k4.color_class(1);
    let triangle = Graph::from_edges(4, &[(0, 1), (0, 3), (1, 3)]).expect("4 vertices");
    ensure(k4.order() == 4 && second == triangle, format!("color 2 class {second:?}"))?;
    ensure(contains(&second, K3), "no triangle in color 2")?;
    std::fs::remove_dir_all(&dir).ok();
    Ok("deleting the clone restores the input, K3 toy gives a color-2 triangle".into())
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn extended_pipeline() -> Outcome {
    let dir = scratch_dir("pipeline");
    let r = ramsey(
        &["enumerate", "--t1", "K3", "--t2", "J7", "--max-n", "17", "--emit-graphs", path_str(&dir)],
        None,
    );
    ensure(r.code == Some(0), format!("enumerate exited {:?}: {}", r.code, r.stderr))?;
    for (level, want) in [("16", 11813), ("17", 0)] {
        let r = ramsey(&["verify", "split-pipeline", "--level", level, "--archive", path_str(&dir)], None);
        ensure(r.code == Some(0), format!("level {level}: exited {:?}:\n{}{}", r.code, r.stdout, r.stderr))?;
        ensure(
            r.stdout.lines().any(|l| l == format!("splittable: {want}")),
            format!("level {level}:\n{}", r.stdout),
        )?;
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok("11813 splittable graphs at order 16, none at 17".into())
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        return;
    }
    let only_ignored = args.iter().any(|a| a == "--ignored");
    let include_ignored = args.iter().any(|a| a == "--include-ignored");
    let criteria: [(&str, fn() -> Outcome, bool); 9] = [
        ("1 table rows 1-11", table_rows, true),
        ("2 lemma-hex", lemma_hex, true),
        ("3 j7-arrow", j7_arrow, true),
        ("4 figures 3 and 4", figures, true),
        ("5 schlafli suite", schlafli_suite, true),
        ("6 engine agreement", engines_agree, true),
        ("7 annealing", annealing, true),
        ("8 clone_vertex", clone_checks, true),
        ("9 extended split pipeline", extended_pipeline, false),
    ];
    let mut failed = 0;
    for (name, run, default) in criteria {
        let wanted = if default { !only_ignored } else { only_ignored || include_ignored };
        if !wanted {
            if !default {
                println!("SKIP {name} (pass --ignored to run)");
            }
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {name}: {msg} ({secs:.1} s)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg} ({secs:.1} s)");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
