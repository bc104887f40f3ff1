use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use ramsey_core::anneal::{anneal_search, AnnealOutcome, AnnealParams, DEFAULT_SEED};
use ramsey_core::canon::canonical_form;
use ramsey_core::constructions::{clone_vertex, Figure, NamedGraphId};
use ramsey_core::enumerate::{archive_name, enumerate_good, EnumerateOptions};
use ramsey_core::format::{emit_coloring_matrix, emit_graph6, parse_coloring_matrix, parse_graph6, parse_graph6_stream};
use ramsey_core::split::{encode_split_cnf, split_with, write_dimacs, Engine, SatBudget, SplitOptions};
use ramsey_core::target::parse_target_list;
use ramsey_core::verify::{
    load_pipeline_level, verify_figure, verify_j7_arrow, verify_lemma_hex, verify_schlafli, verify_split_pipeline,
    Report,
};
use ramsey_core::{Error, Target};

#[derive(Parser)]
#[command(name = "ramsey", version, about = "Good-graph enumeration, splittability and Ramsey colorings")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Sat,
    Recurse,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Sat => Engine::Sat,
            EngineArg::Recurse => Engine::Recurse,
            EngineArg::Both => Engine::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    LemmaHex,
    J7Arrow,
    SplitPipeline,
    Figure3,
    Figure4,
    Schlafli,
}

#[derive(clap::Args, Clone, Copy)]
struct BudgetArgs {
    /// Give up a SAT decision after this many conflicts (exit code 3).
    #[arg(long)]
    max_conflicts: Option<u64>,
    /// Give up a SAT decision after this many seconds (exit code 3).
    #[arg(long)]
    max_seconds: Option<f64>,
}

impl BudgetArgs {
    fn budget(self) -> SatBudget {
        SatBudget { max_conflicts: self.max_conflicts, max_duration: self.max_seconds.map(Duration::from_secs_f64) }
    }
}

fn target(s: &str) -> Result<Target, String> {
    s.parse::<Target>().and_then(Target::validate).map_err(|e| e.to_string())
}

#[derive(Clone)]
struct TargetList(Vec<Target>);

fn targets(s: &str) -> Result<TargetList, String> {
    parse_target_list(s).map(TargetList).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Counts the (t1, t2; n)-good graphs for n = 1..=max-n as TSV.
    Enumerate {
        #[arg(long, value_parser = target)]
        t1: Target,
        #[arg(long, value_parser = target)]
        t2: Target,
        #[arg(long)]
        max_n: usize,
        /// Write each level as good_<t1>_<t2>_n<k>.g6 into this directory.
        #[arg(long)]
        emit_graphs: Option<PathBuf>,
        /// Stop with exit code 3 once a level exceeds this many classes.
        #[arg(long)]
        max_level_size: Option<usize>,
    },
    /// Reads graph6 lines from stdin and prints `<canonical key> SPLITTABLE|UNSPLITTABLE`.
    Split {
        #[arg(long, value_parser = targets)]
        targets: TargetList,
        #[arg(long, value_enum, default_value = "sat")]
        engine: EngineArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Decides whether a graph arrows the targets.
    Arrow {
        /// graph6 file; the first record is used.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = targets)]
        targets: TargetList,
        #[arg(long, value_enum, default_value = "sat")]
        engine: EngineArg,
        /// Write a splitting as a coloring matrix, non-edges in the last color.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Writes the splittability formula of a graph in DIMACS CNF.
    Cnf {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = target)]
        t1: Target,
        #[arg(long, value_parser = target)]
        t2: Target,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Searches for a coloring of K_n by simulated annealing.
    Anneal {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = targets)]
        targets: TargetList,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 2.0)]
        t0: f64,
        #[arg(long, default_value_t = 0.997)]
        cooling: f64,
        #[arg(long, default_value_t = 1)]
        sweeps_per_temperature: usize,
        /// Default: one move per edge of K_n.
        #[arg(long)]
        moves_per_sweep: Option<usize>,
        #[arg(long, default_value_t = 3000)]
        max_sweeps: usize,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Runs one of the built-in verifications.
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// Order for split-pipeline.
        #[arg(long)]
        level: Option<usize>,
        /// Directory holding the level archives for split-pipeline.
        #[arg(long, default_value = ".")]
        archive: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Writes a named graph in graph6.
    Named {
        /// SCHLAFLI, J(k), CYCLE(k), CLIQUE(k) or TWO_K3.
        #[arg(long)]
        id: String,
        /// Write the complement instead.
        #[arg(long)]
        complement: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Adds a vertex copying x (and y) and joins it to both in the link color.
    Clone {
        #[arg(long)]
        coloring: PathBuf,
        /// 1-based vertex.
        #[arg(long)]
        x: usize,
        /// 1-based vertex.
        #[arg(long)]
        y: usize,
        /// 1-based color.
        #[arg(long)]
        link_color: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Verification,
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Resource(_) => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_out(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn report(r: Report) -> Result<(), Failure> {
    println!("{r}");
    if r.passed { Ok(()) } else { Err(Failure::Verification) }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Enumerate { t1, t2, max_n, emit_graphs, max_level_size } => {
            if let Some(dir) = &emit_graphs {
                fs::create_dir_all(dir)?;
            }
            let mut out = io::stdout().lock();
            writeln!(out, "n\tcount\tedges")?;
            let opts = EnumerateOptions { max_level_size };
            let result = enumerate_good(t1, t2, max_n, opts, |n, level| {
                if let Some(dir) = &emit_graphs {
                    let mut text = String::new();
                    for g in level {
                        text.push_str(&emit_graph6(g));
                        text.push('\n');
                    }
                    fs::write(dir.join(archive_name(t1, t2, n)), text)?;
                }
                writeln!(out, "{}", ramsey_core::enumerate::LevelStats::of(n, level))?;
                out.flush()?;
                Ok(())
            });
            result.map(|_| ()).map_err(|p| Failure::from(p.error))
        }
        Command::Split { targets: TargetList(targets), engine, budget } => {
            let mut input = String::new();
            io::stdin().read_to_string(&mut input)?;
            let graphs = parse_graph6_stream(&input)?;
            let opts = SplitOptions { engine: engine.into(), budget: budget.budget() };
            let lines: Vec<Result<String, Error>> = graphs
                .par_iter()
                .map(|g| {
                    let verdict = if split_with(g, &targets, &opts)?.is_some() { "SPLITTABLE" } else { "UNSPLITTABLE" };
                    Ok(format!("{} {verdict}", canonical_form(g).to_hex()))
                })
                .collect();
            let mut out = io::stdout().lock();
            for l in lines {
                writeln!(out, "{}", l?)?;
            }
            Ok(())
        }
        Command::Arrow { graph, targets: TargetList(targets), engine, witness, budget } => {
            let g = first_graph(&read(&graph)?)?;
            let opts = SplitOptions { engine: engine.into(), budget: budget.budget() };
            match split_with(&g, &targets, &opts)? {
                None => println!("ARROWS"),
                Some(w) => {
                    println!("SPLITTABLE");
                    if let Some(p) = witness {
                        let c = if w.color_count < 4 {
                            w.to_coloring()?
                        } else {
                            return Err(Failure::Usage("a 4-color witness leaves no color for non-edges".into()));
                        };
                        fs::write(p, emit_coloring_matrix(&c))?;
                    }
                }
            }
            Ok(())
        }
        Command::Cnf { graph, t1, t2, output } => {
            let g = first_graph(&read(&graph)?)?;
            write_out(&output, &write_dimacs(&encode_split_cnf(&g, t1, t2)))
        }
        Command::Anneal {
            n,
            targets: TargetList(targets),
            seed,
            t0,
            cooling,
            sweeps_per_temperature,
            moves_per_sweep,
            max_sweeps,
            restarts,
            output,
        } => {
            let params = AnnealParams {
                initial_temperature: t0,
                cooling,
                sweeps_per_temperature,
                moves_per_sweep,
                max_sweeps,
                restarts,
                seed,
            };
            println!(
                "# seed {seed} t0 {t0} cooling {cooling} sweeps-per-temperature {sweeps_per_temperature} max-sweeps {max_sweeps} restarts {restarts}"
            );
            let names: Vec<String> = targets.iter().map(Target::to_string).collect();
            match anneal_search(n, &targets, &params)? {
                AnnealOutcome::Found { coloring, restart, sweeps } => {
                    println!("FOUND n {n} targets {} restart {restart} sweeps {sweeps} energy 0", names.join(","));
                    let text = emit_coloring_matrix(&coloring);
                    match &output {
                        Some(_) => write_out(&output, &text)?,
                        None => print!("{text}"),
                    }
                }
                AnnealOutcome::NotFound { best_energy, .. } => {
                    println!("NONE n {n} targets {} best energy {best_energy}", names.join(","));
                }
            }
            Ok(())
        }
        Command::Verify { check, level, archive, budget } => match check {
            Check::LemmaHex => report(verify_lemma_hex()),
            Check::J7Arrow => report(verify_j7_arrow()),
            Check::Figure3 => report(verify_figure(Figure::Fig3)),
            Check::Figure4 => report(verify_figure(Figure::Fig4)),
            Check::Schlafli => report(verify_schlafli(budget.budget())?),
            Check::SplitPipeline => {
                let n = level.ok_or_else(|| Failure::Usage("split-pipeline needs --level <n>".into()))?;
                let graphs = load_pipeline_level(&archive, n)?;
                report(verify_split_pipeline(&graphs, n, budget.budget())?)
            }
        },
        Command::Named { id, complement, output } => {
            let id: NamedGraphId = id.parse()?;
            let g = id.build()?;
            let g = if complement { g.complement() } else { g };
            write_out(&output, &format!("{}\n", emit_graph6(&g)))
        }
        Command::Clone { coloring, x, y, link_color, output } => {
            let c = parse_coloring_matrix(&read(&coloring)?)?;
            let one_based = |v: usize, what: &str| {
                v.checked_sub(1).ok_or_else(|| Failure::Usage(format!("{what} is 1-based; 0 is not allowed")))
            };
            let d = clone_vertex(&c, one_based(x, "--x")?, one_based(y, "--y")?, one_based(link_color, "--link-color")?)?;
            write_out(&output, &emit_coloring_matrix(&d))
        }
    }
}

fn first_graph(text: &str) -> Result<ramsey_core::Graph, Failure> {
    let line = text.lines().map(str::trim).find(|l| !l.is_empty());
    let line = line.ok_or_else(|| Failure::Usage("graph file holds no graph6 record".into()))?;
    Ok(parse_graph6(line)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
