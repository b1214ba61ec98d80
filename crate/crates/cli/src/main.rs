//! `kfactor` command-line front end.
//!
//! Exit codes: `solve` 0 = factor found, 1 = no factor, 2 = input/usage
//! error. `verify` 0 = valid factor, 1 = invalid, 2 = error. `difftest` 0 =
//! full agreement, 1 = missed factors only, 2 = unsound result or error.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kfactor::harness::bench::{format_table, run_bench, BenchSpec};
use kfactor::harness::difftest::{run_difftest, DiffConfig, DiffMode};
use kfactor::harness::generate::RandomModel;
use kfactor::harness::oracle::{brute_force_k_factor, DEFAULT_EDGE_CAP};
use kfactor::search::trace::TraceEvent;
use kfactor::solver::{compute_bipartite_k_factor_with, compute_k_factor_with, SolveObserver};
use kfactor::{parse_edge_set, parse_graph, verify_factor, write_edge_set, Graph, KLimitedSubgraph, Trail};

#[derive(Parser)]
#[command(name = "kfactor", version, about = "Compute k-factors of simple graphs with augmenting trails")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a k-factor of the input graph.
    Solve(SolveArgs),
    /// Check that a factor file is a k-factor of the input graph.
    Verify(VerifyArgs),
    /// Compare the solver against the brute-force oracle.
    Difftest(DifftestArgs),
    /// Time the solver on seeded random regular graphs.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list file, or '-' for standard input.
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Print a structured JSON result document.
    #[arg(long)]
    json: bool,
    /// Write search events to standard error.
    #[arg(long)]
    trace: bool,
    /// Also run the brute-force oracle when the graph is small enough.
    #[arg(long)]
    oracle_check: bool,
    /// Use the breadth-first augmenting-path search (bipartite inputs only).
    #[arg(long)]
    bipartite: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Factor file: one "u v" line per edge.
    #[arg(long)]
    factor: PathBuf,
}

#[derive(Args)]
struct DifftestArgs {
    /// Enumerate every labeled graph on this many vertices.
    #[arg(long, conflicts_with = "random")]
    exhaustive: Option<usize>,
    /// Number of random instances.
    #[arg(long, requires = "n")]
    random: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability for random instances.
    #[arg(long, conflicts_with = "d")]
    p: Option<f64>,
    /// Degree for random regular instances.
    #[arg(long)]
    d: Option<usize>,
    /// One or more k values, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for counterexample files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Edge cap for the oracle.
    #[arg(long, default_value_t = 66)]
    oracle_cap: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// Ladder of vertex counts, comma separated and strictly increasing.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, default_value_t = 6)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Solves per rung; the median time is reported.
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long)]
    json: bool,
}

const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let code = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Difftest(args) => cmd_difftest(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match code {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn read_graph(input: &str) -> Result<Graph, String> {
    let text = if input == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf).map_err(|e| format!("stdin: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(input).map_err(|e| format!("{input}: {e}"))?
    };
    parse_graph(&text).map_err(|e| format!("{input}: {e}"))
}

struct StderrTrace;

impl SolveObserver for StderrTrace {
    fn augmented(&mut self, g: &Graph, trail: &Trail, _before: &KLimitedSubgraph, after: &KLimitedSubgraph) {
        let _ = writeln!(io::stderr(), "augmented\t{}\t{}", after.sigma(), trail_vertices(g, trail));
    }

    fn trace(&mut self, event: &TraceEvent<'_>) {
        let _ = writeln!(io::stderr(), "{event}");
    }
}

struct Quiet;

impl SolveObserver for Quiet {}

fn trail_vertices(g: &Graph, trail: &Trail) -> String {
    trail.vertices(g).iter().map(|v| v.0.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_solve(args: SolveArgs) -> Result<u8, String> {
    let g = read_graph(&args.input.input)?;
    let k = args.input.k as usize;
    let mut observer: Box<dyn SolveObserver> = if args.trace { Box::new(StderrTrace) } else { Box::new(Quiet) };
    let outcome = if args.bipartite {
        compute_bipartite_k_factor_with(&g, None, k, observer.as_mut())
    } else {
        compute_k_factor_with(&g, k, observer.as_mut())
    }
    .map_err(|e| e.to_string())?;

    let oracle = if args.oracle_check {
        match brute_force_k_factor(&g, k, DEFAULT_EDGE_CAP) {
            Ok(found) => Some(Ok(found.is_some())),
            Err(e) => Some(Err(e.to_string())),
        }
    } else {
        None
    };

    let mut stdout = io::stdout().lock();
    if args.json {
        let mut doc = outcome.to_json(&g);
        if let Some(oracle) = &oracle {
            let obj = doc.as_object_mut().expect("result document is an object");
            match oracle {
                Ok(exists) => {
                    obj.insert("oracle_factor_exists".into(), (*exists).into());
                    obj.insert("oracle_agrees".into(), (*exists == outcome.is_factor_found()).into());
                }
                Err(skip) => {
                    obj.insert("oracle_skipped".into(), skip.clone().into());
                }
            }
        }
        let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        match &outcome.factor {
            Some(edges) => {
                let _ = write!(stdout, "{}", write_edge_set(&g, edges));
            }
            None => {
                let _ = writeln!(stdout, "# {}", outcome.status);
                for reason in &outcome.infeasibility {
                    let _ = writeln!(stdout, "# {reason}");
                }
            }
        }
        match &oracle {
            Some(Ok(exists)) => {
                let agree = *exists == outcome.is_factor_found();
                let _ = writeln!(
                    stdout,
                    "# oracle: factor {}; {}",
                    if *exists { "exists" } else { "does not exist" },
                    if agree { "agrees" } else { "DISAGREES" }
                );
            }
            Some(Err(skip)) => {
                let _ = writeln!(stdout, "# oracle skipped: {skip}");
            }
            None => {}
        }
    }
    Ok(if outcome.is_factor_found() { 0 } else { 1 })
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, String> {
    let g = read_graph(&args.input.input)?;
    let k = args.input.k as usize;
    let text = std::fs::read_to_string(&args.factor).map_err(|e| format!("{}: {e}", args.factor.display()))?;
    let edges = parse_edge_set(&g, &text).map_err(|e| format!("{}: {e}", args.factor.display()))?;
    let report = verify_factor(&g, k, &edges).map_err(|e| e.to_string())?;
    if report.is_factor() {
        println!("ok: {}-factor with {} edges", k, edges.len());
        Ok(0)
    } else {
        for (v, d) in &report.violations {
            println!("vertex {v}: degree {d}, expected {k}");
        }
        Ok(1)
    }
}

fn cmd_difftest(args: DifftestArgs) -> Result<u8, String> {
    let mode = match (args.exhaustive, args.random) {
        (Some(n), None) => DiffMode::Exhaustive { n },
        (None, Some(count)) => {
            let n = args.n.ok_or("--random needs --n")?;
            let model = match (args.p, args.d) {
                (Some(p), None) => RandomModel::Gnp { p },
                (None, Some(d)) => RandomModel::DRegular { d },
                (None, None) => RandomModel::Gnp { p: 0.5 },
                (Some(_), Some(_)) => return Err("--p and --d are exclusive".into()),
            };
            DiffMode::Random { count, n, model }
        }
        _ => return Err("choose one of --exhaustive <n> or --random <count>".into()),
    };
    let mut config = DiffConfig::new(mode, args.k);
    config.seed = args.seed;
    config.out_dir = args.out;
    config.oracle_cap = args.oracle_cap;
    let report = run_difftest(&config).map_err(|e| e.to_string())?;
    println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    Ok(if report.solver_false() > 0 || report.oracle_missed() > 0 {
        2
    } else if report.solver_missed() > 0 {
        1
    } else {
        0
    })
}

fn cmd_bench(args: BenchArgs) -> Result<u8, String> {
    if args.n.is_empty() {
        return Err("bench needs a ladder: --n 500,1000,2000".into());
    }
    let ladder: Vec<BenchSpec> = args.n.iter().map(|&n| BenchSpec { n, d: args.d, k: args.k }).collect();
    let rows = run_bench(&ladder, args.seed, args.repeats).map_err(|e| e.to_string())?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&rows).expect("json"));
    } else {
        print!("{}", format_table(&rows));
    }
    Ok(0)
}
