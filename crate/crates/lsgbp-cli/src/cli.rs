//! Command-line surface: argument parsing, subcommand dispatch, and exit
//! codes. Exit 0 is success, 1 is a failed expectation (no improvement
//! under `--expect-improve`, a solution value that does not re-verify, a
//! type partition that does not hold), 2 is a usage, input, or budget
//! error.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use lsgbp::adapters::{InitMode, Problem};
use lsgbp::driver::run_local_search;
use lsgbp::typing::verify_target_equivalence;
use lsgbp::{
    brute_force_best_flip, BPartition, BigInstance, BigInt, ExtValue, SearchOptions, Strategy,
};

use crate::formats::{self, Meta, SolutionFile};

#[derive(Parser)]
#[command(
    name = "lsgbp",
    version,
    about = "Local search for generalized bin problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run iterated improving-flip search on an instance.
    Solve(SolveArgs),
    /// Run the brute-force oracle for a single improving step.
    Oracle(OracleArgs),
    /// Check an instance's shipped type partition.
    VerifyTypes(VerifyTypesArgs),
    /// Re-evaluate a solution file against its instance.
    Eval(EvalArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file (JSON).
    #[arg(long)]
    instance: PathBuf,
    /// Problem tag; when given, must match the instance file.
    #[arg(long)]
    problem: Option<String>,
}

#[derive(Args)]
struct InitArgs {
    /// Starting partition from a solution file.
    #[arg(long, conflicts_with = "init_strategy")]
    init: Option<PathBuf>,
    /// How to build a starting partition when no file is given.
    #[arg(long, value_enum, default_value_t = InitStrategyArg::Random)]
    init_strategy: InitStrategyArg,
    /// Seed for random starting partitions.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    init: InitArgs,
    /// Search radius: the maximum number of elements moved per step.
    #[arg(short)]
    k: usize,
    /// Take the best improvement per step, or the first one found.
    #[arg(long, value_enum, default_value_t = StrategyArg::Best)]
    strategy: StrategyArg,
    /// Maximum local-search iterations; omit to run to a local optimum.
    #[arg(long)]
    max_iters: Option<u64>,
    /// Write the solution here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Print work counters to standard error.
    #[arg(long)]
    stats: bool,
    /// Worker threads (default 1; LSGBP_THREADS is the fallback).
    #[arg(long)]
    threads: Option<usize>,
    /// Exit 1 when no improving step was found.
    #[arg(long)]
    expect_improve: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    init: InitArgs,
    /// Search radius: the maximum number of elements moved.
    #[arg(short)]
    k: usize,
    /// Write the solution here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Print work counters to standard error.
    #[arg(long)]
    stats: bool,
    /// Exit 1 when no improving partition exists in the radius.
    #[arg(long)]
    expect_improve: bool,
}

#[derive(Args)]
struct VerifyTypesArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Largest context size to test (default: every context).
    #[arg(long)]
    max_context: Option<usize>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Solution file to re-evaluate.
    #[arg(long)]
    solution: PathBuf,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum StrategyArg {
    Best,
    First,
}

impl StrategyArg {
    fn engine(self) -> Strategy {
        match self {
            StrategyArg::Best => Strategy::Best,
            StrategyArg::First => Strategy::First,
        }
    }

    fn label(self) -> &'static str {
        match self {
            StrategyArg::Best => "best",
            StrategyArg::First => "first",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum InitStrategyArg {
    Random,
    Greedy,
}

/// Parses `argv` and runs the selected subcommand, returning the process
/// exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version land here too; only real usage
            // problems are failures.
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Oracle(args) => run_oracle(args),
        Command::VerifyTypes(args) => run_verify_types(args),
        Command::Eval(args) => run_eval(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    }
}

fn load_problem(args: &InstanceArgs) -> Result<Problem> {
    let problem = formats::parse_instance(&args.instance)?;
    if let Some(expected) = &args.problem {
        if expected != problem.tag() {
            bail!(
                "--problem {} does not match instance tag {}",
                expected,
                problem.tag()
            );
        }
    }
    Ok(problem)
}

fn starting_partition(
    problem: &Problem,
    inst: &BigInstance,
    init: &InitArgs,
) -> Result<BPartition> {
    match &init.init {
        Some(path) => {
            let file = formats::read_solution(path)?;
            BPartition::new(file.assign, inst.bins())
                .with_context(|| format!("initial partition from {}", path.display()))
        }
        None => {
            let mode = match init.init_strategy {
                InitStrategyArg::Random => InitMode::Random { seed: init.seed },
                InitStrategyArg::Greedy => InitMode::Greedy,
            };
            Ok(problem.initial_solution(mode)?)
        }
    }
}

fn resolve_threads(flag: Option<usize>) -> Result<usize> {
    let threads = match flag {
        Some(t) => t,
        None => match std::env::var("LSGBP_THREADS") {
            Ok(text) => text
                .trim()
                .parse::<usize>()
                .with_context(|| format!("LSGBP_THREADS={text} is not a thread count"))?,
            Err(_) => 1,
        },
    };
    if threads == 0 {
        bail!("--threads must be at least 1");
    }
    Ok(threads)
}

fn emit_solution(path: Option<&Path>, solution: &SolutionFile) -> Result<()> {
    let text = formats::render_solution(solution);
    match path {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_stats(deltas: u64, entries: u64, evals: u64, wall_ms: u128) {
    eprintln!("deltas_enumerated={deltas}");
    eprintln!("table_entries={entries}");
    eprintln!("ibe_evals={evals}");
    eprintln!("wall_ms={wall_ms}");
}

fn run_solve(args: SolveArgs) -> Result<i32> {
    let problem = load_problem(&args.instance)?;
    let inst: BigInstance = problem.build();
    let f0 = starting_partition(&problem, &inst, &args.init)?;
    let opts = SearchOptions {
        strategy: args.strategy.engine(),
        threads: resolve_threads(args.threads)?,
    };
    let max_iters = args.max_iters.unwrap_or(u64::MAX);
    let trace = run_local_search(&inst, &f0, args.k, &opts, max_iters)?;

    let solution = SolutionFile {
        assign: trace.final_partition.assign().to_vec(),
        value: Some(trace.final_value.to_string()),
        meta: Some(Meta {
            k: args.k,
            seed: args.init.seed,
            strategy: args.strategy.label().to_string(),
            iterations: trace.steps.len() as u64,
        }),
    };
    emit_solution(args.output.as_deref(), &solution)?;
    if args.stats {
        emit_stats(
            trace.total_deltas,
            trace.total_table_entries,
            trace.total_ibe_evals,
            trace.total_wall.as_millis(),
        );
    }
    if args.expect_improve && trace.steps.is_empty() {
        eprintln!("no improving partition within radius {}", args.k);
        return Ok(1);
    }
    Ok(0)
}

fn run_oracle(args: OracleArgs) -> Result<i32> {
    let problem = load_problem(&args.instance)?;
    let inst: BigInstance = problem.build();
    let f0 = starting_partition(&problem, &inst, &args.init)?;
    let started = Instant::now();
    let evals_before = inst.eval_count();
    let result = brute_force_best_flip(&inst, &f0, args.k)?;
    let wall = started.elapsed();

    let (assign, value, iterations) = match (&result.partition, result.improved) {
        (Some(best), true) => (best.assign().to_vec(), result.value.clone(), 1),
        _ => (f0.assign().to_vec(), result.value.clone(), 0),
    };
    let solution = SolutionFile {
        assign,
        value: Some(value.to_string()),
        meta: Some(Meta {
            k: args.k,
            seed: args.init.seed,
            strategy: "oracle".to_string(),
            iterations,
        }),
    };
    emit_solution(args.output.as_deref(), &solution)?;
    if args.stats {
        emit_stats(0, 0, inst.eval_count() - evals_before, wall.as_millis());
    }
    if args.expect_improve && !result.improved {
        eprintln!("no improving partition within radius {}", args.k);
        return Ok(1);
    }
    Ok(0)
}

fn run_verify_types(args: VerifyTypesArgs) -> Result<i32> {
    let problem = load_problem(&args.instance)?;
    let inst: BigInstance = problem.build();
    let max_context = args.max_context.unwrap_or(inst.n().max(1));
    let report = verify_target_equivalence(&inst, max_context)?;
    println!("holds={}", report.holds);
    println!("exhaustive={}", report.exhaustive);
    println!("checks={}", report.checks_performed);
    match report.witness {
        None => Ok(0),
        Some(w) => {
            println!(
                "witness: class {} elements {} and {} disagree in bin {} with context {:?}",
                w.class, w.x, w.y, w.bin, w.context
            );
            Ok(1)
        }
    }
}

fn run_eval(args: EvalArgs) -> Result<i32> {
    let problem = load_problem(&args.instance)?;
    let inst: BigInstance = problem.build();
    let file = formats::read_solution(&args.solution)?;
    let f = BPartition::new(file.assign, inst.bins())
        .with_context(|| format!("partition from {}", args.solution.display()))?;
    let actual = inst.target_value(&f)?;
    println!("value={actual}");
    if let Some(recorded) = &file.value {
        let recorded_value = ExtValue::<BigInt>::from_decimal(recorded)
            .with_context(|| format!("recorded value {recorded:?} is not a decimal or \"worst\""))?;
        if recorded_value != actual {
            println!("recorded={recorded_value}");
            eprintln!("recorded value does not match: recorded {recorded_value}, actual {actual}");
            return Ok(1);
        }
    }
    Ok(0)
}
