use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mod2vqls::analytic::AnsatzKind;
use mod2vqls::bench::{emit_csv, fit_iteration_slope, format_csv, run_benchmark, BenchmarkRow};
use mod2vqls::circuits::build_matvec_operator;
use mod2vqls::gf2::parse_system;
use mod2vqls::par::Execution;
use mod2vqls::solver::{solve, Observation, SolveConfig};

#[derive(Parser)]
#[command(name = "mod2vqls", version, about = "Variational solver for linear systems over GF(2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve random planted systems per dimension and report aggregate statistics.
    Bench(BenchArgs),
    /// Solve one system read from a file and print the report.
    Solve(SolveArgs),
    /// Print the matrix-vector circuit of a system, one gate per line.
    DumpCircuit {
        #[arg(long)]
        system_file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AnsatzChoice {
    Rotations,
    Brickwork,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Shots,
}

#[derive(Args)]
struct SolverArgs {
    /// Brick layers for the brickwork ansatz, or `auto` for one per variable.
    #[arg(long, default_value = "auto")]
    layers: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    #[arg(long, default_value_t = 1024)]
    shots: usize,
    #[arg(long, default_value_t = 1e-4)]
    cutoff: f64,
    #[arg(long, default_value_t = 500)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-6)]
    cost_tol: f64,
    #[arg(long, default_value_t = 1.0)]
    rho_begin: f64,
    #[arg(long, default_value_t = 1e-4)]
    rho_end: f64,
    /// Extra reseeded attempts for runs that find no valid solution.
    #[arg(long, default_value_t = 0)]
    restarts: usize,
    /// Run everything on the calling thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Inclusive dimension range, e.g. `1..9` or `4`.
    #[arg(long, default_value = "1..9")]
    dims: String,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, value_enum, default_value = "both")]
    ansatz: AnsatzChoice,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print every trial's report to stderr.
    #[arg(long)]
    verbose: bool,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    system_file: PathBuf,
    #[arg(long, value_enum, default_value = "rotations")]
    ansatz: AnsatzChoice,
    #[command(flatten)]
    solver: SolverArgs,
}

fn parse_dims(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("invalid dimension range {s:?}, expected `a..b` or `n`");
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

impl SolverArgs {
    fn config(&self, ansatz: AnsatzKind) -> Result<SolveConfig, String> {
        let layers = match self.layers.as_str() {
            "auto" => None,
            n => Some(n.parse().map_err(|_| format!("invalid --layers {n:?}"))?),
        };
        let config = SolveConfig {
            ansatz,
            layers,
            max_iterations: self.max_iters,
            cost_tolerance: self.cost_tol,
            initial_trust_radius: self.rho_begin,
            final_trust_radius: self.rho_end,
            observation: match self.mode {
                Mode::Exact => Observation::Exact,
                Mode::Shots => Observation::Shots(self.shots),
            },
            support_cutoff: self.cutoff,
            seed: self.seed,
            restarts: self.restarts,
            execution: self.execution(),
        };
        config.validate().map_err(|e| e.to_string())?;
        Ok(config)
    }

    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

fn kinds(choice: AnsatzChoice) -> Vec<AnsatzKind> {
    match choice {
        AnsatzChoice::Rotations => vec![AnsatzKind::Rotations],
        AnsatzChoice::Brickwork => vec![AnsatzKind::Brickwork],
        AnsatzChoice::Both => vec![AnsatzKind::Brickwork, AnsatzKind::Rotations],
    }
}

fn read_system(path: &PathBuf) -> Result<(mod2vqls::gf2::BitMatrix, mod2vqls::gf2::BitVector), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_system(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn bench(args: BenchArgs) -> Result<(), String> {
    let dims = parse_dims(&args.dims)?;
    let mut rows: Vec<BenchmarkRow> = Vec::new();
    for kind in kinds(args.ansatz) {
        let config = args.solver.config(kind)?;
        let run = run_benchmark(
            dims.clone(),
            args.trials,
            kind,
            args.solver.seed,
            &config,
            args.solver.execution(),
        )
        .map_err(|e| e.to_string())?;
        if args.verbose {
            for t in &run.trials {
                eprintln!("== {kind} dim {} trial {} seed {:#018x}", t.dim, t.trial, t.seed);
                eprint!("{}", mod2vqls::gf2::format_system(&t.a, &t.b));
                eprintln!("planted: {}", t.planted);
                eprintln!("{}", t.report);
            }
        }
        if let Ok((slope, intercept)) = fit_iteration_slope(&run.rows) {
            eprintln!("{kind}: iterations ~ {slope:.3} * dim + {intercept:.3}");
        }
        rows.extend(run.rows);
    }
    match &args.out {
        Some(path) => emit_csv(&rows, path).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{}", format_csv(&rows)),
    }
    Ok(())
}

fn solve_cmd(args: SolveArgs) -> Result<(), String> {
    let (a, b) = read_system(&args.system_file)?;
    for kind in kinds(args.ansatz) {
        let config = args.solver.config(kind)?;
        let report = solve(&a, &b, &config).map_err(|e| e.to_string())?;
        println!("{report}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bench(args) => bench(args),
        Command::Solve(args) => solve_cmd(args),
        Command::DumpCircuit { system_file } => read_system(&system_file).map(|(a, _)| {
            print!("{}", build_matvec_operator(&a));
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
