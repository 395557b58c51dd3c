//! Command-line interface.
//!
//! Commands: `validate`, `gram`, `decompose`, `verify`, `oracle`.
//! Exit codes: 0 success, 2 validation failure, 3 I/O or parse error,
//! 4 truncated search.

use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::exact_linalg::IntMatrix;
use crate::fusion_data::TwoCategoryData;
use crate::io;
use crate::solver::{
    self, brute_force_decompositions, search_all, DecompositionProblem, PsdMode, SolverConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_TRUNCATED: i32 = 4;

#[derive(Parser)]
#[command(
    name = "center-scope",
    about = "Count simple objects in Drinfeld centers by enumerating algebraic \
             decompositions of the induction Gram matrix",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PsdModeArg {
    Numeric,
    Exact,
}

impl From<PsdModeArg> for PsdMode {
    fn from(m: PsdModeArg) -> Self {
        match m {
            PsdModeArg::Numeric => PsdMode::Numeric,
            PsdModeArg::Exact => PsdMode::Exact,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check every structural invariant of a fusion-data file.
    Validate { input: PathBuf },
    /// Build the Gram matrix, dimension vectors, and global dimension, and
    /// write them as a problem file for later stages.
    Gram {
        input: PathBuf,
        /// Output path (default: alongside the input with `.problem.json`).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate all algebraic decompositions.
    Decompose {
        /// Fusion data or a direct problem file.
        input: PathBuf,
        /// Results path (default: alongside the input with `.results.json`).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Positive-semidefiniteness check for search residuals.
        #[arg(long, value_enum, default_value = "numeric")]
        psd_mode: PsdModeArg,
        /// Acceptance threshold for the least eigenvalue (numeric mode).
        #[arg(long, default_value_t = -0.001, allow_negative_numbers = true)]
        eig_tol: f64,
        /// Stop after this many solutions (0 exits immediately).
        #[arg(long)]
        max_solutions: Option<usize>,
        /// Prune search paths longer than this many columns.
        #[arg(long)]
        max_columns: Option<usize>,
        /// Worker threads (default: CENTER_SCOPE_THREADS or 1).
        #[arg(long)]
        threads: Option<usize>,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        timeout: Option<f64>,
        /// Explicit comma-separated row selection for the reduction minor.
        #[arg(long, value_delimiter = ',')]
        minor_subset: Option<Vec<usize>>,
        /// Reject columns whose dot with some dimension vector vanishes.
        #[arg(long)]
        forbid_zero_dots: bool,
        /// Search the full matrix directly instead of the rank reduction.
        #[arg(long)]
        no_reduction: bool,
    },
    /// Check a candidate decomposition against a problem.
    Verify {
        problem: PathBuf,
        /// `{"A": [[...]]}` or a bare row-major integer array.
        candidate: PathBuf,
        #[arg(long)]
        forbid_zero_dots: bool,
    },
    /// Run the small-instance brute-force oracle on a problem's matrix.
    Oracle {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) | Error::Parse(_) | Error::ShapeMismatch(_) => EXIT_PARSE,
                _ => EXIT_VALIDATION,
            }
        }
    }
}

fn dispatch(cli: Cli) -> crate::Result<i32> {
    match cli.command {
        Command::Validate { input } => cmd_validate(&input),
        Command::Gram { input, output } => cmd_gram(&input, output.as_deref()),
        Command::Decompose {
            input,
            output,
            psd_mode,
            eig_tol,
            max_solutions,
            max_columns,
            threads,
            timeout,
            minor_subset,
            forbid_zero_dots,
            no_reduction,
        } => {
            let cfg = SolverConfig {
                psd_mode: psd_mode.into(),
                eig_tolerance: eig_tol,
                max_solutions,
                max_columns,
                time_limit: timeout.map(Duration::from_secs_f64),
                thread_count: threads.unwrap_or_else(default_threads),
                forbid_zero_dots,
                use_reduction: !no_reduction,
                minor_override: minor_subset,
            };
            cmd_decompose(&input, output.as_deref(), &cfg)
        }
        Command::Verify { problem, candidate, forbid_zero_dots } => {
            cmd_verify(&problem, &candidate, forbid_zero_dots)
        }
        Command::Oracle { input, output } => cmd_oracle(&input, output.as_deref()),
    }
}

fn default_threads() -> usize {
    std::env::var("CENTER_SCOPE_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1)
}

fn load_two_category(path: &Path) -> crate::Result<TwoCategoryData> {
    match io::read_input(path)? {
        io::InputFile::Fusion(f) => io::to_two_category(&f),
        io::InputFile::Problem(_) => Err(Error::invalid(
            "this command needs fusion data, not a direct problem file",
        )),
    }
}

fn load_problem(path: &Path) -> crate::Result<(DecompositionProblem, bool)> {
    match io::read_input(path)? {
        io::InputFile::Fusion(f) => {
            let data = io::to_two_category(&f)?;
            let report = data.validate();
            if !report.is_pass() {
                for v in &report.violations {
                    eprintln!("violation: {v}");
                }
                return Err(Error::InconsistentData(
                    "fusion data failed validation".into(),
                ));
            }
            Ok((data.build_problem()?, true))
        }
        io::InputFile::Problem(f) => Ok((io::problem_from_file(&f)?, false)),
    }
}

fn cmd_validate(input: &Path) -> crate::Result<i32> {
    let data = match load_two_category(input) {
        Ok(d) => d,
        Err(e @ (Error::Io(_) | Error::Parse(_) | Error::ShapeMismatch(_))) => return Err(e),
        Err(e) => {
            // structurally unbuildable data is a validation failure, not a crash
            println!("violation: {e}");
            println!("FAIL");
            return Ok(EXIT_VALIDATION);
        }
    };
    let report = data.validate();
    print!("{report}");
    if report.is_pass() {
        println!("OK: {} object(s), {} simples total", data.objects().len(), data.total_simples());
        Ok(EXIT_OK)
    } else {
        println!("FAIL");
        Ok(EXIT_VALIDATION)
    }
}

fn cmd_gram(input: &Path, output: Option<&Path>) -> crate::Result<i32> {
    let data = load_two_category(input)?;
    let report = data.validate();
    if !report.is_pass() {
        print!("{report}");
        return Ok(EXIT_VALIDATION);
    }
    let problem = data.build_problem()?;
    let out_path = output
        .map(|p| p.to_path_buf())
        .unwrap_or_else(|| input.with_extension("problem.json"));
    io::write_json(&out_path, &io::problem_to_file(&problem))?;
    println!("Gram matrix ({n} x {n}):", n = problem.gram().rows());
    print!("{}", problem.gram());
    println!("global dimension D = {}", problem.global_dim());
    println!("wrote {}", out_path.display());
    Ok(EXIT_OK)
}

fn cmd_decompose(input: &Path, output: Option<&Path>, cfg: &SolverConfig) -> crate::Result<i32> {
    let (problem, _) = load_problem(input)?;
    let outcome = search_all(&problem, cfg)?;
    let out_path = output
        .map(|p| p.to_path_buf())
        .unwrap_or_else(|| input.with_extension("results.json"));
    io::write_json(&out_path, &io::ResultsFile::from_outcome(&outcome))?;
    for (i, res) in outcome.results.iter().enumerate() {
        println!("solution {} ({} columns):", i + 1, res.column_count);
        if res.blocks.len() > 1 {
            for (b, block) in res.blocks.iter().enumerate() {
                println!("  block {}:", b + 1);
                print!("{block}");
            }
        } else {
            print!("{}", res.a);
        }
    }
    let columns: Vec<usize> = outcome.results.iter().map(|r| r.column_count).collect();
    println!(
        "{} solution(s), columns {:?}, {} nodes, {} candidates, {:.3}s{}",
        outcome.results.len(),
        columns,
        outcome.stats.nodes,
        outcome.stats.candidates,
        outcome.stats.wall.as_secs_f64(),
        if outcome.truncated { " [TRUNCATED]" } else { "" }
    );
    println!("wrote {}", out_path.display());
    Ok(if outcome.truncated { EXIT_TRUNCATED } else { EXIT_OK })
}

fn cmd_verify(problem: &Path, candidate: &Path, forbid_zero_dots: bool) -> crate::Result<i32> {
    let (problem, _) = load_problem(problem)?;
    let a: IntMatrix = io::read_candidate(candidate)?;
    if a.rows() != problem.gram().rows() {
        return Err(Error::ShapeMismatch(format!(
            "candidate has {} rows, problem has {}",
            a.rows(),
            problem.gram().rows()
        )));
    }
    let diag = solver::verify_diagnostics(&a, &problem, forbid_zero_dots)?;
    if diag.is_pass() {
        println!("true");
        Ok(EXIT_OK)
    } else {
        println!("false");
        if let Some(msg) = &diag.product_mismatch {
            println!("{msg}");
        }
        for (j, msg) in &diag.column_issues {
            println!("column {j}: {msg}");
        }
        Ok(EXIT_VALIDATION)
    }
}

fn cmd_oracle(input: &Path, output: Option<&Path>) -> crate::Result<i32> {
    let (problem, _) = load_problem(input)?;
    let sols = brute_force_decompositions(problem.gram())?;
    let listing: Vec<Vec<Vec<i64>>> = sols.clone();
    if let Some(out) = output {
        io::write_json(&out.to_path_buf(), &listing)?;
    }
    println!("{} decomposition(s)", sols.len());
    for (i, sol) in sols.iter().enumerate() {
        println!("  {}: {} column(s) {:?}", i + 1, sol.len(), sol);
    }
    Ok(EXIT_OK)
}
