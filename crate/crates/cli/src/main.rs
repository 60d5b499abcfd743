mod output;
mod radius;
mod shearer_cmd;
mod sweep;
mod tables;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use output::{emit, Format};

/// Threshold curves, Shearer sequences and A_alpha spectral radii of trees.
#[derive(Parser)]
#[command(name = "alpha-limit", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Significant digits for printed numbers.
    #[arg(long, global = true, default_value_t = 10)]
    digits: usize,
    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate tau0, tau2 and the tau1 interval.
    Tables {
        #[arg(value_enum, default_value_t = tables::Which::All)]
        which: tables::Which,
        /// Use the reference alpha rows instead of the default grid.
        #[arg(long, conflicts_with = "alphas")]
        paper_rows: bool,
        /// Comma-separated alpha values.
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
    },
    /// Build the Shearer sequence for (alpha, lambda) and report convergence.
    Shearer(ShearerArgs),
    /// Classify lambda > 2 into covered and uncovered segments over an alpha grid.
    Sweep {
        #[arg(long, default_value_t = 0.0)]
        start: f64,
        #[arg(long, default_value_t = 0.9)]
        stop: f64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Comma-separated alpha values; overrides the grid.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["start", "stop", "count"])]
        alphas: Option<Vec<f64>>,
    },
    /// Run built-in consistency checks.
    Verify {
        #[arg(value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
    },
    /// Spectral radius of A_alpha for a tree given as an edge list.
    SpectralRadius {
        /// Edge list file: one `u v` pair per line, `#` comments.
        #[arg(long)]
        edges: PathBuf,
        #[arg(long)]
        alpha: f64,
        /// Bisection stops once the bracket is narrower than this.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Also print the diagonalization of A_alpha + x I.
        #[arg(long, allow_hyphen_values = true)]
        diag: Option<f64>,
    },
}

#[derive(Args)]
struct ShearerArgs {
    #[arg(short, long)]
    alpha: f64,
    #[arg(short, long, allow_hyphen_values = true)]
    lambda: f64,
    #[arg(short, long, default_value_t = 100)]
    k: usize,
    /// Compute even when (alpha, lambda) is outside every covered regime.
    #[arg(long)]
    exploratory: bool,
    /// Comma-separated spine lengths for a convergence table.
    #[arg(long, value_delimiter = ',')]
    samples: Option<Vec<usize>>,
}

fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var("ALPHA_LIMIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .with_context(|| format!("ALPHA_LIMIT_THREADS = {v:?} is not a thread count"))?;
    if n == 0 {
        bail!("ALPHA_LIMIT_THREADS must be at least 1");
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring the thread pool")
}

fn run(cli: Cli) -> Result<bool> {
    init_threads()?;
    let out = cli.output.as_deref();
    let (fmt, digits) = (cli.format, cli.digits);
    match cli.command {
        Command::Tables {
            which,
            paper_rows,
            alphas,
        } => {
            let alphas = match (paper_rows, alphas) {
                (true, _) => which.reference_alphas(),
                (false, Some(a)) => a,
                (false, None) => tables::DEFAULT_ALPHAS.to_vec(),
            };
            emit(out, &tables::render(which, &alphas, fmt, digits))?;
        }
        Command::Shearer(a) => {
            let samples = a.samples.unwrap_or_default();
            let r = shearer_cmd::run(a.alpha, a.lambda, a.k, a.exploratory, &samples)?;
            emit(out, &shearer_cmd::render(&r, fmt, digits))?;
        }
        Command::Sweep {
            start,
            stop,
            count,
            alphas,
        } => {
            let alphas = match alphas {
                Some(a) => a,
                None => sweep::grid(start, stop, count)?,
            };
            emit(out, &sweep::render(&sweep::profiles(&alphas)?, fmt, digits))?;
        }
        Command::Verify { suite } => {
            let checks = verify::run(suite);
            emit(out, &verify::render(&checks, fmt))?;
            return Ok(checks.iter().all(|c| c.ok));
        }
        Command::SpectralRadius {
            edges,
            alpha,
            tol,
            diag,
        } => {
            let r = radius::run(&edges, alpha, tol, diag)?;
            emit(out, &radius::render(&r, fmt, digits))?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
