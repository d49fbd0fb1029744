use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use irrot_cli::commands::{self, SpectrumSource};
use irrot_cli::config::parse_convergents;
use irrot_cli::io::write_file;
use irrot_cli::suite::SuiteSizes;
use irrot_cli::{exit, CliError, CliResult, Overrides, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "irrot",
    version,
    about = "Computations in the irrational rotation algebra and its weighted subalgebra"
)]
struct Cli {
    /// Flat key = value file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    theta: Option<f64>,
    /// Convergents of theta as p/q pairs, e.g. "1/1,1/2,2/3".
    #[arg(long, global = true)]
    convergents: Option<String>,
    #[arg(long, global = true)]
    sigma: Option<f64>,
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Truncation half-size, repeatable.
    #[arg(long = "L", global = true)]
    l: Vec<usize>,
    /// Base point, repeatable.
    #[arg(long, global = true, allow_negative_numbers = true)]
    z0: Vec<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Number of terms or powers.
    #[arg(long = "N", global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for report and data files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weighted, l1 and operator norm enclosures of an element.
    Norms { element: PathBuf },
    /// Evidence that u1 - lambda is invertible in B but not in A.
    Witness,
    /// Averaging of an element toward its diagonal part.
    Simplicity { element: PathBuf },
    /// Cyclic vector construction for a function phi and the scaling table.
    Module { phi: PathBuf },
    /// Finite section eigenvalue sweep as CSV.
    Spectrum {
        #[arg(required_unless_present = "almost_mathieu")]
        element: Option<PathBuf>,
        /// Use the almost Mathieu operator with this coupling.
        #[arg(long = "almost-mathieu", conflicts_with = "element", allow_negative_numbers = true)]
        almost_mathieu: Option<f64>,
    },
    /// Seeded run of every property check.
    Suite {
        /// Smaller case counts.
        #[arg(long)]
        quick: bool,
    },
}

fn overrides(cli: &Cli) -> CliResult<Overrides> {
    let convergents = cli
        .convergents
        .as_deref()
        .map(parse_convergents)
        .transpose()
        .map_err(CliError::Option)?;
    Ok(Overrides {
        theta: cli.theta,
        convergents,
        sigma: cli.sigma,
        grid: cli.grid,
        ls: cli.l.clone(),
        z0s: cli.z0.clone(),
        tol: cli.tol,
        epsilon: cli.epsilon,
        lambda: cli.lambda,
        n: cli.n,
        seed: cli.seed,
        out: cli.out.clone(),
    })
}

fn run(cli: Cli) -> CliResult<i32> {
    let base = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let cfg = base.apply(overrides(&cli)?).validated()?;
    let outcome = match &cli.command {
        Command::Norms { element } => commands::norms(&cfg, element)?,
        Command::Witness => commands::witness(&cfg)?,
        Command::Simplicity { element } => commands::simplicity(&cfg, element)?,
        Command::Module { phi } => commands::module(&cfg, phi)?,
        Command::Spectrum {
            element,
            almost_mathieu,
        } => {
            let source = match (element, almost_mathieu) {
                (_, Some(coupling)) => SpectrumSource::AlmostMathieu(*coupling),
                (Some(path), None) => SpectrumSource::File(path),
                (None, None) => {
                    return Err(CliError::Option(
                        "an element file or --almost-mathieu is required".into(),
                    ))
                }
            };
            commands::spectrum(&cfg, source)?
        }
        Command::Suite { quick } => {
            let sizes = if *quick {
                SuiteSizes::quick()
            } else {
                SuiteSizes::full()
            };
            commands::suite(&cfg, sizes)?
        }
    };
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(&outcome.stdout)
        .and_then(|_| stdout.flush())
        .map_err(|e| CliError::io("<stdout>", e))?;
    if let Some(dir) = &cfg.out {
        for (name, bytes) in &outcome.files {
            write_file(dir, name, bytes)?;
        }
    }
    if let Some(message) = outcome.failure {
        eprintln!("irrot: check failed: {message}");
        return Ok(exit::INTERNAL);
    }
    Ok(exit::OK)
}

fn main() {
    let code = run(Cli::parse()).unwrap_or_else(|e| {
        eprintln!("irrot: {e}");
        e.exit_code()
    });
    std::process::exit(code);
}
