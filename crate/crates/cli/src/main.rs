//! `covforge`: Molien series, integrity bases, Hironaka enumeration and the
//! agreement suite from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 numerator count mismatch.

mod commands;
mod config;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{init_threads, Failure};

#[derive(Parser)]
#[command(name = "covforge", version, about = "Symmetry-adapted covariant polynomials for finite point groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Molien generating function and its Taylor coefficients.
    Molien(MolienArgs),
    /// Build an integrity basis.
    Basis(BasisArgs),
    /// List Hironaka products `g_k·∏f_j^e_j` up to a degree.
    Enumerate(EnumerateArgs),
    /// Check oracle, Molien and enumeration counts against each other.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
pub struct Job {
    /// `ci`, `td`, or a JSON group file.
    #[arg(long, default_value = "td")]
    pub group: String,
    /// Comma-separated irreps of the initial representation. Defaults to
    /// `A1,E,F2,F2` for td and `A2,A2,A2` for ci.
    #[arg(long)]
    pub initial: Option<String>,
    /// Final irrep label; the trivial irrep when omitted.
    #[arg(long = "final")]
    pub final_irrep: Option<String>,
}

#[derive(Args)]
pub struct MolienArgs {
    #[command(flatten)]
    pub job: Job,
    /// Highest Taylor coefficient printed.
    #[arg(long, visible_alias = "dmax", default_value_t = 10)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args)]
pub struct BasisArgs {
    #[command(flatten)]
    pub job: Job,
    /// Output file; `-` writes the basis to stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args)]
pub struct EnumerateArgs {
    /// `ci`, `td`, or a JSON group file. Taken from the basis file when
    /// `--basis` is given, else td.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub initial: Option<String>,
    #[arg(long = "final")]
    pub final_irrep: Option<String>,
    /// Previously written basis (JSON) instead of building one.
    #[arg(long, conflicts_with_all = ["initial", "final_irrep"])]
    pub basis: Option<PathBuf>,
    /// Partner name or 1-based index.
    #[arg(long)]
    pub partner: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub dmax: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub job: Job,
    #[arg(long, default_value_t = 4)]
    pub dmax: u32,
    /// Perturb one coupling tensor, chosen by this seed.
    #[arg(long, hide = true)]
    pub inject_cg_fault: Option<u64>,
}

fn run(cli: &Cli) -> Result<(), Failure> {
    init_threads()?;
    let mut stdout = std::io::stdout().lock();
    let mut emit = |s: &str| {
        let _ = stdout.write_all(s.as_bytes());
    };
    match &cli.command {
        Command::Molien(a) => emit(&commands::molien(a)?),
        Command::Basis(a) => emit(&commands::basis(a)?),
        Command::Enumerate(a) => emit(&commands::enumerate(a)?),
        Command::Verify(a) => {
            let (report, failure) = commands::verify(a)?;
            emit(&report);
            if let Some(f) = failure {
                return Err(Failure::Verify(f));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("covforge: {f}");
            ExitCode::from(f.code() as u8)
        }
    }
}
