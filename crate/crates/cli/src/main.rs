use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "kchow", version, about = "Chow rings of genus-0 moduli spaces with colliding markings")]
pub struct Cli {
    /// Complex as JSON: {"labels", "facets"} or {"labels", "weights"}.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Refuse complexes on more labels than this.
    #[arg(long, default_value_t = 8, global = true)]
    pub max_labels: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the complex and report whether it is at least triparted.
    Validate,
    /// List the boundary divisors (ring generators).
    Divisors,
    /// Enumerate strata and the covering relations between them.
    Strata {
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        codim: Option<usize>,
        #[arg(long)]
        all: bool,
    },
    /// List the disjointness and WDVV relations.
    Ring,
    /// Graded ranks and torsion.
    Betti,
    /// Product of two ring elements, in normal form.
    Multiply { a: String, b: String },
    /// Class of a stratum given as graph JSON (or a path to it).
    StratumClass { graph: String },
    /// The WDVV relation for four distinct labels.
    Wdvv { i: String, j: String, k: String, l: String },
    /// Image of the Keel divisor D_I.
    Pushforward {
        #[arg(required = true, num_args = 1..)]
        labels: Vec<String>,
    },
    /// Point count over F_q, or the interpolated polynomial against the ranks.
    Pointcount {
        #[arg(long)]
        q: Option<u64>,
    },
    /// Oracle comparison and brute-force cross-checks.
    Selftest {
        /// Largest label count for the exponential checks.
        #[arg(long, default_value_t = 5)]
        brute_max_labels: usize,
    },
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Validation(String),
    SizeGuard(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Validation(_) => 2,
            Failure::SizeGuard(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Validation(m) | Failure::SizeGuard(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<kchow::Error> for Failure {
    fn from(e: kchow::Error) -> Self {
        match e {
            kchow::Error::Inconsistency(_) => Failure::Internal(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

/// What a command printed, and whether it still failed.
pub struct Outcome {
    pub stdout: String,
    pub failure: Option<Failure>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = configure_threads(cli.threads).and_then(|()| commands::run(&cli));
    let (stdout, failure) = match result {
        Ok(o) => (o.stdout, o.failure),
        Err(f) => (String::new(), Some(f)),
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(stdout.as_bytes());
    let _ = out.flush();
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn configure_threads(threads: Option<usize>) -> Result<(), Failure> {
    let Some(n) = threads else { return Ok(()) };
    if n == 0 {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))
}
