//! Command dispatch for the `weilforge` binary.
//!
//! [`run`] is pure apart from reading the environment and, for `torsion
//! --matrix` and `selftest`, the file system. It returns the exit code and
//! both output streams so tests can drive it in-process.

mod commands;
mod report;
mod selftest;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

pub use report::Report;

/// Environment variable overriding the default prime-search bound.
pub const SEARCH_BOUND_VAR: &str = "WEILFORGE_SEARCH_BOUND";
pub const DEFAULT_SEARCH_BOUND: u64 = 1_000_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self { code, stdout: String::new(), stderr }
    }
}

/// Failure of a command: bad input shape (usage) or a library error (domain).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain { code: &'static str, message: String },
}

impl CliError {
    pub(crate) fn domain(code: &'static str, message: impl ToString) -> Self {
        Self::Domain { code, message: message.to_string() }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::domain(e.code(), &e)
            }
        }
    )*};
}

domain_from!(
    weilforge::quadfield::QuadFieldError,
    weilforge::honda_tate::HondaTateError,
    weilforge::forge::ForgeError,
    weilforge::algebra::AlgebraError,
    weilforge::torsion_lab::TorsionError
);

#[derive(Parser, Debug)]
#[command(name = "weilforge", version, about = "Weil numbers, type IV(1,d) abelian varieties and their isogeny predicates")]
pub struct Cli {
    /// Emit the report as JSON with sorted keys.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct WeilArgs {
    /// `x` in `(x + y*sqrt(disc))/2`.
    #[arg(long)]
    pub x: BigInt,
    /// `y` in `(x + y*sqrt(disc))/2`.
    #[arg(long)]
    pub y: BigInt,
    #[arg(long)]
    pub disc: i64,
    #[arg(long)]
    pub p: u64,
    /// Exponent of `q = p^k`.
    #[arg(long)]
    pub k: u32,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    #[arg(long)]
    pub disc: i64,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub j: u64,
}

#[derive(Args, Debug, Clone)]
pub struct AuxArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub p: u64,
    /// Comma-separated primes that must become norms.
    #[arg(long, value_delimiter = ',', required = true)]
    pub targets: Vec<u64>,
    #[arg(long)]
    pub disc: i64,
    /// Search bound; defaults to WEILFORGE_SEARCH_BOUND or 1000000.
    #[arg(long)]
    pub bound: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the abelian variety attached to a Weil number.
    #[command(allow_negative_numbers = true)]
    Classify(WeilArgs),
    /// Build a Weil number whose endomorphism algebra has invariants j/d, (d-j)/d.
    #[command(allow_negative_numbers = true)]
    Forge(AlgebraArgs),
    /// Prime degrees of cyclic ideal isogenies up to a bound.
    #[command(allow_negative_numbers = true)]
    Degrees {
        #[arg(long)]
        disc: i64,
        #[arg(long)]
        bound: u64,
    },
    /// Class group of the field, via reduced forms.
    #[command(allow_negative_numbers = true)]
    Classgroup {
        #[arg(long)]
        disc: i64,
    },
    /// Condition (***): d a prime power, center outside Q(zeta_d), h coprime to d.
    #[command(allow_negative_numbers = true)]
    Star {
        #[arg(long)]
        disc: i64,
        #[arg(long)]
        d: u64,
    },
    /// Order of the group of two-sided ideals of a maximal order.
    #[command(allow_negative_numbers = true)]
    Twosided {
        #[arg(long)]
        disc: i64,
        #[arg(long)]
        d: u64,
    },
    /// Smallest auxiliary prime meeting all five sieve conditions.
    #[command(allow_negative_numbers = true)]
    Auxprime(AuxArgs),
    /// Empirical density of auxiliary primes against the prediction.
    #[command(allow_negative_numbers = true)]
    Density(AuxArgs),
    /// Kernels and decomposition of commuting endomorphisms of (Z/l^N)^rank.
    #[command(allow_negative_numbers = true)]
    Torsion {
        /// Seed of a generated commuting family.
        #[arg(long, conflicts_with = "matrix", requires_all = ["l", "exp", "d"])]
        seed: Option<u64>,
        #[arg(long)]
        l: Option<u64>,
        #[arg(long)]
        exp: Option<u32>,
        /// Number of endomorphisms in the generated family.
        #[arg(long)]
        d: Option<usize>,
        /// File with a header line "n rank count" followed by count blocks of rank rows.
        #[arg(long)]
        matrix: Option<std::path::PathBuf>,
    },
    /// Whether a prime is the norm of an integral element, by three routes.
    #[command(allow_negative_numbers = true)]
    Norm {
        #[arg(long)]
        disc: i64,
        #[arg(long)]
        l: u64,
    },
    /// Decomposition of a rational prime in the field.
    #[command(allow_negative_numbers = true)]
    Split {
        #[arg(long)]
        disc: i64,
        #[arg(long)]
        p: u64,
    },
    /// Canonical generator of the n-th power of the distinguished prime above p.
    #[command(allow_negative_numbers = true)]
    Generator {
        #[arg(long)]
        disc: i64,
        #[arg(long)]
        p: u64,
        /// Defaults to the order of the prime's ideal class.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Whether l = 1 (mod p) fails, blocking a degree-p Galois norm.
    Obstruction {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        l: u64,
    },
    /// Index of Z[pi, conj(pi)] in the maximal order.
    #[command(allow_negative_numbers = true)]
    Conductor(WeilArgs),
    /// Admissible Newton polygon of type IV(1,d) with invariant j/d.
    Polygon {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        j: u64,
    },
    /// Eichler condition for the division algebra.
    #[command(allow_negative_numbers = true)]
    Eichler(AlgebraArgs),
    /// Degree of the ell-torsion field: order of pi modulo the prime ell.
    #[command(name = "torsion-degree", allow_negative_numbers = true)]
    TorsionDegree {
        #[command(flatten)]
        weil: WeilArgs,
        #[arg(long)]
        ell_x: BigInt,
        #[arg(long)]
        ell_y: BigInt,
    },
    /// Run the fixture corpus.
    Selftest {
        /// Fixture directory; defaults to the corpus shipped with the crate.
        #[arg(long)]
        dir: Option<std::path::PathBuf>,
        /// Rewrite the expected outputs instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

/// Parse and execute one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome::fail(EXIT_USAGE, text),
            };
        }
    };
    if let Command::Selftest { dir, bless } = &cli.command {
        return selftest::run_corpus(dir.clone(), *bless);
    }
    match commands::execute(&cli.command) {
        Ok(report) => Outcome::ok(if cli.json { report.to_json() } else { report.to_text() }),
        Err(CliError::Usage(msg)) => Outcome::fail(EXIT_USAGE, format!("usage error: {msg}\n")),
        Err(CliError::Domain { code, message }) => {
            let line = message.replace('\n', " ");
            Outcome::fail(EXIT_DOMAIN, format!("error[{code}]: {line}\n"))
        }
    }
}

pub(crate) fn search_bound(explicit: Option<u64>) -> Result<u64, CliError> {
    if let Some(b) = explicit {
        return Ok(b);
    }
    match std::env::var(SEARCH_BOUND_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEARCH_BOUND_VAR}={v} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_SEARCH_BOUND),
    }
}
