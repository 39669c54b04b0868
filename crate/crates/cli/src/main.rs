//! `llab`: enumerate and inspect cyclotomic Littlewood polynomials.
//!
//! Exit codes: 0 success, 1 a check failed, 2 naive cap exceeded,
//! 3 invalid arguments.

mod cache;
mod commands;
mod config;
mod error;
mod input;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use llab_core::conjecture::{Check, Method, NAIVE_HARD_CEILING};

use crate::commands::Outcome;
use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::input::{parse_n_range, read_poly, NRange, PolyInput};

#[derive(Parser)]
#[command(
    name = "llab",
    version,
    about = "Cyclotomic Littlewood polynomials: enumeration, factorization and checks"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Worker threads [default: $LLAB_WORKERS, else the logical core count]
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Largest N enumerated naively without --allow-large
    #[arg(long, global = true, default_value_t = 26, value_parser = clap::value_parser!(u64).range(2..=NAIVE_HARD_CEILING))]
    naive_cap: u64,
    /// Run naive enumeration above --naive-cap (never above 34)
    #[arg(long, global = true)]
    allow_large: bool,
    /// Directory for enumeration caches and verification reports
    #[arg(long, global = true, default_value = "./lc_cache")]
    cache_dir: PathBuf,
    /// Neither read nor write enumeration caches
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    out: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Naive,
    Structured,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Naive => Method::Naive,
            MethodArg::Structured => Method::Structured,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    C12,
    C43,
    T39,
    Bound,
}

impl From<Which> for Check {
    fn from(w: Which) -> Self {
        match w {
            Which::C12 => Check::C12,
            Which::C43 => Check::C43,
            Which::T39 => Check::T39,
            Which::Bound => Check::Bound,
        }
    }
}

#[derive(Args)]
struct Range {
    /// N or an inclusive range such as 2..24
    #[arg(long, value_parser = parse_n_range)]
    n: NRange,
    #[arg(long, value_enum, default_value_t = MethodArg::Naive)]
    method: MethodArg,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PolyArgs {
    /// Sign string, lowest power first, e.g. "++++----++++"
    #[arg(long)]
    poly: Option<String>,
    /// Cyclotomic exponents "d:e,...", e.g. "2:1,4:1,24:1"; prefix "-" for a negative sign
    #[arg(long, allow_hyphen_values = true)]
    factors: Option<String>,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct OptionalPolyArgs {
    /// Sign string, lowest power first
    #[arg(long)]
    poly: Option<String>,
    /// Cyclotomic exponents "d:e,..."
    #[arg(long, allow_hyphen_values = true)]
    factors: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// List canonical cyclotomic ±1 polynomials of length N
    Enumerate(Range),
    /// First defect, chain changes and 2-adic levels of every polynomial
    Table(Range),
    /// Factor a ±1 polynomial into cyclotomic polynomials
    Factor(PolyArgs),
    /// Decompose as ±Φ_p1(±x)Φ_p2(±x^p1)...
    CheckForm11(PolyArgs),
    /// E-transformation path between 1+x+...+x^(N-1) and a polynomial
    Epath(PolyArgs),
    /// L4 norm of a polynomial, or the extremal values u_r
    Norms {
        #[command(flatten)]
        input: OptionalPolyArgs,
        /// Largest r in the u_r table
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(0..=64))]
        max_r: u32,
    },
    /// Run a verifier over N or a range of N
    Verify {
        #[command(flatten)]
        range: Range,
        #[arg(long, value_enum)]
        which: Which,
    },
}

fn poly(args: &PolyArgs) -> Result<PolyInput, CliError> {
    read_poly(args.poly.as_deref(), args.factors.as_deref())
}

fn workers_from_env() -> Result<usize, CliError> {
    match std::env::var("LLAB_WORKERS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(w) if w >= 1 => Ok(w),
            _ => Err(CliError::Invalid(format!(
                "LLAB_WORKERS={v:?} is not a positive integer"
            ))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let g = cli.global;
    let cfg = RunConfig {
        workers: match g.workers {
            Some(w) => w as usize,
            None => workers_from_env()?,
        },
        naive_cap: g.naive_cap,
        allow_large: g.allow_large,
        cache_dir: g.cache_dir,
        use_cache: !g.no_cache,
        format: g.out,
    };
    match cli.command {
        Command::Enumerate(r) => commands::enumerate(r.n, r.method.into(), &cfg),
        Command::Table(r) => commands::table(r.n, r.method.into(), &cfg),
        Command::Factor(p) => commands::factor(poly(&p)?, &cfg),
        Command::CheckForm11(p) => commands::check_tower(poly(&p)?, &cfg),
        Command::Epath(p) => commands::epath(poly(&p)?, &cfg),
        Command::Norms { input, max_r } => {
            let given = match (&input.poly, &input.factors) {
                (None, None) => None,
                (p, f) => Some(read_poly(p.as_deref(), f.as_deref())?),
            };
            commands::norms(given, max_r, &cfg)
        }
        Command::Verify { range, which } => commands::verify(range.n, which.into(), range.method.into(), &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(outcome.body.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("llab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
