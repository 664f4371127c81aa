//! `cyclotan`: exact cyclotomic-basis computations from the command line.
//!
//! Exit status is 0 on success, 1 when a check finds a violation, and 2 on
//! usage errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cyclotan::{Rational, Rho};
use cyclotan_cli::{report, Format};

#[derive(Debug, Parser)]
#[command(name = "cyclotan", version, about, propagate_version = true)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for `sweep` and `verify-basis`.
    #[arg(long, default_value_t = 1, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,

    /// Binary precision for numeric evaluation.
    #[arg(long, default_value_t = 192, global = true, value_parser = clap::value_parser!(u32).range(64..))]
    bits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
#[command(allow_negative_numbers = true)]
enum Command {
    /// List the basis D_n of Q(ω_n).
    Basis {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Decompose Re(ω_n^t) and i·Im(ω_n^t) over D_n.
    Decompose {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(allow_negative_numbers = true)]
        t: i64,
    },
    /// Classify sin(kπρ)/sin(mπρ) exactly.
    SinRatio {
        /// Rotation number p/q with 0 < p/q < 1.
        #[arg(value_parser = parse_rho)]
        rho: Rho,
        #[arg(allow_negative_numbers = true)]
        k: i64,
        #[arg(allow_negative_numbers = true)]
        m: i64,
    },
    /// Decide n·tan(πρ) = tan(nπρ) exactly.
    Check {
        #[arg(value_parser = parse_rho)]
        rho: Rho,
        #[arg(value_parser = clap::value_parser!(i64).range(2..))]
        n: i64,
    },
    /// Check every p/q with 3 <= q <= qmax against every 2 <= n <= nmax.
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        qmax: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        nmax: u64,
    },
    /// Cross-check the basis decomposition against the power-basis oracle
    /// and numeric evaluation for every conductor up to nmax.
    VerifyBasis {
        #[arg(long, default_value_t = 150, value_parser = clap::value_parser!(u64).range(1..))]
        nmax: u64,
    },
    /// Bisect for a real root of n·tan(πρ) = tan(nπρ) on [a, b].
    FindRoot {
        #[arg(value_parser = clap::value_parser!(i64).range(2..))]
        n: i64,
        /// Left end, as p/q or an exact decimal.
        #[arg(value_parser = parse_real)]
        a: Rational,
        /// Right end, as p/q or an exact decimal.
        #[arg(value_parser = parse_real)]
        b: Rational,
    },
}

fn parse_rho(s: &str) -> Result<Rho, String> {
    s.parse().map_err(|e: cyclotan::Error| e.to_string())
}

fn parse_real(s: &str) -> Result<Rational, String> {
    let parsed = if s.contains('/') {
        s.parse()
    } else {
        Rational::from_decimal_str(s)
    };
    parsed.map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs as usize;
    let result = match cli.command {
        Command::Basis { n } => report::basis(n),
        Command::Decompose { n, t } => report::decompose(n, t),
        Command::SinRatio { rho, k, m } => report::sin_ratio(rho, k, m),
        Command::Check { rho, n } => report::check(rho, n),
        Command::Sweep { qmax, nmax } => report::sweep(qmax, nmax, jobs),
        Command::VerifyBasis { nmax } => report::verify_basis(nmax, cli.bits, jobs),
        Command::FindRoot { n, a, b } => report::find_root(n, a, b, cli.bits),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.render(cli.format));
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
