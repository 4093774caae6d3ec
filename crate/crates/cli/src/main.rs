//! Command-line surface: decide constructibility, print nested-radical
//! expressions for cos(2π/n), re-verify them against the reference cosine,
//! dump Gaussian-period tables, and emit non-constructibility certificates.
//!
//! Exit codes: 0 for a positive result, 1 for a negative verdict or a
//! semantic failure (non-constructible n, non-Fermat p, bad root), 2 for
//! usage errors. stdout carries machine-consumable results only; everything
//! diagnostic goes to stderr. Identical invocations print identical bytes.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use radical_gon_core::construct::{
    agree_within, construct, decide, ConstructError, ConstructibilityVerdict,
};
use radical_gon_core::irreducibility::certify_nonconstructible;
use radical_gon_core::periods::{PeriodIndex, PeriodSystem};
use radical_gon_core::radicals::{evaluate, reference_cos, render, RenderFormat};

const DIGITS_ENV: &str = "RADICAL_GON_DIGITS";
const DEFAULT_DIGITS: u32 = 30;

#[derive(Parser)]
#[command(
    name = "radical-gon",
    version,
    about = "Constructibility of regular polygons: exact nested-radical expressions for cos(2π/n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Latex,
    Json,
}

impl From<FormatArg> for RenderFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => RenderFormat::Text,
            FormatArg::Latex => RenderFormat::Latex,
            FormatArg::Json => RenderFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the regular n-gon is constructible
    Decide {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Print a nested-radical expression for cos(2π/n)
    Construct {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Output format
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Verification precision in decimal digits
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        digits: Option<u32>,
    },
    /// Verify construct(n) against the independent reference cosine
    Verify {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Verification precision in decimal digits
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        digits: Option<u32>,
    },
    /// Dump the Gaussian-period table for a Fermat prime p ≥ 5
    Periods {
        p: u64,
        /// Use this primitive root instead of the smallest one
        #[arg(long)]
        root: Option<u64>,
        /// Restrict to one level (level L lists the periods with L+1 index bits)
        #[arg(long)]
        level: Option<i64>,
    },
    /// Print the non-constructibility certificate for n
    Certify {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Decide { n } => cmd_decide(n),
        Command::Construct { n, format, digits } => match resolve_digits(digits) {
            Ok(d) => cmd_construct(n, format.into(), d),
            Err(code) => code,
        },
        Command::Verify { n, digits } => match resolve_digits(digits) {
            Ok(d) => cmd_verify(n, d),
            Err(code) => code,
        },
        Command::Periods { p, root, level } => cmd_periods(p, root, level),
        Command::Certify { n } => cmd_certify(n),
    }
}

/// Explicit flag beats the RADICAL_GON_DIGITS environment override, which
/// beats the built-in default of 30.
fn resolve_digits(flag: Option<u32>) -> Result<u32, ExitCode> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match std::env::var(DIGITS_ENV) {
        Ok(raw) => match raw.parse::<u32>() {
            Ok(d) if d >= 1 => Ok(d),
            _ => {
                eprintln!("error: {DIGITS_ENV} must be a positive integer, got {raw:?}");
                Err(ExitCode::from(2))
            }
        },
        Err(_) => Ok(DEFAULT_DIGITS),
    }
}

fn verdict_line(v: &ConstructibilityVerdict) -> String {
    if v.constructible {
        format!("constructible {} = {}", v.n, v.factorization)
    } else {
        format!(
            "not constructible {} = {} reason {}",
            v.n, v.factorization, v.reason
        )
    }
}

fn cmd_decide(n: u64) -> ExitCode {
    let v = decide(n);
    println!("{}", verdict_line(&v));
    if v.constructible {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Prints the verdict and certificate summary on stderr; used by the
/// commands that require a constructible n.
fn report_not_constructible(v: &ConstructibilityVerdict) -> ExitCode {
    eprintln!("{}", verdict_line(v));
    match certify_nonconstructible(v.n) {
        Ok(cert) => {
            eprintln!(
                "certificate: witness polynomial of degree {} over Eisenstein prime {}, shifted check {}, degree power of two: {}",
                cert.degree,
                cert.eisenstein_prime,
                if cert.shifted_ok { "passed" } else { "failed" },
                cert.degree_power_of_two
            );
        }
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(1)
}

fn cmd_construct(n: u64, format: RenderFormat, digits: u32) -> ExitCode {
    match construct(n) {
        Ok(expr) => {
            let value = match evaluate(&expr, digits) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let reference = reference_cos(n, digits);
            if !agree_within(&value, &reference, digits) {
                eprintln!("error: expression failed verification at {digits} digits");
                return ExitCode::from(1);
            }
            println!("{}", render(&expr, format));
            println!("verified to {digits} digits");
            ExitCode::SUCCESS
        }
        Err(ConstructError::NotConstructible(v)) => report_not_constructible(&v),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn cmd_verify(n: u64, digits: u32) -> ExitCode {
    match construct(n) {
        Ok(expr) => {
            let value = match evaluate(&expr, digits) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let reference = reference_cos(n, digits);
            // certified bound on |expression − cos(2π/n)|
            let bound = value
                .abs_midpoint_diff(&reference)
                .add(value.radius())
                .add(reference.radius());
            let ok = agree_within(&value, &reference, digits);
            println!(
                "{} n={n} digits={digits} bound={bound}",
                if ok { "ok" } else { "fail" }
            );
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(ConstructError::NotConstructible(v)) => report_not_constructible(&v),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn format_support(support: &[u64]) -> String {
    let mut out = String::from("{");
    for (i, r) in support.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&r.to_string());
    }
    out.push('}');
    out
}

fn period_row(sys: &PeriodSystem, idx: &PeriodIndex) -> String {
    let support = sys.support(idx);
    let len = idx.len();
    let level = len as i64 - 1;
    let (sum_ok, alpha_ok) = if len < sys.m() {
        let left = sys.support(&idx.child(0));
        let right = sys.support(&idx.child(1));
        let mut merged: Vec<u64> = left.iter().chain(right.iter()).copied().collect();
        merged.sort_unstable();
        let sum_ok = merged == support;
        let alpha_ok = sys.decompose_product(idx).is_ok();
        (
            if sum_ok { "yes" } else { "no" },
            if alpha_ok { "yes" } else { "no" },
        )
    } else {
        ("-", "-")
    };
    format!(
        "bits={} level={} count={} support={} sum_ok={} alpha_ok={}",
        idx,
        level,
        support.len(),
        format_support(&support),
        sum_ok,
        alpha_ok
    )
}

fn cmd_periods(p: u64, root: Option<u64>, level: Option<i64>) -> ExitCode {
    let sys = match root {
        Some(g) => PeriodSystem::with_root(p, g),
        None => PeriodSystem::new(p),
    };
    let sys = match sys {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let lens: Vec<u32> = match level {
        None => (0..=sys.m()).collect(),
        Some(l) => {
            if l < -1 || (l + 1) as u64 > sys.m() as u64 {
                eprintln!(
                    "error: level must lie between -1 and {} for p = {p}",
                    sys.m() - 1
                );
                return ExitCode::from(2);
            }
            vec![(l + 1) as u32]
        }
    };
    println!("p={} m={} g={}", sys.p(), sys.m(), sys.g());
    for len in lens {
        for idx in sys.indices_at(len) {
            println!("{}", period_row(&sys, &idx));
        }
    }
    ExitCode::SUCCESS
}

fn cmd_certify(n: u64) -> ExitCode {
    match certify_nonconstructible(n) {
        Ok(cert) => {
            println!("{}", cert.to_json());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
