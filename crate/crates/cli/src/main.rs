//! `eulersum` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 mathematical domain error (pole, divergent series).

mod render;

use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use eulersum::coefficients::CoefficientTable;
use eulersum::{
    verify, Case, CoefficientCache, Engine, Error, Family, Order, PowerTerm, Rational,
    TailSumRequest,
};

use crate::render::{Format, Rendered};

#[derive(Debug, Parser)]
#[command(
    name = "eulersum",
    version,
    about = "Euler's differential summation formulas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Fractional digits in decimal output.
    #[arg(long, global = true, default_value_t = 30,
          value_parser = clap::value_parser!(u32).range(1..))]
    digits: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Index where the explicit head sum stops and the accelerated tail starts.
    #[arg(long, global = true, default_value_t = 10,
          value_parser = clap::value_parser!(u64).range(1..))]
    split: u64,

    /// Derivative terms to keep: a positive integer or "auto".
    #[arg(long, global = true, default_value = "auto")]
    orders: OrderArg,

    /// Upper limit on the number of derivative terms.
    #[arg(long = "max-order", global = true, default_value_t = 16,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_order: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a coefficient table or the per-order engine weights.
    Coeffs {
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Accelerated tail of Σ 1/k^n (or its alternating form) from a start index.
    Sum {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        alternating: bool,
        /// First index of the tail; defaults to --split.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        from: Option<u64>,
    },
    /// ζ(n) = Σ 1/k^n as head sum plus accelerated tail.
    Zeta { n: u32 },
    /// η(n) = Σ (-1)^(k+1)/k^n as head sum plus accelerated tail.
    Eta { n: u32 },
    /// Run the cross-check battery over the coefficient tables.
    Verify {
        #[arg(long, default_value_t = 10,
              value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        /// Perturb coth entry K before checking (exercises the failure path).
        #[arg(long, hide = true)]
        tamper: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Coth,
    Tanh,
    Weights,
}

#[derive(Debug, Clone, Copy)]
struct OrderArg(Order);

impl FromStr for OrderArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(OrderArg(Order::Auto));
        }
        match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(OrderArg(Order::Fixed(k))),
            _ => Err(format!(
                "expected a positive integer or \"auto\", got {s:?}"
            )),
        }
    }
}

enum Failure {
    Verification(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(first)) => {
            eprintln!("verification failed: {first}");
            ExitCode::from(1)
        }
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            if e.is_domain_error() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<(), Failure> {
    let digits = cli.digits as usize;
    let cache = CoefficientCache::global();
    let engine = Engine::with_cache(cache).with_cap(cli.max_order as usize)?;
    let order = cli.orders.0;

    let rendered = match &cli.command {
        Command::Coeffs { family, count } => {
            let count = *count as usize;
            match family {
                FamilyArg::Coth => render::table(&cache.table(Family::Coth, count), digits),
                FamilyArg::Tanh => render::table(&cache.table(Family::Tanh, count), digits),
                FamilyArg::Weights => render::weights(&cache.weights(count), digits),
            }
        }
        Command::Sum {
            n,
            alternating,
            from,
        } => {
            let term = PowerTerm::new(*n)?;
            let case = if *alternating {
                Case::Alternating
            } else {
                Case::SameSign
            };
            let start = from.unwrap_or(cli.split);
            let res =
                engine.tail_sum::<Rational>(&TailSumRequest::new(&term, start, case, order))?;
            let sign = if *alternating { "±" } else { "+" };
            let title = format!("tail Σ {sign}1/k^{n} for k >= {start}");
            warn_if_capped(res.capped, engine.cap());
            render::tail(&title, &res, digits)
        }
        Command::Zeta { n } => {
            let sum = engine.zeta(*n, cli.split, order)?;
            warn_if_capped(sum.tail.capped, engine.cap());
            render::series(&format!("zeta({n}), split x = {}", cli.split), &sum, digits)
        }
        Command::Eta { n } => {
            let sum = engine.eta(*n, cli.split, order)?;
            warn_if_capped(sum.tail.capped, engine.cap());
            render::series(&format!("eta({n}), split x = {}", cli.split), &sum, digits)
        }
        Command::Verify { depth, tamper } => {
            let depth = *depth as usize;
            let mut coth = cache.table(Family::Coth, depth);
            let tanh = cache.table(Family::Tanh, depth + 1);
            if let Some(k) = tamper {
                coth = tampered(&coth, *k);
            }
            let report = verify::run_with_tables(depth, &coth, &tanh);
            let rendered = render::report(&report);
            emit(out, &rendered, cli.format);
            return match report.first_failure() {
                None => Ok(()),
                Some(c) => Err(Failure::Verification(c.name.clone())),
            };
        }
    };
    emit(out, &rendered, cli.format);
    Ok(())
}

fn tampered(table: &CoefficientTable, k: usize) -> CoefficientTable {
    let mut values = table.values().to_vec();
    if let Some(v) = k.checked_sub(1).and_then(|i| values.get_mut(i)) {
        *v += Rational::new(1.into(), 1_000_000.into());
    }
    CoefficientTable::from_values(table.family(), values)
}

fn warn_if_capped(capped: bool, cap: usize) {
    if capped {
        eprintln!("note: order limited by --max-order {cap}; terms were still decreasing");
    }
}

fn emit(out: &mut impl Write, rendered: &Rendered, format: Format) {
    let text = rendered.to_format(format);
    // A closed pipe is not worth a panic.
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}
