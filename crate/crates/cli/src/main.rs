//! `rosenthal`: series values, exact constants, tables, extremal constants,
//! asymptotic bounds and Monte-Carlo checks from the command line.

mod commands;
mod record;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rosenthal::series::{Family, TruncationPolicy};
use rosenthal::{DoubleDouble, Error, Result};

use commands::{EvalParams, McParams};
use record::{emit, Format, OutputRecord};

#[derive(Parser, Debug)]
#[command(name = "rosenthal", version, about = "Schlömilch/Bell series and exact Rosenthal constants")]
struct Cli {
    /// Working precision in significant digits: up to 15 uses binary64, up to 31 double-double.
    #[arg(long, global = true, env = "RC_PRECISION", default_value_t = 30)]
    precision: u32,

    /// Relative truncation tolerance of the series.
    #[arg(long, global = true, default_value_t = 1e-30)]
    rel_tol: f64,

    /// Term budget per series.
    #[arg(long, global = true, value_parser = parse_count, default_value = "10000000")]
    max_terms: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one series (F3, G3, B4, D4, K, L, R).
    Eval(EvalArgs),
    /// Recompute a published table (1, 2 or 3) next to the printed values.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
    },
    /// Extremal constants C3..C12 and the endpoints of the u(t) table.
    Constants,
    /// Sandwich bounds and asymptotic quantities at p >= 700.
    Bounds {
        #[arg(long)]
        p: f64,
    },
    /// Monte-Carlo estimate of E|ξ − η|^p for independent Poisson ξ, η.
    Mc(McArgs),
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0.5)]
    t: f64,
}

#[derive(Args, Debug)]
struct McArgs {
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0.5)]
    lambda: f64,
    #[arg(long, default_value_t = 0.5)]
    mu: f64,
    /// Sample count; accepts forms like 1e6.
    #[arg(long, value_parser = parse_count, default_value = "1000000")]
    samples: u64,
    #[arg(long, env = "RC_SEED", default_value_t = 42)]
    seed: u64,
    /// Check the moment inequality on this many randomly scaled summands instead.
    #[arg(long)]
    rosenthal: Option<usize>,
}

fn parse_count(s: &str) -> std::result::Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let x: f64 = s.parse().map_err(|_| format!("not a count: {s}"))?;
    if x >= 0.0 && x.fract() == 0.0 && x < 1.8e19 {
        Ok(x as u64)
    } else {
        Err(format!("not a non-negative integer: {s}"))
    }
}

enum Width {
    Double,
    DoubleDouble,
}

fn width(digits: u32) -> Result<Width> {
    match digits {
        0..=15 => Ok(Width::Double),
        16..=31 => Ok(Width::DoubleDouble),
        _ => Err(Error::InvalidInput(format!("precision {digits} exceeds the 31 digits of double-double"))),
    }
}

fn run(cli: &Cli) -> Result<Vec<OutputRecord>> {
    let pol = TruncationPolicy { rel_tol: cli.rel_tol, max_terms: cli.max_terms, ..TruncationPolicy::default() };
    pol.validate()?;
    let w = width(cli.precision)?;
    match &cli.command {
        Command::Eval(e) => {
            let params = EvalParams {
                family: e.family,
                p: e.p,
                theta: e.theta,
                beta: e.beta,
                a: e.a,
                lambda: e.lambda,
                gamma: e.gamma,
                t: e.t,
            };
            match w {
                Width::Double => commands::eval::<f64>(&params, &pol),
                Width::DoubleDouble => commands::eval::<DoubleDouble>(&params, &pol),
            }
        }
        Command::Table { which } => match w {
            Width::Double => commands::table::<f64>(*which, &pol),
            Width::DoubleDouble => commands::table::<DoubleDouble>(*which, &pol),
        },
        Command::Constants => commands::constants(&pol),
        Command::Bounds { p } => commands::bounds(*p, &pol),
        Command::Mc(m) => commands::mc(
            &McParams { p: m.p, lambda: m.lambda, mu: m.mu, samples: m.samples, seed: m.seed, rosenthal: m.rosenthal },
            &pol,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(records) => {
            if let Err(e) = emit(&records, cli.format, std::io::stdout().lock()) {
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
                eprintln!("rosenthal: write failed: {e}");
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("rosenthal: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
