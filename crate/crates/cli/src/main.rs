mod commands;
mod report;

use std::process::ExitCode;

use biquad::arith::{ArithError, Limits};
use biquad::decomp::DecompError;
use biquad::local::{LocalError, Place};
use biquad::tower::TowerError;
use clap::{Parser, Subcommand};
use thiserror::Error;

use report::{Output, Status};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error("{0}")]
    Usage(String),
}

/// Square power classes of biquadratic fields Q(√a1, √a2).
#[derive(Parser)]
#[command(name = "biquad", version, about)]
struct Cli {
    /// Emit a single JSON document instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Local Hilbert symbols (a,b)_v and the ramification set of (a,b).
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: i128,
        #[arg(allow_hyphen_values = true)]
        b: i128,
        /// A single place: `inf` or a prime.
        #[arg(long)]
        place: Option<Place>,
    },
    /// Summand types and support-relative ranks for J(K).
    Analyze {
        #[arg(allow_hyphen_values = true)]
        a1: i128,
        #[arg(allow_hyphen_values = true)]
        a2: i128,
        /// Primes adjoined to -1 and the primes of a1, a2.
        #[arg(long, value_delimiter = ',')]
        support: Vec<u64>,
        /// The exceptional input ε, if known.
        #[arg(long)]
        epsilon: Option<u8>,
        /// Coordinate bound for norm witnesses.
        #[arg(long, default_value_t = 2)]
        bound: u32,
        /// Coordinate bound for the ε = 0 search; skipped when absent.
        #[arg(long)]
        eps_bound: Option<u32>,
    },
    /// Solvability of a central embedding problem.
    Embed {
        /// Comma-separated generators, e.g. `7,-5`.
        #[arg(allow_hyphen_values = true, value_parser = parse_int_list)]
        gens: IntList,
        /// Upper-triangular coefficients c11,c12,..,c1n,c22,..,cnn.
        #[arg(long, value_delimiter = ',', required = true)]
        c: Vec<u8>,
    },
    /// Smallest prime meeting congruence conditions.
    FindPrime {
        /// `m:r1,r2,...`, repeatable.
        #[arg(long = "mod", value_parser = parse_constraint, required = true)]
        constraints: Vec<(u64, Vec<i64>)>,
        #[arg(long, default_value_t = 2)]
        min: u64,
        #[arg(long, value_delimiter = ',')]
        exclude: Vec<u64>,
    },
    /// Whether (a1,f) + (a2,g) lies in S.
    Diagram {
        #[arg(allow_hyphen_values = true)]
        a1: i128,
        #[arg(allow_hyphen_values = true)]
        a2: i128,
        #[arg(allow_hyphen_values = true)]
        f: i128,
        #[arg(allow_hyphen_values = true)]
        g: i128,
    },
    /// Membership of a class in the norm group, with a witness.
    NormSearch {
        #[arg(allow_hyphen_values = true)]
        a1: i128,
        #[arg(allow_hyphen_values = true)]
        a2: i128,
        #[arg(long, allow_hyphen_values = true)]
        target: i128,
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
}

#[derive(Clone, Debug)]
struct IntList(Vec<i128>);

fn parse_int_list(s: &str) -> Result<IntList, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i128>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(IntList)
}

fn parse_constraint(s: &str) -> Result<(u64, Vec<i64>), String> {
    let (m, rs) = s
        .split_once(':')
        .ok_or_else(|| format!("expected m:r1,r2,..., got {s:?}"))?;
    let m = m
        .trim()
        .parse::<u64>()
        .map_err(|e| format!("modulus {m:?}: {e}"))?;
    let rs = rs
        .split(',')
        .map(|r| {
            r.trim()
                .parse::<i64>()
                .map_err(|e| format!("residue {r:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((m, rs))
}

fn run(cli: Cli, echo: String) -> Result<Output, CliError> {
    let limits = Limits::from_env();
    match cli.command {
        Command::Hilbert { a, b, place } => commands::hilbert(echo, a, b, place, &limits),
        Command::Analyze {
            a1,
            a2,
            support,
            epsilon,
            bound,
            eps_bound,
        } => commands::analyze(
            echo,
            commands::AnalyzeArgs {
                a1,
                a2,
                support,
                epsilon,
                bound,
                eps_bound,
            },
            &limits,
        ),
        Command::Embed { gens, c } => commands::embed(echo, &gens.0, &c, &limits),
        Command::FindPrime {
            constraints,
            min,
            exclude,
        } => commands::find_prime(echo, &constraints, min, &exclude, &limits),
        Command::Diagram { a1, a2, f, g } => commands::diagram(echo, a1, a2, f, g, &limits),
        Command::NormSearch {
            a1,
            a2,
            target,
            bound,
        } => commands::norm_search(echo, a1, a2, target, bound, &limits),
    }
}

fn main() -> ExitCode {
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli, echo) {
        Ok(out) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.report).expect("reports serialize")
                );
            } else {
                print!("{}", out.text);
            }
            match out.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Empty => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
