//! `segrekit`: Segre varieties, essential finiteness, minimality, Levi
//! signatures and holomorphic correspondences of real-algebraic CR
//! submanifolds. Writes one JSON report to stdout and a human summary to
//! stderr.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use segrekit_core::{Limits, DEFAULT_SEED};
use serde_json::json;

use commands::Ctx;
use report::{digest, status_name, LimitsEcho, Report, SCHEMA};

#[derive(Parser, Debug)]
#[command(name = "segrekit", version, about = "Segre varieties and holomorphic correspondences of CR manifolds")]
struct Cli {
    /// Seed for every sampled point.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest total degree allowed in a Groebner basis computation.
    #[arg(long, global = true, env = "SEGREKIT_MAX_DEGREE", default_value_t = Limits::default().max_degree)]
    max_degree: u32,
    /// Largest working basis allowed in a Groebner basis computation.
    #[arg(long, global = true, env = "SEGREKIT_MAX_BASIS", default_value_t = Limits::default().max_basis)]
    max_basis: usize,
    /// Include wall-clock timings in the report (makes it nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Segre variety Q_w at a point, or the family with ~w symbolic.
    Segre {
        manifold: String,
        /// Comma-separated coordinates, e.g. `1,0` or `3/5,4/5*i`.
        #[arg(allow_hyphen_values = true, required_unless_present = "symbolic")]
        point: Option<String>,
        #[arg(long, conflicts_with = "point")]
        symbolic: bool,
    },
    /// Essential finiteness at a point: dimension and degree of the inversion set.
    Essfin {
        manifold: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Minimality at a point through the Segre sets.
    Minimal {
        manifold: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
        /// Largest Segre set to compute; defaults to n + 2.
        #[arg(long)]
        jmax: Option<usize>,
    },
    /// Signature of the Levi form at a point in a conormal direction.
    Levi {
        manifold: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
        #[arg(allow_hyphen_values = true)]
        conormal: String,
    },
    /// Correspondence generated by a map between two manifolds.
    Correspond {
        source: String,
        target: String,
        map: String,
        /// Source point whose fiber to compute; may be repeated.
        #[arg(long, allow_hyphen_values = true)]
        fiber: Vec<String>,
        /// Sampled source points (and Segre points per source point) for the invariance check.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Run the catalog suite for one entry or all of them.
    Suite {
        #[arg(required_unless_present = "all")]
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
    },
}

fn main() -> ExitCode {
    let command: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let limits = Limits {
        max_degree: cli.max_degree,
        max_basis: cli.max_basis,
    };
    let mut ctx = Ctx::new(limits, cli.seed);
    let start = Instant::now();
    let outcome = commands::run(&cli.command, &mut ctx);
    let elapsed = start.elapsed();

    let (code, error, out) = match outcome {
        Ok(out) => (out.code, None, out),
        Err(f) => (f.code, Some(f.message), Default::default()),
    };
    for line in &out.human {
        eprintln!("{line}");
    }
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(e) = &error {
        eprintln!("error: {e}");
    }
    eprintln!("{} in {:.3} s", status_name(code), elapsed.as_secs_f64());

    let report = Report {
        schema: SCHEMA,
        inputs: digest(&command, &ctx.files),
        command,
        seed: cli.seed,
        limits: LimitsEcho {
            max_degree: limits.max_degree,
            max_basis: limits.max_basis,
        },
        status: status_name(code),
        exit_code: code,
        error,
        results: out.results,
        excluded: out.excluded,
        warnings: out.warnings,
        timings: cli.timings.then(|| json!({ "total_ms": elapsed.as_millis() as u64 })),
    };
    match serde_json::to_string_pretty(&report) {
        Ok(s) => {
            let _ = writeln!(std::io::stdout().lock(), "{s}");
        }
        Err(e) => {
            eprintln!("error: cannot serialize report: {e}");
            return ExitCode::from(report::EXIT_INPUT);
        }
    }
    ExitCode::from(code)
}
