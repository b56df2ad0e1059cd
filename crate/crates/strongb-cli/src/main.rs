//! Batch driver for the verification workbench: resolves a run
//! configuration from subcommand flags and an optional flat config file,
//! executes it, and writes a deterministic JSON or CSV report.
//!
//! Exit codes: 0 when no check failed, 1 when a check certifiably failed,
//! 2 for invalid configuration, 3 when a numeric size guard tripped.

mod commands;
mod config;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::{parse_config_text, resolve, Format};

/// Configuration or usage problems exit 2; tripped size guards exit 3.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Guard(String),
}

impl From<strongb::findim::FindimError> for CliError {
    fn from(e: strongb::findim::FindimError) -> Self {
        match e {
            strongb::findim::FindimError::Guard(_) => CliError::Guard(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<strongb::witness::WitnessError> for CliError {
    fn from(e: strongb::witness::WitnessError) -> Self {
        CliError::Config(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "strongb", version, about = "Hyperreflexivity verification workbench")]
struct Cli {
    /// Flat `key = value` config file; command-line flags override its entries.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Seed for every randomized estimator; identical seeds reproduce
    /// reports byte for byte.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Report serialization.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Report destination; stdout when omitted.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Copy, Clone, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Certify the witness-function inequality chain at one parameter point.
    Witness {
        /// Distance scale; must satisfy 0 < delta < epsilon < 3.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Perturbation scale (default: epsilon / 100).
        #[arg(long)]
        delta: Option<f64>,
        /// Fourier truncation order for certified enclosures.
        #[arg(long)]
        truncation: Option<usize>,
        /// Grid density for sup-norm certification.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Evaluate the closed-form constant pipeline.
    Constants {
        /// Annihilation constant of the bilinear form.
        #[arg(long)]
        alpha: Option<f64>,
        /// Chain supremum entering the cocycle norm bound.
        #[arg(long)]
        gamma: Option<f64>,
        /// Cochain degree.
        #[arg(long)]
        n: Option<u32>,
        /// Local unit norm bound.
        #[arg(long = "M")]
        m: Option<f64>,
        /// Module constant.
        #[arg(long = "C")]
        c: Option<f64>,
        /// Subspace constant entering the commutant bound.
        #[arg(long = "K")]
        k: Option<f64>,
        /// Representation norm.
        #[arg(long)]
        pi_norm: Option<f64>,
        /// Strong-property ratio constant (default: the group-algebra value).
        #[arg(long)]
        r: Option<f64>,
    },
    /// Finite-dimensional experiments on a structure-constant algebra.
    Findim {
        /// One of: cochain, strongb, hyperref, cocycle-bound.
        #[arg(long)]
        task: Option<String>,
        /// Designator (ck:K, l1z:K, m2, mat:M, scalars) or file:PATH.
        #[arg(long)]
        algebra: Option<String>,
        /// Cochain degree.
        #[arg(long)]
        degree: Option<usize>,
        /// Random instances to draw (restarts for the strongb task).
        #[arg(long)]
        samples: Option<usize>,
        /// Probe budget per estimator call.
        #[arg(long)]
        budget: Option<usize>,
        /// Ratio constant for the cocycle-bound task.
        #[arg(long)]
        r: Option<f64>,
    },
    /// Commutant distance-ratio suite for a finite group on ell^p.
    Cvp {
        /// Group designator: cyclic:K or file:PATH (Cayley table).
        #[arg(long)]
        group: Option<String>,
        /// Sequence-space exponent: 1, 2, or inf.
        #[arg(long)]
        p: Option<String>,
        /// Random operators to test.
        #[arg(long)]
        samples: Option<usize>,
    },
}

impl Command {
    /// Canonical name plus the explicitly given flags as config-shaped pairs.
    fn into_parts(self) -> (&'static str, BTreeMap<String, String>) {
        let mut m = BTreeMap::new();
        let put_f64 = |map: &mut BTreeMap<String, String>, k: &str, v: Option<f64>| {
            if let Some(v) = v {
                map.insert(k.into(), strongb::report::fmt_float(v));
            }
        };
        match self {
            Command::Witness { epsilon, delta, truncation, grid } => {
                put_f64(&mut m, "epsilon", epsilon);
                put_f64(&mut m, "delta", delta);
                put_usize(&mut m, "truncation", truncation);
                put_usize(&mut m, "grid", grid);
                ("witness", m)
            }
            Command::Constants { alpha, gamma, n, m: mm, c, k, pi_norm, r } => {
                put_f64(&mut m, "alpha", alpha);
                put_f64(&mut m, "gamma", gamma);
                if let Some(n) = n {
                    m.insert("n".into(), n.to_string());
                }
                put_f64(&mut m, "M", mm);
                put_f64(&mut m, "C", c);
                put_f64(&mut m, "K", k);
                put_f64(&mut m, "pi_norm", pi_norm);
                put_f64(&mut m, "r", r);
                ("constants", m)
            }
            Command::Findim { task, algebra, degree, samples, budget, r } => {
                put_string(&mut m, "task", task);
                put_string(&mut m, "algebra", algebra);
                put_usize(&mut m, "degree", degree);
                put_usize(&mut m, "samples", samples);
                put_usize(&mut m, "budget", budget);
                put_f64(&mut m, "r", r);
                ("findim", m)
            }
            Command::Cvp { group, p, samples } => {
                put_string(&mut m, "group", group);
                put_string(&mut m, "p", p);
                put_usize(&mut m, "samples", samples);
                ("cvp", m)
            }
        }
    }
}

fn put_usize(map: &mut BTreeMap<String, String>, k: &str, v: Option<usize>) {
    if let Some(v) = v {
        map.insert(k.into(), v.to_string());
    }
}

fn put_string(map: &mut BTreeMap<String, String>, k: &str, v: Option<String>) {
    if let Some(v) = v {
        map.insert(k.into(), v);
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let file_map = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Config(format!("cannot read config {}: {e}", path.display()))
            })?;
            Some(parse_config_text(&text)?)
        }
        None => None,
    };
    let flag_parts = cli.command.map(Command::into_parts);
    let format_flag = cli.format.map(|f| match f {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    });
    let resolved = resolve(flag_parts, file_map.as_ref(), cli.seed, format_flag, cli.output)?;

    let report = commands::execute(&resolved.command, &resolved.params, resolved.seed)?;
    let rendered = match resolved.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    match &resolved.output {
        Some(path) => std::fs::write(path, rendered).map_err(|e| {
            CliError::Config(format!("cannot write report to {}: {e}", path.display()))
        })?,
        None => print!("{rendered}"),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(CliError::Config(msg)) => {
            eprintln!("strongb: invalid configuration: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Guard(msg)) => {
            eprintln!("strongb: {msg}");
            ExitCode::from(3)
        }
    }
}
