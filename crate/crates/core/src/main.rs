use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use skewrec::cohomology::build_tower;
use skewrec::harness::{
    emit_plot, run_certify, run_metric, run_profile, run_recurrentize, run_witness, ExperimentConfig, HarnessError,
};
use skewrec::measure::Perm;
use skewrec::Rational;

/// Relative output paths are resolved against this directory when it is set.
const OUT_DIR_ENV: &str = "SKEWREC_OUT_DIR";

#[derive(Parser)]
#[command(name = "skewrec", version, about = "Exact experiments on skew-product extensions and cocycle recurrence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Halmos and uniform distance between two permutations.
    Metric {
        /// Permutation as a JSON file or inline JSON, e.g. '{"forward":[1,0,2,3]}'.
        p: String,
        q: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rokhlin tower of a base permutation.
    Tower {
        #[arg(long)]
        base: String,
        #[arg(long)]
        height: usize,
        #[arg(long)]
        eps: Rational,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recurrence profile as CSV (m,n,measure_num,measure_den).
    Profile {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG plot of the profile.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Smallest n in (floor, horizon] with a positive-measure recurrence set.
    Witness {
        config: PathBuf,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        floor: usize,
        #[arg(long)]
        horizon: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nearby certified-recurrent simple extension; exits 0 iff dist < delta.
    Recurrentize {
        config: PathBuf,
        #[arg(long)]
        delta: Rational,
        #[arg(long, default_value_t = 1)]
        floor: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recurrence certificate for a simple-cocycle config.
    Certify {
        config: PathBuf,
        #[arg(long, default_value_t = 1)]
        floor: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), HarnessError> {
    match out {
        Some(path) => {
            let path = resolve(path);
            std::fs::write(&path, text).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialize");
    s.push('\n');
    s
}

fn read_perm(arg: &str) -> Result<Perm, HarnessError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| HarnessError::Io(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| HarnessError::Parse(format!("permutation {arg}: {e}")))
}

fn run(cli: Cli) -> Result<ExitCode, HarnessError> {
    match cli.command {
        Command::Metric { p, q, out } => {
            let report = run_metric(&read_perm(&p)?, &read_perm(&q)?)?;
            write_output(&to_json(&report), out.as_deref())?;
        }
        Command::Tower { base, height, eps, out } => {
            let tower = build_tower(&read_perm(&base)?, height, eps)?;
            write_output(&to_json(&tower), out.as_deref())?;
        }
        Command::Profile { config, out, plot } => {
            let csv = run_profile(&ExperimentConfig::load(&config)?)?;
            write_output(&csv, out.as_deref())?;
            if let Some(plot) = plot {
                emit_plot(&csv, &resolve(&plot))?;
            }
        }
        Command::Witness { config, m, floor, horizon, out } => {
            let witness = run_witness(&ExperimentConfig::load(&config)?, m, floor, horizon)?;
            write_output(&to_json(&witness), out.as_deref())?;
        }
        Command::Recurrentize { config, delta, floor, out } => {
            let report = run_recurrentize(&ExperimentConfig::load(&config)?, delta, floor)?;
            write_output(&to_json(&report), out.as_deref())?;
            if !report.within_delta {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Certify { config, floor, out } => {
            let cert = run_certify(&ExperimentConfig::load(&config)?, floor)?;
            write_output(&to_json(&cert), out.as_deref())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("skewrec: {e}");
            ExitCode::from(2)
        }
    }
}
