//! Experiment runners behind the command-line tool.

mod config;
pub mod generate;
mod plot;

use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{certify_recurrence_within, recurrentize, RecurrenceCertificate};
use crate::measure::{halmos_distance, uniform_distance, DyadicFamily, Perm};
use crate::rational::Rational;
use crate::skew::{find_recurrence_witness, recurrence_profiles, SkewProduct, Witness};

pub use config::{BaseKind, ExperimentConfig, ExtensionKind, Instance};
pub use plot::{emit_plot, render_plot};

pub const PROFILE_HEADER: &str = "m,n,measure_num,measure_den";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config field `{field}`: {message}")]
    Config { field: &'static str, message: String },

    #[error("config parse error: {0}")]
    Parse(String),

    #[error("csv line {line}: {message}")]
    Csv { line: u64, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("plot error: {0}")]
    Plot(String),

    #[error(transparent)]
    Model(#[from] crate::error::Error),
}

/// Recurrence measures for every `m` and every `n` in the configured range, as CSV.
pub fn run_profile(cfg: &ExperimentConfig) -> Result<String, HarnessError> {
    let inst = cfg.build()?;
    let fam = DyadicFamily::new(inst.skew.fiber_space());
    let profiles = recurrence_profiles(&inst.skew, &inst.ms, inst.n_min..=inst.n_max, &inst.subset, &fam)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(PROFILE_HEADER.split(',')).map_err(|e| HarnessError::Io(e.to_string()))?;
    for (m, rows) in &profiles {
        for (n, measure) in rows {
            w.write_record([m.to_string(), n.to_string(), measure.numer().to_string(), measure.denom().to_string()])
                .map_err(|e| HarnessError::Io(e.to_string()))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of integers is utf-8"))
}

pub fn run_witness(cfg: &ExperimentConfig, m: u64, floor: usize, horizon: usize) -> Result<Witness, HarnessError> {
    let inst = cfg.build()?;
    let fam = DyadicFamily::new(inst.skew.fiber_space());
    Ok(find_recurrence_witness(&inst.skew, m, floor, horizon, &inst.subset, &fam)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct RecurrentizeReport {
    pub delta: Rational,
    pub dist: Rational,
    pub within_delta: bool,
    pub tower_height: Option<usize>,
    pub certificate: RecurrenceCertificate,
    pub extension: SkewProduct,
}

pub fn run_recurrentize(cfg: &ExperimentConfig, delta: Rational, floor: usize) -> Result<RecurrentizeReport, HarnessError> {
    let inst = cfg.build()?;
    let out = recurrentize(&inst.skew, delta, floor, &inst.subset)?;
    Ok(RecurrentizeReport {
        delta,
        dist: out.dist,
        within_delta: out.dist < delta,
        tower_height: out.tower_height,
        certificate: out.certificate,
        extension: out.extension,
    })
}

/// Certificate for the configured simple partition, restricted to the configured subset.
pub fn run_certify(cfg: &ExperimentConfig, floor: usize) -> Result<RecurrenceCertificate, HarnessError> {
    let inst = cfg.build()?;
    let part = inst.partition.as_ref().ok_or_else(|| HarnessError::Config {
        field: "extension",
        message: "certify needs extension = \"simple\"".into(),
    })?;
    Ok(certify_recurrence_within(inst.skew.base(), part, floor, &inst.subset)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricReport {
    pub cells: usize,
    pub halmos: Rational,
    pub uniform: Rational,
}

pub fn run_metric(p: &Perm, q: &Perm) -> Result<MetricReport, HarnessError> {
    let fam = DyadicFamily::new(p.space());
    Ok(MetricReport { cells: p.len(), halmos: halmos_distance(p, q, &fam)?, uniform: uniform_distance(p, q)? })
}
