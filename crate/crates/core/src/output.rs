//! Machine-readable experiment tables.
//!
//! CSV is comma separated with a header row, `.` as decimal point and LF
//! line endings; floats use the shortest representation that round-trips.
//! Every experiment row repeats the schema version, engine, generator
//! version and seed so a single row is enough to reproduce it.

use std::io::Write;

use serde::Serialize;

use crate::combinatorics::{ExactProbability, LcsDistribution};
use crate::engine::Engine;
use crate::error::{LcsError, Result};
use crate::estimator::{ConcentrationMode, ConcentrationRow, SweepRow, PUBLISHED_GAMMA};
use crate::sequence::RNG_VERSION;
use crate::stats::TrialStats;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaRecord {
    pub schema: u32,
    pub experiment: &'static str,
    pub engine: Engine,
    pub rng: u32,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub mean: f64,
    pub err: f64,
    pub reference_mean: Option<f64>,
    pub reference_err: Option<f64>,
}

impl GammaRecord {
    pub fn new(engine: Engine, stats: &TrialStats) -> Self {
        let reference = PUBLISHED_GAMMA.iter().find(|r| r.0 == stats.n);
        Self {
            schema: SCHEMA_VERSION,
            experiment: "gamma",
            engine,
            rng: RNG_VERSION,
            seed: stats.seed,
            n: stats.n,
            m: stats.m,
            trials: stats.trials,
            mean: stats.mean,
            err: stats.err,
            reference_mean: reference.map(|r| r.1),
            reference_err: reference.map(|r| r.2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsiRecord {
    pub schema: u32,
    pub experiment: &'static str,
    pub engine: Engine,
    pub rng: u32,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub alpha: f64,
    pub mean: f64,
    pub err: f64,
    pub analytic: Option<f64>,
    pub analytic_minus_mean: Option<f64>,
}

impl PsiRecord {
    pub fn new(engine: Engine, row: &SweepRow) -> Self {
        let s = &row.stats;
        Self {
            schema: SCHEMA_VERSION,
            experiment: "psi",
            engine,
            rng: RNG_VERSION,
            seed: s.seed,
            n: s.n,
            m: s.m,
            trials: s.trials,
            alpha: row.alpha,
            mean: s.mean,
            err: s.err,
            analytic: row.analytic,
            analytic_minus_mean: row.analytic.map(|a| a - s.mean),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationRecord {
    pub schema: u32,
    pub experiment: &'static str,
    pub engine: String,
    pub rng: u32,
    pub seed: Option<u64>,
    pub mode: ConcentrationMode,
    pub n: usize,
    pub trials: usize,
    pub lambda: f64,
    pub threshold: f64,
    pub tail: f64,
    pub bound: f64,
    pub within_bound: bool,
}

impl ConcentrationRecord {
    pub fn new(engine: Engine, seed: u64, row: &ConcentrationRow) -> Self {
        let exact = row.mode == ConcentrationMode::Exact;
        Self {
            schema: SCHEMA_VERSION,
            experiment: "concentration",
            engine: if exact { "enumeration".into() } else { engine.to_string() },
            rng: RNG_VERSION,
            seed: (!exact).then_some(seed),
            mode: row.mode,
            n: row.n,
            trials: row.trials,
            lambda: row.lambda,
            threshold: row.threshold,
            tail: row.tail,
            bound: row.bound,
            within_bound: row.within_bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbedRecord {
    pub schema: u32,
    pub experiment: &'static str,
    pub m: usize,
    pub n: usize,
    pub numerator: String,
    pub denominator: String,
    pub probability: f64,
    pub rng: Option<u32>,
    pub seed: Option<u64>,
    pub mc_trials: Option<usize>,
    pub mc_mean: Option<f64>,
    pub mc_err: Option<f64>,
}

impl EmbedRecord {
    pub fn new(m: usize, n: usize, exact: &ExactProbability, mc: Option<&TrialStats>) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            experiment: "embed",
            m,
            n,
            numerator: exact.numerator().to_string(),
            denominator: exact.denominator().to_string(),
            probability: exact.to_f64(),
            rng: mc.map(|_| RNG_VERSION),
            seed: mc.map(|s| s.seed),
            mc_trials: mc.map(|s| s.trials),
            mc_mean: mc.map(|s| s.mean),
            mc_err: mc.map(|s| s.err),
        }
    }
}

/// One value of an exact distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionRecord {
    pub value: usize,
    pub numerator: String,
    pub denominator: String,
    pub float: f64,
}

pub fn distribution_records(dist: &LcsDistribution) -> Vec<DistributionRecord> {
    dist.probabilities()
        .into_iter()
        .map(|(value, p)| DistributionRecord {
            value,
            numerator: p.numerator().to_string(),
            denominator: p.denominator().to_string(),
            float: p.to_f64(),
        })
        .collect()
}

pub fn write_table<T: Serialize, W: Write>(records: &[T], format: TableFormat, out: W) -> Result<()> {
    let io = |e: std::io::Error| LcsError::InvalidArgument(format!("write failed: {e}"));
    match format {
        TableFormat::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
            for r in records {
                w.serialize(r).map_err(|e| LcsError::InvalidArgument(format!("csv: {e}")))?;
            }
            w.flush().map_err(io)
        }
        TableFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, records)
                .map_err(|e| LcsError::InvalidArgument(format!("json: {e}")))?;
            out.write_all(b"\n").map_err(io)
        }
    }
}
