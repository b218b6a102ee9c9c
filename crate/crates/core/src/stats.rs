use serde::Serialize;

use crate::error::{LcsError, Result};

/// Summary of a batch of seeded trials.
///
/// `mean` is the sample mean of `sample / scale` and `err` the standard
/// deviation of that mean (sample standard deviation over `sqrt(trials)`).
/// Both are computed from exact integer sums, so the trial order never
/// changes a digit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialStats {
    pub m: usize,
    pub n: usize,
    pub trials: usize,
    pub mean: f64,
    pub err: f64,
    pub seed: u64,
}

impl TrialStats {
    pub fn from_samples(m: usize, n: usize, seed: u64, samples: &[u64], scale: f64) -> Result<Self> {
        let trials = samples.len();
        if trials < 2 {
            return Err(LcsError::InvalidArgument(format!(
                "need at least 2 trials for an error estimate, got {trials}"
            )));
        }
        let s1: u128 = samples.iter().map(|&v| v as u128).sum();
        let s2: u128 = samples.iter().map(|&v| (v as u128) * (v as u128)).sum();
        let t = trials as u128;
        // t * s2 - s1^2 >= 0 by Cauchy-Schwarz
        let spread = (t * s2 - s1 * s1) as f64;
        let var = spread / (t * (t - 1)) as f64;
        Ok(Self {
            m,
            n,
            trials,
            mean: s1 as f64 / trials as f64 / scale,
            err: (var / trials as f64).sqrt() / scale,
            seed,
        })
    }
}
