//! Seeded Monte Carlo estimates of `E[L(m, n)] / n` and the elliptical
//! approximation `L*(m, n) = sqrt((4mn - n^2 - m^2) / 3)`.
//!
//! Trial `k` of every experiment draws from stream `k` of the master seed:
//! first `Y` (length `n`), then `X` (length `m`). Because `X` comes last
//! and draws are word-sequential, a longer `X` extends a shorter one, so the
//! sweep and the point estimates see identical samples. Trials run on the
//! ambient rayon pool and are collected in trial order; all aggregation is
//! over exact integers.

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{azuma_tail, exact_lcs_distribution, Sided};
use crate::engine::Engine;
use crate::error::{LcsError, Result};
use crate::sequence::{BinarySequence, SeedSpec};
use crate::stats::TrialStats;
use crate::{dp, rows};

/// `(n, mean, err)` rows of the published 50-trial table.
pub const PUBLISHED_GAMMA: [(usize, f64, f64); 9] = [
    (64, 0.77406, 0.00467),
    (128, 0.78266, 0.00286),
    (256, 0.79656, 0.00166),
    (512, 0.80121, 0.00108),
    (1024, 0.80594, 0.00061),
    (2048, 0.80711, 0.00052),
    (4096, 0.80942, 0.00032),
    (8192, 0.81031, 0.00021),
    (16384, 0.81110, 0.00014),
];

/// Absorbs representation error in `alpha * n` before flooring.
const FLOOR_GUARD: f64 = 1e-9;

fn trial_pair(seed: u64, k: u64, m: usize, n: usize) -> (BinarySequence, BinarySequence) {
    let mut rng = SeedSpec::new(seed, k).rng();
    let y = BinarySequence::random_from(&mut rng, n);
    let x = BinarySequence::random_from(&mut rng, m);
    (x, y)
}

/// `L(X, Y)` for each of `trials` random pairs with `|X| = m`, `|Y| = n`.
pub fn sample_lengths(m: usize, n: usize, trials: usize, seed: u64, engine: Engine) -> Vec<u64> {
    (0..trials as u64)
        .into_par_iter()
        .map(|k| {
            let (x, y) = trial_pair(seed, k, m, n);
            engine.lcs_length(&x, &y) as u64
        })
        .collect()
}

fn check_trials(n: usize, trials: usize) -> Result<()> {
    if n == 0 {
        return Err(LcsError::InvalidArgument("n must be at least 1".into()));
    }
    if trials < 2 {
        return Err(LcsError::InvalidArgument(format!("need at least 2 trials, got {trials}")));
    }
    Ok(())
}

/// `gamma_n = E[L(n, n)] / n` with the default row engine.
pub fn estimate_gamma(n: usize, trials: usize, seed: u64) -> Result<TrialStats> {
    estimate_gamma_with(Engine::Rows, n, trials, seed)
}

pub fn estimate_gamma_with(engine: Engine, n: usize, trials: usize, seed: u64) -> Result<TrialStats> {
    check_trials(n, trials)?;
    TrialStats::from_samples(n, n, seed, &sample_lengths(n, n, trials, seed, engine), n as f64)
}

pub fn gamma_table(sizes: &[usize], trials: usize, seed: u64, engine: Engine) -> Result<Vec<TrialStats>> {
    sizes.iter().map(|&n| estimate_gamma_with(engine, n, trials, seed)).collect()
}

/// `floor(alpha * n)`.
pub fn alpha_to_m(alpha: f64, n: usize) -> Result<usize> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(LcsError::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    Ok((alpha * n as f64 + FLOOR_GUARD).floor() as usize)
}

/// `sqrt((4mn - n^2 - m^2) / 3)` for `n/2 <= m <= 2n`.
pub fn l_star(m: usize, n: usize) -> Result<f64> {
    if 2 * m < n || m > 2 * n {
        return Err(LcsError::InvalidArgument(format!("L*(m, n) needs n/2 <= m <= 2n, got m = {m}, n = {n}")));
    }
    let (m, n) = (m as i128, n as i128);
    let radicand = 4 * m * n - n * n - m * m;
    Ok((radicand as f64 / 3.0).sqrt())
}

/// `sqrt((4a - a^2 - 1) / 3)` for `1/2 <= a <= 2`.
pub fn psi_star(alpha: f64) -> Result<f64> {
    if !(0.5..=2.0).contains(&alpha) {
        return Err(LcsError::InvalidArgument(format!("psi* needs 1/2 <= alpha <= 2, got {alpha}")));
    }
    Ok(((4.0 * alpha - alpha * alpha - 1.0) / 3.0).max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsiPoint {
    pub alpha: f64,
    pub n: usize,
    pub m: usize,
    /// Sample mean of `L(X_m, Y_n) / n`.
    pub estimate: f64,
    pub err: f64,
    pub trials: usize,
    pub seed: u64,
    /// `psi*(alpha)`, when alpha lies in its domain.
    pub analytic: Option<f64>,
}

pub fn estimate_psi(alpha: f64, n: usize, trials: usize, seed: u64) -> Result<PsiPoint> {
    estimate_psi_with(Engine::Rows, alpha, n, trials, seed)
}

pub fn estimate_psi_with(engine: Engine, alpha: f64, n: usize, trials: usize, seed: u64) -> Result<PsiPoint> {
    check_trials(n, trials)?;
    let m = alpha_to_m(alpha, n)?;
    let stats = TrialStats::from_samples(m, n, seed, &sample_lengths(m, n, trials, seed, engine), n as f64)?;
    Ok(PsiPoint { alpha, n, m, estimate: stats.mean, err: stats.err, trials, seed, analytic: psi_star(alpha).ok() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepParams {
    pub n: usize,
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    pub alpha_step: f64,
    pub trials: usize,
    pub seed: u64,
    /// `Dp` or `Rows`; both expose every prefix length in one pass.
    pub engine: Engine,
}

impl SweepParams {
    /// The grid `lo, lo + step, ..., <= hi`.
    pub fn alphas(&self) -> Result<Vec<f64>> {
        if !(self.alpha_step > 0.0 && self.alpha_step.is_finite()) {
            return Err(LcsError::InvalidArgument(format!("step must be positive, got {}", self.alpha_step)));
        }
        if !(self.alpha_lo > 0.0 && self.alpha_lo <= self.alpha_hi && self.alpha_hi.is_finite()) {
            return Err(LcsError::InvalidArgument(format!(
                "alpha range {}:{} is empty or nonpositive",
                self.alpha_lo, self.alpha_hi
            )));
        }
        let count = ((self.alpha_hi - self.alpha_lo) / self.alpha_step + FLOOR_GUARD).floor() as usize;
        Ok((0..=count).map(|k| self.alpha_lo + k as f64 * self.alpha_step).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub stats: TrialStats,
    /// `L*(m, n) / n` when `n/2 <= m <= 2n`.
    pub analytic: Option<f64>,
}

/// Empirical `L(m, n) / n` next to `L*(m, n) / n` over a grid of `m / n`.
/// Each trial computes every prefix length of one long `X` in a single pass.
pub fn figure1_sweep(params: &SweepParams) -> Result<Vec<SweepRow>> {
    check_trials(params.n, params.trials)?;
    let prefix: fn(&BinarySequence, &BinarySequence) -> Vec<usize> = match params.engine {
        Engine::Rows => rows::prefix_lengths,
        Engine::Dp => dp::prefix_lengths,
        other => {
            return Err(LcsError::InvalidArgument(format!(
                "the sweep needs prefix lengths; engine {other} does not provide them"
            )))
        }
    };
    let alphas = params.alphas()?;
    let ms = alphas.iter().map(|&a| alpha_to_m(a, params.n)).collect::<Result<Vec<_>>>()?;
    let m_max = ms.iter().copied().max().unwrap_or(0);
    let n = params.n;
    let per_trial: Vec<Vec<u64>> = (0..params.trials as u64)
        .into_par_iter()
        .map(|k| {
            let (x, y) = trial_pair(params.seed, k, m_max, n);
            let lengths = prefix(&x, &y);
            ms.iter().map(|&m| lengths[m] as u64).collect()
        })
        .collect();
    alphas
        .iter()
        .zip(&ms)
        .enumerate()
        .map(|(col, (&alpha, &m))| {
            let samples: Vec<u64> = per_trial.iter().map(|t| t[col]).collect();
            Ok(SweepRow {
                alpha,
                stats: TrialStats::from_samples(m, n, params.seed, &samples, n as f64)?,
                analytic: l_star(m, n).ok().map(|v| v / n as f64),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConcentrationMode {
    Sampled,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConcentrationRow {
    pub mode: ConcentrationMode,
    pub n: usize,
    pub trials: usize,
    pub lambda: f64,
    /// `lambda * sqrt(n)`.
    pub threshold: f64,
    /// Frequency (sampled) or probability (exact) of `|L - E[L]| > threshold`.
    pub tail: f64,
    /// `2 exp(-lambda^2 / 8)`.
    pub bound: f64,
    /// Whether `tail` respects `bound`, allowing three binomial standard
    /// errors of slack in sampled mode.
    pub within_bound: bool,
}

/// Empirical deviation frequencies around the sample mean of `L(n, n)`.
pub fn concentration_check(
    n: usize,
    trials: usize,
    lambdas: &[f64],
    seed: u64,
    engine: Engine,
) -> Result<Vec<ConcentrationRow>> {
    check_trials(n, trials)?;
    let samples = sample_lengths(n, n, trials, seed, engine);
    let sum: u128 = samples.iter().map(|&v| v as u128).sum();
    let mean = sum as f64 / trials as f64;
    lambdas
        .iter()
        .map(|&lambda| {
            let bound = azuma_tail(lambda, Sided::Two)?;
            let threshold = lambda * (n as f64).sqrt();
            let hits = samples.iter().filter(|&&v| (v as f64 - mean).abs() > threshold).count();
            let tail = hits as f64 / trials as f64;
            let b = bound.min(1.0);
            let slack = 3.0 * (b * (1.0 - b) / trials as f64).sqrt();
            Ok(ConcentrationRow {
                mode: ConcentrationMode::Sampled,
                n,
                trials,
                lambda,
                threshold,
                tail,
                bound,
                within_bound: tail <= bound + slack,
            })
        })
        .collect()
}

/// Exact deviation probabilities from the full enumeration of `L(n, n)`.
pub fn concentration_exact(n: usize, lambdas: &[f64]) -> Result<Vec<ConcentrationRow>> {
    let dist = exact_lcs_distribution(n, n)?;
    let trials = 1usize << (2 * n);
    lambdas
        .iter()
        .map(|&lambda| {
            let bound = azuma_tail(lambda, Sided::Two)?;
            let tail = dist.deviation_tail(lambda).to_f64();
            Ok(ConcentrationRow {
                mode: ConcentrationMode::Exact,
                n,
                trials,
                lambda,
                threshold: lambda * (n as f64).sqrt(),
                tail,
                bound,
                within_bound: tail <= bound,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l_star_values() {
        let v = l_star(1000, 1000).unwrap() / 1000.0;
        assert!((v - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((v - 0.816_496).abs() < 1e-6);
        assert_eq!(l_star(2000, 1000).unwrap(), 1000.0);
        assert_eq!(l_star(500, 1000).unwrap(), 500.0);
        assert!(l_star(499, 1000).is_err());
        assert!(l_star(2001, 1000).is_err());
        assert!((psi_star(1.0).unwrap() - l_star(1000, 1000).unwrap() / 1000.0).abs() < 1e-15);
    }

    #[test]
    fn psi_star_endpoints() {
        assert!((psi_star(0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((psi_star(2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(psi_star(0.49).is_err());
        assert!(psi_star(2.01).is_err());
        // tangent to y = x/2 at the left end, flat at the right
        let h = 1e-6;
        let left = (psi_star(0.5 + h).unwrap() - psi_star(0.5).unwrap()) / h;
        let right = (psi_star(2.0).unwrap() - psi_star(2.0 - h).unwrap()) / h;
        assert!((left - 1.0).abs() < 1e-3, "{left}");
        assert!(right.abs() < 1e-3, "{right}");
    }

    #[test]
    fn floor_convention() {
        assert_eq!(alpha_to_m(0.4, 4096).unwrap(), 1638);
        assert_eq!(alpha_to_m(2.5, 4096).unwrap(), 10240);
        assert_eq!(alpha_to_m(0.575, 1000).unwrap(), 575);
        assert!(alpha_to_m(0.0, 10).is_err());
    }

    #[test]
    fn alpha_grid() {
        let p = SweepParams {
            n: 1000,
            alpha_lo: 0.5,
            alpha_hi: 2.0,
            alpha_step: 0.025,
            trials: 2,
            seed: 1,
            engine: Engine::Rows,
        };
        let a = p.alphas().unwrap();
        assert_eq!(a.len(), 61);
        assert_eq!(a[0], 0.5);
        assert!((a[60] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn argument_errors() {
        assert!(estimate_gamma(0, 10, 1).is_err());
        assert!(estimate_gamma(10, 1, 1).is_err());
        assert!(estimate_psi(-1.0, 10, 10, 1).is_err());
    }

    #[test]
    fn psi_at_one_is_gamma() {
        let g = estimate_gamma(100, 20, 3).unwrap();
        let p = estimate_psi(1.0, 100, 20, 3).unwrap();
        assert_eq!((g.mean, g.err), (p.estimate, p.err));
    }

    #[test]
    fn sweep_matches_point_estimates() {
        let params = SweepParams {
            n: 60,
            alpha_lo: 0.5,
            alpha_hi: 2.0,
            alpha_step: 0.25,
            trials: 12,
            seed: 11,
            engine: Engine::Rows,
        };
        let rows = figure1_sweep(&params).unwrap();
        assert_eq!(rows.len(), 7);
        for r in &rows {
            let p = estimate_psi(r.alpha, 60, 12, 11).unwrap();
            assert_eq!(r.stats.m, p.m);
            assert_eq!((r.stats.mean, r.stats.err), (p.estimate, p.err));
        }
        let dp = figure1_sweep(&SweepParams { engine: Engine::Dp, ..params }).unwrap();
        assert_eq!(dp, rows);
        assert!(figure1_sweep(&SweepParams { engine: Engine::Poset, ..params }).is_err());
    }

    #[test]
    fn exact_concentration_small() {
        let rows = concentration_exact(4, &[0.5, 1.0]).unwrap();
        assert!(rows.iter().all(|r| r.within_bound && r.mode == ConcentrationMode::Exact));
        assert!(concentration_exact(13, &[1.0]).is_err());
    }
}
