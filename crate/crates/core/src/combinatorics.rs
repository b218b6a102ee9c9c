//! Exact embedding probabilities, Azuma-Hoeffding tail bounds and the
//! exhaustive small-`n` LCS distribution used as ground truth elsewhere.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{LcsError, Result};
use crate::rows;
use crate::sequence::{BinarySequence, SeedSpec};
use crate::stats::TrialStats;

/// Largest `m + n` [`exact_lcs_distribution`] will enumerate.
pub const ENUMERATION_BUDGET: usize = 24;

/// An exact probability held as a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactProbability(BigRational);

impl ExactProbability {
    pub fn new(numerator: BigUint, denominator: BigUint) -> Self {
        Self(BigRational::new(numerator.into(), denominator.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numerator(&self) -> BigUint {
        self.0.numer().to_biguint().expect("probabilities are nonnegative")
    }

    pub fn denominator(&self) -> BigUint {
        self.0.denom().to_biguint().expect("denominators are positive")
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for ExactProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Pascal's triangle, extended one row at a time on demand.
#[derive(Debug, Clone)]
pub struct PascalRows {
    rows: Vec<Vec<BigUint>>,
}

impl Default for PascalRows {
    fn default() -> Self {
        Self { rows: vec![vec![BigUint::one()]] }
    }
}

impl PascalRows {
    pub fn new() -> Self {
        Self::default()
    }

    /// `C(n, 0..=n)`.
    pub fn row(&mut self, n: usize) -> &[BigUint] {
        while self.rows.len() <= n {
            let last = self.rows.last().expect("row 0 always present");
            let mut next = Vec::with_capacity(last.len() + 1);
            next.push(BigUint::one());
            next.extend(last.windows(2).map(|w| &w[0] + &w[1]));
            next.push(BigUint::one());
            self.rows.push(next);
        }
        &self.rows[n]
    }

    /// `p(m, n) = 2^-n * sum_{k=m..=n} C(n, k)`, zero when `m > n`.
    pub fn embed_prob(&mut self, m: usize, n: usize) -> ExactProbability {
        if m > n {
            return ExactProbability::zero();
        }
        let tail: BigUint = self.row(n)[m..].iter().sum();
        ExactProbability::new(tail, BigUint::one() << n)
    }
}

/// Probability that a fixed length-`m` sequence is a subsequence of a
/// uniform random length-`n` one.
pub fn embed_prob(m: usize, n: usize) -> ExactProbability {
    PascalRows::new().embed_prob(m, n)
}

/// Monte Carlo frequency of `L(X, Y) = |X|` over `trials` random `Y` of
/// length `n`. Trial `k` draws `Y` from stream `k` of `seed`.
pub fn embed_prob_mc(x: &BinarySequence, n: usize, trials: usize, seed: u64) -> Result<TrialStats> {
    let m = x.len();
    if m > n {
        return Err(LcsError::InvalidArgument(format!("m = {m} exceeds n = {n}")));
    }
    let hits: Vec<u64> = (0..trials as u64)
        .into_par_iter()
        .map(|k| {
            let y = BinarySequence::random(n, SeedSpec::new(seed, k));
            u64::from(rows::lcs_length(x, &y) == m)
        })
        .collect();
    TrialStats::from_samples(m, n, seed, &hits, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sided {
    One,
    Two,
}

/// Evaluated Azuma-Hoeffding bound for deviation `lambda * sqrt(n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AzumaBound {
    pub lambda: f64,
    pub sided: Sided,
    pub value: f64,
}

impl AzumaBound {
    pub fn new(lambda: f64, sided: Sided) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(LcsError::InvalidArgument(format!("lambda must be positive, got {lambda}")));
        }
        let one_sided = (-lambda * lambda / 8.0).exp();
        let value = match sided {
            Sided::One => one_sided,
            Sided::Two => 2.0 * one_sided,
        };
        Ok(Self { lambda, sided, value })
    }
}

/// `exp(-lambda^2 / 8)`, doubled for the two-sided bound.
pub fn azuma_tail(lambda: f64, sided: Sided) -> Result<f64> {
    AzumaBound::new(lambda, sided).map(|b| b.value)
}

/// Exact distribution of `L(X, Y)` over all `2^(m+n)` equally likely pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcsDistribution {
    pub m: usize,
    pub n: usize,
    /// `counts[v]` = number of pairs with `L = v`, for `v = 0..=min(m, n)`.
    pub counts: Vec<u64>,
}

impl LcsDistribution {
    pub fn total(&self) -> BigUint {
        BigUint::one() << (self.m + self.n)
    }

    pub fn probability(&self, value: usize) -> ExactProbability {
        let c = self.counts.get(value).copied().unwrap_or(0);
        ExactProbability::new(BigUint::from(c), self.total())
    }

    /// `(value, probability)` for every attainable value.
    pub fn probabilities(&self) -> Vec<(usize, ExactProbability)> {
        (0..self.counts.len()).map(|v| (v, self.probability(v))).collect()
    }

    pub fn mean(&self) -> BigRational {
        let weighted: BigUint =
            self.counts.iter().enumerate().map(|(v, &c)| BigUint::from(v as u64) * BigUint::from(c)).sum();
        BigRational::new(weighted.into(), self.total().into())
    }

    /// Exact `Pr{ |L - E[L]| > lambda * sqrt(n) }`; `lambda` is taken at its
    /// exact binary value and the comparison is done on squares.
    pub fn deviation_tail(&self, lambda: f64) -> ExactProbability {
        let lambda = BigRational::from_float(lambda).expect("finite lambda");
        let limit = &lambda * &lambda * BigRational::from_integer((self.n as u64).into());
        let mean = self.mean();
        let hits: u64 = self
            .counts
            .iter()
            .enumerate()
            .filter(|(v, _)| {
                let d = BigRational::from_integer((*v as u64).into()) - &mean;
                &d * &d > limit
            })
            .map(|(_, &c)| c)
            .sum();
        ExactProbability::new(BigUint::from(hits), self.total())
    }
}

/// Enumerates every pair of lengths `(m, n)`; `m + n` must not exceed
/// [`ENUMERATION_BUDGET`].
pub fn exact_lcs_distribution(m: usize, n: usize) -> Result<LcsDistribution> {
    if m + n > ENUMERATION_BUDGET {
        return Err(LcsError::BudgetExceeded { requested: m + n, limit: ENUMERATION_BUDGET });
    }
    let width = m.min(n) + 1;
    let counts = (0u32..1 << m)
        .into_par_iter()
        .fold(
            || (vec![0u64; width], vec![0u32; n + 1]),
            |(mut counts, mut row), xc| {
                for yc in 0u32..1 << n {
                    counts[enumeration_lcs(xc, m, yc, n, &mut row)] += 1;
                }
                (counts, row)
            },
        )
        .map(|(counts, _)| counts)
        .reduce(
            || vec![0u64; width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(LcsDistribution { m, n, counts })
}

/// Plain two-dimensional recurrence over bit-encoded sequences, one row reused.
fn enumeration_lcs(xc: u32, m: usize, yc: u32, n: usize, row: &mut [u32]) -> usize {
    row.fill(0);
    for i in 0..m {
        let xi = (xc >> i) & 1;
        let mut diag = 0;
        for j in 1..=n {
            let up = row[j];
            row[j] = if xi == (yc >> (j - 1)) & 1 { diag + 1 } else { up.max(row[j - 1]) };
            diag = up;
        }
    }
    row[n] as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(n: u64, d: u64) -> ExactProbability {
        ExactProbability::new(n.into(), d.into())
    }

    /// Counts `Y` of length `n` containing `x` as a subsequence, by greedy scan.
    fn embeddings(x: &[u8], n: usize) -> u64 {
        (0u32..1 << n)
            .filter(|yc| {
                let mut k = 0;
                for j in 0..n {
                    if k < x.len() && ((yc >> j) & 1) as u8 == x[k] {
                        k += 1;
                    }
                }
                k == x.len()
            })
            .count() as u64
    }

    #[test]
    fn embed_prob_examples() {
        assert_eq!(embed_prob(0, 5), ExactProbability::one());
        assert_eq!(embed_prob(0, 0), ExactProbability::one());
        assert_eq!(embed_prob(2, 3), frac(1, 2));
        assert_eq!(embed_prob(2, 3).to_string(), "1/2");
        assert_eq!(embed_prob(4, 3), ExactProbability::zero());
        for n in 0..=12 {
            assert_eq!(embed_prob(n, n), frac(1, 1 << n));
            assert_eq!(embeddings(&vec![1; n], n), 1);
        }
    }

    #[test]
    fn embed_prob_matches_enumeration_for_several_patterns() {
        for n in 0..=10 {
            for m in 0..=n {
                let p = embed_prob(m, n);
                for x in [vec![1u8; m], (0..m).map(|k| (k % 2) as u8).collect(), vec![0u8; m]] {
                    assert_eq!(frac(embeddings(&x, n), 1 << n), p, "m={m} n={n} x={x:?}");
                }
            }
        }
    }

    #[test]
    fn pascal_rows() {
        let mut p = PascalRows::new();
        let r: Vec<u64> = p.row(5).iter().map(|b| b.to_u64().unwrap()).collect();
        assert_eq!(r, vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(p.row(64)[32].to_string(), "1832624140942590534");
    }

    #[test]
    fn azuma_examples() {
        assert!((azuma_tail(4.0, Sided::Two).unwrap() - 0.270_670_566).abs() < 1e-8);
        assert!((azuma_tail(2.0, Sided::Two).unwrap() - 1.213_061_319).abs() < 1e-8);
        assert!((azuma_tail(4.0, Sided::One).unwrap() - 0.135_335_283).abs() < 1e-8);
        assert!(azuma_tail(0.0, Sided::Two).is_err());
        assert!(azuma_tail(-1.0, Sided::One).is_err());
        assert!(azuma_tail(f64::NAN, Sided::One).is_err());
    }

    #[test]
    fn small_distributions() {
        let d = exact_lcs_distribution(1, 1).unwrap();
        assert_eq!(d.probabilities(), vec![(0, frac(1, 2)), (1, frac(1, 2))]);
        assert_eq!(d.mean(), BigRational::new(1.into(), 2.into()));

        let d = exact_lcs_distribution(2, 2).unwrap();
        assert_eq!(d.mean(), BigRational::new(18.into(), 16.into()));

        let d = exact_lcs_distribution(0, 5).unwrap();
        assert_eq!(d.probabilities(), vec![(0, ExactProbability::one())]);

        assert_eq!(exact_lcs_distribution(13, 12), Err(LcsError::BudgetExceeded { requested: 25, limit: 24 }));
    }

    #[test]
    fn masses_sum_to_one() {
        for (m, n) in [(3, 5), (6, 6), (7, 2)] {
            let d = exact_lcs_distribution(m, n).unwrap();
            let total: BigRational = d.probabilities().into_iter().map(|(_, p)| p.0).sum();
            assert_eq!(total, BigRational::one());
        }
    }

    #[test]
    fn embed_prob_mc_tracks_exact_value() {
        let a = embed_prob_mc(&"01".parse().unwrap(), 3, 20_000, 5).unwrap();
        let b = embed_prob_mc(&"11".parse().unwrap(), 3, 20_000, 5).unwrap();
        assert!((a.mean - 0.5).abs() < 4.0 * a.err, "{a:?}");
        assert!((b.mean - 0.5).abs() < 4.0 * b.err, "{b:?}");
        let e = embed_prob_mc(&BinarySequence::empty(), 7, 50, 1).unwrap();
        assert_eq!((e.mean, e.err), (1.0, 0.0));
        assert!(embed_prob_mc(&"111".parse().unwrap(), 2, 10, 1).is_err());
    }
}
