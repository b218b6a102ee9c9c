//! Row-at-a-time LCS through global vector operators.
//!
//! Row `m` of the LCS table is the prefix maximum of a shifted copy of row
//! `m - 1`: positions `i` with `y_i = x_m` take `v(i-1) + 1`, the others keep
//! `v(i)`. [`maximizer`], [`apply_t`] and [`next_row`] spell the operators
//! out one at a time; [`lcs_rows`] fuses them into a single scan with a
//! running maximum, which is the fast path used by the estimators.

use std::ops::Deref;

use crate::error::{LcsError, Result};
use crate::sequence::BinarySequence;

/// A finite row vector `v(0..=n)`; `v(0)` sits on the `j = 0` boundary.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RowVector(Vec<u32>);

impl RowVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    /// `l[0]` for a `Y` of length `n`: all zeros.
    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n + 1])
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    /// Nondecreasing, unit steps, leading zero.
    pub fn is_valid_lcs_row(&self) -> bool {
        self.0.first().is_some_and(|&v| v == 0) && self.0.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
    }
}

impl Deref for RowVector {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for RowVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

/// Prefix maximum: entry `j` becomes `max(v(0..=j))`.
pub fn maximizer(v: &RowVector) -> RowVector {
    let mut run = 0;
    RowVector(
        v.iter()
            .map(|&x| {
                run = run.max(x);
                run
            })
            .collect(),
    )
}

/// The shift-and-increment operator for `match_symbol` (1 gives `T`, 0 gives
/// `T-bar`). Entry 0 passes through unchanged.
pub fn apply_t(v: &RowVector, y: &BinarySequence, match_symbol: u8) -> Result<RowVector> {
    check_len(v, y)?;
    let mut out = Vec::with_capacity(v.len());
    out.push(v[0]);
    out.extend(y.iter().enumerate().map(|(k, s)| if s == match_symbol { v[k] + 1 } else { v[k + 1] }));
    Ok(RowVector(out))
}

/// `l[m]` from `l[m-1]` and `x_m`.
pub fn next_row(prev: &RowVector, y: &BinarySequence, x_symbol: u8) -> Result<RowVector> {
    Ok(maximizer(&apply_t(prev, y, x_symbol)?))
}

fn check_len(v: &RowVector, y: &BinarySequence) -> Result<()> {
    if v.len() != y.len() + 1 {
        return Err(LcsError::LengthMismatch { expected: y.len() + 1, found: v.len() });
    }
    Ok(())
}

/// Result of running every row of `X` against `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowsOutcome {
    pub length: usize,
    /// `l[0..=m]`, present only when requested.
    pub rows: Option<Vec<RowVector>>,
}

/// Runs the fused row update for every symbol of `x`. Memory is `O(n)`
/// unless `keep_rows` is set.
pub fn lcs_rows(x: &BinarySequence, y: &BinarySequence, keep_rows: bool) -> RowsOutcome {
    let ys = y.to_symbols();
    let mut row = vec![0u32; ys.len() + 1];
    let mut rows = keep_rows.then(|| vec![RowVector(row.clone())]);
    for a in x.iter() {
        advance_row(&mut row, &ys, a);
        if let Some(rows) = rows.as_mut() {
            rows.push(RowVector(row.clone()));
        }
    }
    RowsOutcome { length: row[ys.len()] as usize, rows }
}

/// `L(X, Y)` via the fused row operator.
pub fn lcs_length(x: &BinarySequence, y: &BinarySequence) -> usize {
    lcs_rows(x, y, false).length
}

/// `L(X_k, Y)` for `k = 0..=m`: the last column of every row.
pub fn prefix_lengths(x: &BinarySequence, y: &BinarySequence) -> Vec<usize> {
    let ys = y.to_symbols();
    let mut row = vec![0u32; ys.len() + 1];
    let mut out = Vec::with_capacity(x.len() + 1);
    out.push(0);
    for a in x.iter() {
        advance_row(&mut row, &ys, a);
        out.push(row[ys.len()] as usize);
    }
    out
}

/// In-place `maximizer(apply_t(row, y, a))`.
#[inline]
pub(crate) fn advance_row(row: &mut [u32], ys: &[u8], a: u8) {
    let mut diag = row[0];
    let mut run = row[0];
    for (cell, &s) in row[1..].iter_mut().zip(ys) {
        let up = *cell;
        let shifted = if s == a { diag + 1 } else { up };
        run = run.max(shifted);
        diag = up;
        *cell = run;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> BinarySequence {
        s.parse().unwrap()
    }

    fn row(v: &[u32]) -> RowVector {
        RowVector::new(v.to_vec())
    }

    #[test]
    fn maximizer_examples() {
        assert_eq!(maximizer(&row(&[0, 2, 1, 3, 2])), row(&[0, 2, 2, 3, 3]));
        assert_eq!(maximizer(&row(&[0, 1, 1, 4])), row(&[0, 1, 1, 4]));
        assert_eq!(maximizer(&row(&[1, 0, 0])), row(&[1, 1, 1]));
    }

    #[test]
    fn apply_t_examples() {
        let y = seq("101");
        assert_eq!(apply_t(&RowVector::zeros(3), &y, 1).unwrap(), row(&[0, 1, 0, 1]));
        assert_eq!(apply_t(&RowVector::zeros(3), &y, 0).unwrap(), row(&[0, 0, 1, 0]));
        let v = row(&[0, 1, 1, 2]);
        assert_eq!(apply_t(&v, &seq("000"), 1).unwrap(), v);
    }

    #[test]
    fn apply_t_rejects_length_mismatch() {
        assert_eq!(
            apply_t(&RowVector::zeros(2), &seq("101"), 1),
            Err(LcsError::LengthMismatch { expected: 4, found: 3 })
        );
        assert!(next_row(&RowVector::zeros(4), &seq("101"), 0).is_err());
    }

    #[test]
    fn next_row_examples() {
        let y = seq("101");
        let r1 = next_row(&RowVector::zeros(3), &y, 1).unwrap();
        assert_eq!(r1, row(&[0, 1, 1, 1]));
        assert_eq!(next_row(&r1, &y, 0).unwrap(), row(&[0, 1, 2, 2]));
        let empty = BinarySequence::empty();
        assert_eq!(next_row(&RowVector::zeros(0), &empty, 1).unwrap(), row(&[0]));
    }

    #[test]
    fn fused_update_matches_operator_composition() {
        let x = BinarySequence::random(50, crate::SeedSpec::new(3, 0));
        let y = BinarySequence::random(70, crate::SeedSpec::new(3, 1));
        let fused = lcs_rows(&x, &y, true).rows.unwrap();
        let mut prev = RowVector::zeros(y.len());
        assert_eq!(fused[0], prev);
        for (m, a) in x.iter().enumerate() {
            prev = next_row(&prev, &y, a).unwrap();
            assert!(prev.is_valid_lcs_row());
            assert_eq!(fused[m + 1], prev, "row {}", m + 1);
        }
    }

    #[test]
    fn worked_example() {
        let out = lcs_rows(&seq("01101110"), &seq("101001011"), false);
        assert_eq!(out.length, 6);
        assert!(out.rows.is_none());
        let x = seq("0010111");
        assert_eq!(lcs_length(&x, &x), 7);
    }
}
