//! Reference quadratic dynamic program.
//!
//! `l(i, j) = l(i-1, j-1) + 1` when `x_i = y_j`, otherwise
//! `max(l(i, j-1), l(i-1, j))`, with `l(i, 0) = l(0, j) = 0`.

use crate::sequence::BinarySequence;

/// The full `(m+1) x (n+1)` table of prefix LCS lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcsTable {
    m: usize,
    n: usize,
    cells: Vec<u32>,
}

impl LcsTable {
    pub(crate) fn zeros(m: usize, n: usize) -> Self {
        Self { m, n, cells: vec![0; (m + 1) * (n + 1)] }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `l(i, j) = L(X_i, Y_j)`.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.cells[i * (self.n + 1) + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: u32) {
        self.cells[i * (self.n + 1) + j] = value;
    }

    /// Row `i`, entries `j = 0..=n`.
    pub fn row(&self, i: usize) -> &[u32] {
        let w = self.n + 1;
        &self.cells[i * w..(i + 1) * w]
    }

    /// `L(X, Y)`, the bottom-right entry.
    pub fn lcs(&self) -> usize {
        self.get(self.m, self.n) as usize
    }
}

pub fn lcs_table(x: &BinarySequence, y: &BinarySequence) -> LcsTable {
    let (m, n) = (x.len(), y.len());
    let xs = x.to_symbols();
    let ys = y.to_symbols();
    let mut t = LcsTable::zeros(m, n);
    for i in 1..=m {
        for j in 1..=n {
            let v = if xs[i - 1] == ys[j - 1] { t.get(i - 1, j - 1) + 1 } else { t.get(i, j - 1).max(t.get(i - 1, j)) };
            t.set(i, j, v);
        }
    }
    t
}

/// Length of an LCS using a single row over the shorter sequence plus a
/// carried diagonal.
pub fn lcs_length(x: &BinarySequence, y: &BinarySequence) -> usize {
    let (outer, inner) = if x.len() >= y.len() { (x, y) } else { (y, x) };
    let inner = inner.to_symbols();
    let mut row = vec![0u32; inner.len() + 1];
    for a in outer.iter() {
        sweep_row(&mut row, &inner, a);
    }
    row[inner.len()] as usize
}

/// `L(X_k, Y)` for `k = 0..=m`.
pub fn prefix_lengths(x: &BinarySequence, y: &BinarySequence) -> Vec<usize> {
    let ys = y.to_symbols();
    let mut row = vec![0u32; ys.len() + 1];
    let mut out = Vec::with_capacity(x.len() + 1);
    out.push(0);
    for a in x.iter() {
        sweep_row(&mut row, &ys, a);
        out.push(row[ys.len()] as usize);
    }
    out
}

#[inline]
fn sweep_row(row: &mut [u32], ys: &[u8], a: u8) {
    // diag holds l(i-1, j-1) before row[j] is overwritten
    let mut diag = 0;
    for j in 1..row.len() {
        let up = row[j];
        row[j] = if ys[j - 1] == a { diag + 1 } else { up.max(row[j - 1]) };
        diag = up;
    }
}
