//! Longest chains in the match poset.
//!
//! Points are the index pairs `(i, j)` with `x_i = y_j`, ordered by
//! `(i, j) < (i', j')` iff `i < i'` and `j < j'`. A chain is a common
//! subsequence, so the longest chain has length `L(X, Y)`. The chain is found
//! as a strictly increasing subsequence of `j` over points taken in `i`
//! order, with each row's points fed in decreasing `j` so that two points of
//! the same row can never extend one another.

use crate::sequence::BinarySequence;

/// A match `(i, j)`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatchPoint {
    pub i: u32,
    pub j: u32,
}

impl MatchPoint {
    pub fn precedes(&self, other: &MatchPoint) -> bool {
        self.i < other.i && self.j < other.j
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchPoset {
    points: Vec<MatchPoint>,
}

impl MatchPoset {
    /// Points sorted by `(i, j)`.
    pub fn points(&self) -> &[MatchPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn match_points(x: &BinarySequence, y: &BinarySequence) -> MatchPoset {
    let ys = y.to_symbols();
    let mut points = Vec::new();
    for (i, a) in x.iter().enumerate() {
        for (j, &b) in ys.iter().enumerate() {
            if a == b {
                points.push(MatchPoint { i: i as u32 + 1, j: j as u32 + 1 });
            }
        }
    }
    MatchPoset { points }
}

pub fn longest_chain(poset: &MatchPoset) -> usize {
    // tails[k] = smallest j ending a chain of length k + 1
    let mut tails: Vec<u32> = Vec::new();
    for p in rows_descending(&poset.points) {
        let k = tails.partition_point(|&t| t < p.j);
        if k == tails.len() {
            tails.push(p.j);
        } else {
            tails[k] = p.j;
        }
    }
    tails.len()
}

/// A longest chain, in increasing order.
pub fn longest_chain_witness(poset: &MatchPoset) -> Vec<MatchPoint> {
    let order: Vec<MatchPoint> = rows_descending(&poset.points).collect();
    let mut tails: Vec<usize> = Vec::new();
    let mut parent: Vec<Option<usize>> = vec![None; order.len()];
    for (idx, p) in order.iter().enumerate() {
        let k = tails.partition_point(|&t| order[t].j < p.j);
        parent[idx] = k.checked_sub(1).map(|k| tails[k]);
        if k == tails.len() {
            tails.push(idx);
        } else {
            tails[k] = idx;
        }
    }
    let mut chain = Vec::with_capacity(tails.len());
    let mut cur = tails.last().copied();
    while let Some(idx) = cur {
        chain.push(order[idx]);
        cur = parent[idx];
    }
    chain.reverse();
    chain
}

/// True when each point strictly precedes the next.
pub fn is_chain(points: &[MatchPoint]) -> bool {
    points.windows(2).all(|w| w[0].precedes(&w[1]))
}

pub fn lcs_length(x: &BinarySequence, y: &BinarySequence) -> usize {
    longest_chain(&match_points(x, y))
}

/// Points grouped by `i` ascending, `j` descending within a group.
fn rows_descending(points: &[MatchPoint]) -> impl Iterator<Item = MatchPoint> + '_ {
    points.chunk_by(|a, b| a.i == b.i).flat_map(|group| group.iter().rev().copied())
}
