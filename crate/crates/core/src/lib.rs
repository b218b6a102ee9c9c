//! Longest common subsequences of binary sequences.
//!
//! Four independent engines compute `L(X, Y)`:
//!
//! * [`dp`]: the quadratic table recurrence, the reference.
//! * [`rows`]: prefix-maximum row operators, the fast path.
//! * [`fsm`]: a four-state machine over the differential table.
//! * [`poset`]: the longest chain among matching index pairs.
//!
//! On top of them sit exact embedding probabilities and enumerated
//! distributions ([`combinatorics`]) and seeded Monte Carlo estimators of
//! `E[L(m, n)] / n` ([`estimator`]), driven by the `lcs-lab` binary ([`cli`]).

pub mod cli;
pub mod combinatorics;
pub mod dp;
pub mod engine;
pub mod error;
pub mod estimator;
pub mod fsm;
pub mod output;
pub mod poset;
pub mod rows;
pub mod sequence;
pub mod stats;

pub use engine::Engine;
pub use error::{LcsError, Result};
pub use sequence::{BinarySequence, SeedSpec};
pub use stats::TrialStats;
