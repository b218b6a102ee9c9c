//! Differential LCS table and the four-state machine that generates it.
//!
//! The differential table holds `T(i, j) = l(i, j) - l(i-1, j)` for
//! `i >= 1`, always 0 or 1. Its column sums rebuild the LCS table.
//!
//! The machine is given only as a pair of 4x4 tables (`data/fsm_tables.toml`);
//! how a line of `T` is fed through it is not. [`calibrate_fsm`] enumerates
//! every reading in [`candidate_configs`] and keeps those that reproduce
//! [`diff_table`] on a fixed suite. The checked-in result lives in
//! `data/fsm_config.toml` and is what [`CalibratedFsm::published`] uses.
//!
//! A machine run processes one *line* of `T`: with [`ScanAxis::Columns`]
//! it reads column `j - 1` top to bottom together with `X` and emits column
//! `j` for the fixed symbol `y_j`; with [`ScanAxis::Rows`] it reads row
//! `i - 1` left to right together with `Y` and emits row `i` for `x_i`.

use std::fmt;
use std::sync::LazyLock;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dp::{lcs_table, LcsTable};
use crate::error::{LcsError, Result};
use crate::sequence::{all_sequences_up_to, BinarySequence, SeedSpec};

pub const STATES: usize = 4;

/// Master seed for the random half of the calibration suite.
pub const CALIBRATION_SEED: u64 = 0x6673_6d5f_6361_6c31;
pub const CALIBRATION_EXHAUSTIVE_MAX: usize = 6;
pub const CALIBRATION_RANDOM_PAIRS: usize = 1000;
pub const CALIBRATION_RANDOM_MAX: usize = 64;

const PUBLISHED_TABLES: &str = include_str!("../data/fsm_tables.toml");
const FROZEN_CONFIG: &str = include_str!("../data/fsm_config.toml");

/// Row `i` of the differential table, entries `j = 1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffRow(Vec<u8>);

impl DiffRow {
    pub fn new(entries: Vec<u8>) -> Self {
        Self(entries)
    }

    /// `T(i, j)`; the `j = 0` boundary is always 0.
    pub fn entry(&self, j: usize) -> u8 {
        if j == 0 {
            0
        } else {
            self.0[j - 1]
        }
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DiffRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// All `m` rows of the differential table for a `Y` of length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffTable {
    n: usize,
    rows: Vec<DiffRow>,
}

impl DiffTable {
    pub fn from_rows(n: usize, rows: Vec<DiffRow>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(LcsError::LengthMismatch { expected: n, found: bad.len() });
        }
        Ok(Self { n, rows })
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row `i`, 1-based.
    pub fn row(&self, i: usize) -> &DiffRow {
        &self.rows[i - 1]
    }

    pub fn rows(&self) -> &[DiffRow] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.rows[i - 1].entry(j)
    }

    /// 0/1 grid, one line per row.
    pub fn to_grid(&self) -> String {
        self.rows.iter().map(|r| format!("{r}\n")).collect()
    }
}

/// Differential table computed from the reference DP.
pub fn diff_table(x: &BinarySequence, y: &BinarySequence) -> DiffTable {
    let t = lcs_table(x, y);
    let rows = (1..=x.len())
        .map(|i| DiffRow((1..=y.len()).map(|j| (t.get(i, j) - t.get(i - 1, j)) as u8).collect()))
        .collect();
    DiffTable { n: y.len(), rows }
}

/// Rebuilds `l(i, j)` as running column sums of the differential rows.
pub fn reconstruct_lcs(diff: &DiffTable) -> LcsTable {
    let mut t = LcsTable::zeros(diff.m(), diff.n());
    for i in 1..=diff.m() {
        for j in 1..=diff.n() {
            t.set(i, j, t.get(i - 1, j) + u32::from(diff.get(i, j)));
        }
    }
    t
}

/// Transition and output tables of a 4-state machine over input pairs
/// `00, 01, 10, 11`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FsmSpec {
    states: usize,
    transition: [[u8; 4]; STATES],
    output: [[u8; 4]; STATES],
}

impl FsmSpec {
    pub fn new(transition: [[u8; 4]; STATES], output: [[u8; 4]; STATES]) -> Result<Self> {
        let spec = Self { states: STATES, transition, output };
        spec.validate()?;
        Ok(spec)
    }

    /// The published tables from `data/fsm_tables.toml`.
    pub fn published() -> &'static FsmSpec {
        static SPEC: LazyLock<FsmSpec> =
            LazyLock::new(|| FsmSpec::from_toml(PUBLISHED_TABLES).expect("data/fsm_tables.toml is well formed"));
        &SPEC
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: Self = toml::from_str(text).map_err(|e| LcsError::Malformed(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plain data serializes")
    }

    fn validate(&self) -> Result<()> {
        if self.states != STATES {
            return Err(LcsError::Malformed(format!("expected {STATES} states, found {}", self.states)));
        }
        if let Some(&s) = self.transition.iter().flatten().find(|&&s| s as usize >= STATES) {
            return Err(LcsError::StateOutOfRange(s));
        }
        if self.output.iter().flatten().any(|&b| b > 1) {
            return Err(LcsError::Malformed("output entries must be 0 or 1".into()));
        }
        Ok(())
    }

    pub fn transition(&self) -> &[[u8; 4]; STATES] {
        &self.transition
    }

    pub fn output(&self) -> &[[u8; 4]; STATES] {
        &self.output
    }

    #[inline]
    fn step_unchecked(&self, state: u8, input: u8) -> (u8, u8) {
        let (s, c) = (state as usize, input as usize);
        (self.transition[s][c], self.output[s][c])
    }
}

/// One table lookup: `(next state, output bit)`. `input` is the pair
/// encoded as `2 * high + low`.
pub fn fsm_step(spec: &FsmSpec, state: u8, input: u8) -> Result<(u8, u8)> {
    if state as usize >= STATES {
        return Err(LcsError::StateOutOfRange(state));
    }
    if input > 3 {
        return Err(LcsError::InputOutOfRange(input));
    }
    Ok(spec.step_unchecked(state, input))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanAxis {
    /// Emit row `i` from row `i - 1`, scanning `j` along `Y` with `x_i` fixed.
    Rows,
    /// Emit column `j` from column `j - 1`, scanning `i` along `X` with `y_j` fixed.
    Columns,
}

/// Which member of the input pair is the high bit of the column label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BitOrder {
    DiffHigh,
    SymbolHigh,
}

/// How a line whose fixed symbol is 0 is fed to the machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroSymbolHandling {
    /// Complement the scanned sequence, so the symbol bit means "matches".
    ComplementSequence,
    /// Feed raw symbols but exchange the symbol-0 and symbol-1 table columns.
    SwapSymbolColumns,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FsmConfig {
    pub scan: ScanAxis,
    pub initial_state: u8,
    pub bit_order: BitOrder,
    pub zero_symbol: ZeroSymbolHandling,
}

impl FsmConfig {
    /// The checked-in calibration result, `data/fsm_config.toml`.
    pub fn frozen() -> FsmConfig {
        FsmConfig::from_toml(FROZEN_CONFIG).expect("data/fsm_config.toml is well formed")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| LcsError::Malformed(e.to_string()))?;
        if config.initial_state as usize >= STATES {
            return Err(LcsError::StateOutOfRange(config.initial_state));
        }
        Ok(config)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plain data serializes")
    }

    /// Column label for differential bit `diff` and raw symbol `symbol` on a
    /// line whose fixed symbol is `fixed`.
    #[inline]
    fn input(&self, diff: u8, symbol: u8, fixed: u8) -> u8 {
        let b = match self.zero_symbol {
            ZeroSymbolHandling::ComplementSequence => symbol ^ fixed ^ 1,
            ZeroSymbolHandling::SwapSymbolColumns => symbol,
        };
        let label = match self.bit_order {
            BitOrder::DiffHigh => (diff << 1) | b,
            BitOrder::SymbolHigh => (b << 1) | diff,
        };
        match (self.zero_symbol, fixed) {
            (ZeroSymbolHandling::SwapSymbolColumns, 0) => {
                let symbol_bit = match self.bit_order {
                    BitOrder::DiffHigh => 0b01,
                    BitOrder::SymbolHigh => 0b10,
                };
                label ^ symbol_bit
            }
            _ => label,
        }
    }
}

impl fmt::Display for FsmConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scan = match self.scan {
            ScanAxis::Rows => "rows",
            ScanAxis::Columns => "columns",
        };
        let order = match self.bit_order {
            BitOrder::DiffHigh => "diff-high",
            BitOrder::SymbolHigh => "symbol-high",
        };
        let zero = match self.zero_symbol {
            ZeroSymbolHandling::ComplementSequence => "complement-sequence",
            ZeroSymbolHandling::SwapSymbolColumns => "swap-symbol-columns",
        };
        write!(f, "scan={scan} initial_state={} bit_order={order} zero_symbol={zero}", self.initial_state)
    }
}

/// Every reading the calibration tries, in report order:
/// scan axis x initial state x bit order x zero-symbol handling.
pub fn candidate_configs() -> Vec<FsmConfig> {
    let mut out = Vec::with_capacity(32);
    for scan in [ScanAxis::Rows, ScanAxis::Columns] {
        for initial_state in 0..STATES as u8 {
            for bit_order in [BitOrder::DiffHigh, BitOrder::SymbolHigh] {
                for zero_symbol in [ZeroSymbolHandling::ComplementSequence, ZeroSymbolHandling::SwapSymbolColumns] {
                    out.push(FsmConfig { scan, initial_state, bit_order, zero_symbol });
                }
            }
        }
    }
    out
}

fn run_line(spec: &FsmSpec, config: &FsmConfig, prev: &[u8], along: &[u8], fixed: u8) -> Vec<u8> {
    let mut state = config.initial_state;
    prev.iter()
        .zip(along)
        .map(|(&diff, &symbol)| {
            let (next, out) = spec.step_unchecked(state, config.input(diff, symbol, fixed));
            state = next;
            out
        })
        .collect()
}

fn run_table(spec: &FsmSpec, config: &FsmConfig, x: &BinarySequence, y: &BinarySequence) -> DiffTable {
    let (xs, ys) = (x.to_symbols(), y.to_symbols());
    let (m, n) = (xs.len(), ys.len());
    match config.scan {
        ScanAxis::Rows => {
            let mut prev = vec![0u8; n];
            let rows = xs
                .iter()
                .map(|&a| {
                    prev = run_line(spec, config, &prev, &ys, a);
                    DiffRow(prev.clone())
                })
                .collect();
            DiffTable { n, rows }
        }
        ScanAxis::Columns => {
            let mut rows = vec![vec![0u8; n]; m];
            let mut prev = vec![0u8; m];
            for (j, &b) in ys.iter().enumerate() {
                prev = run_line(spec, config, &prev, &xs, b);
                for (row, &t) in rows.iter_mut().zip(&prev) {
                    row[j] = t;
                }
            }
            DiffTable { n, rows: rows.into_iter().map(DiffRow).collect() }
        }
    }
}

/// Pairs plus their oracle differential tables.
#[derive(Debug, Clone)]
pub struct CalibrationSuite {
    cases: Vec<(BinarySequence, BinarySequence, DiffTable)>,
}

impl CalibrationSuite {
    /// All pairs with `m, n <= 6` plus 1000 seeded random pairs with `m, n <= 64`.
    pub fn standard() -> Self {
        let small: Vec<_> = all_sequences_up_to(CALIBRATION_EXHAUSTIVE_MAX).collect();
        let mut pairs = Vec::with_capacity(small.len() * small.len() + CALIBRATION_RANDOM_PAIRS);
        for x in &small {
            for y in &small {
                pairs.push((x.clone(), y.clone()));
            }
        }
        for k in 0..CALIBRATION_RANDOM_PAIRS {
            let mut rng = SeedSpec::new(CALIBRATION_SEED, k as u64).rng();
            let m = rng.gen_range(0..=CALIBRATION_RANDOM_MAX);
            let n = rng.gen_range(0..=CALIBRATION_RANDOM_MAX);
            let x = BinarySequence::random_from(&mut rng, m);
            let y = BinarySequence::random_from(&mut rng, n);
            pairs.push((x, y));
        }
        Self::from_pairs(pairs)
    }

    pub fn from_pairs(pairs: Vec<(BinarySequence, BinarySequence)>) -> Self {
        let cases = pairs
            .into_par_iter()
            .map(|(x, y)| {
                let t = diff_table(&x, &y);
                (x, y, t)
            })
            .collect();
        Self { cases }
    }

    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    fn check(&self, spec: &FsmSpec, config: &FsmConfig) -> CandidateOutcome {
        for (x, y, expected) in &self.cases {
            let got = run_table(spec, config, x, y);
            for i in 1..=expected.m() {
                for j in 1..=expected.n() {
                    if got.get(i, j) != expected.get(i, j) {
                        return CandidateOutcome::Mismatch(Mismatch {
                            x: x.clone(),
                            y: y.clone(),
                            i,
                            j,
                            expected: expected.get(i, j),
                            found: got.get(i, j),
                        });
                    }
                }
            }
        }
        CandidateOutcome::Survived
    }
}

/// First disagreement between a candidate machine and the DP oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub x: BinarySequence,
    pub y: BinarySequence,
    pub i: usize,
    pub j: usize,
    pub expected: u8,
    pub found: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateOutcome {
    Survived,
    Mismatch(Mismatch),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateResult {
    pub config: FsmConfig,
    pub outcome: CandidateOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CalibrationReport {
    pub pairs_checked: usize,
    pub results: Vec<CandidateResult>,
}

impl CalibrationReport {
    pub fn survivors(&self) -> Vec<FsmConfig> {
        self.results.iter().filter(|r| r.outcome == CandidateOutcome::Survived).map(|r| r.config).collect()
    }

    /// The config the repo freezes: the first survivor in enumeration order.
    pub fn first_survivor(&self) -> Option<FsmConfig> {
        self.survivors().into_iter().next()
    }

    /// Survivors, or the whole report when none survived.
    pub fn into_result(self) -> std::result::Result<Vec<FsmConfig>, CalibrationReport> {
        let survivors = self.survivors();
        if survivors.is_empty() {
            Err(self)
        } else {
            Ok(survivors)
        }
    }
}

impl fmt::Display for CalibrationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "fsm calibration: {} candidates, {} pairs (all m,n <= {CALIBRATION_EXHAUSTIVE_MAX}; \
             {CALIBRATION_RANDOM_PAIRS} random m,n <= {CALIBRATION_RANDOM_MAX}, seed {CALIBRATION_SEED:#x})",
            self.results.len(),
            self.pairs_checked
        )?;
        for r in &self.results {
            match &r.outcome {
                CandidateOutcome::Survived => writeln!(f, "PASS {}", r.config)?,
                CandidateOutcome::Mismatch(mm) => writeln!(
                    f,
                    "FAIL {} first mismatch X={} Y={} i={} j={} expected={} found={}",
                    r.config,
                    if mm.x.is_empty() { "-".to_string() } else { mm.x.to_string() },
                    if mm.y.is_empty() { "-".to_string() } else { mm.y.to_string() },
                    mm.i,
                    mm.j,
                    mm.expected,
                    mm.found
                )?,
            }
        }
        let survivors = self.survivors();
        match survivors.first() {
            Some(first) => writeln!(f, "survivors: {}; frozen: {first}", survivors.len()),
            None => writeln!(f, "survivors: 0"),
        }
    }
}

/// Tries every candidate reading of `spec` against the standard suite.
pub fn calibrate_fsm(spec: &FsmSpec) -> CalibrationReport {
    calibrate_fsm_on(spec, &CalibrationSuite::standard())
}

pub fn calibrate_fsm_on(spec: &FsmSpec, suite: &CalibrationSuite) -> CalibrationReport {
    let results = candidate_configs()
        .into_par_iter()
        .map(|config| CandidateResult { config, outcome: suite.check(spec, &config) })
        .collect();
    CalibrationReport { pairs_checked: suite.len(), results }
}

/// A machine whose reading has been checked against the calibration suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CalibratedFsm {
    spec: FsmSpec,
    config: FsmConfig,
}

impl CalibratedFsm {
    /// Validates `config` against the standard suite.
    pub fn new(spec: FsmSpec, config: FsmConfig) -> Result<Self> {
        match CalibrationSuite::standard().check(&spec, &config) {
            CandidateOutcome::Survived => Ok(Self { spec, config }),
            CandidateOutcome::Mismatch(mm) => Err(LcsError::UncalibratedConfig(format!(
                "{config}: X={} Y={} differs at ({}, {})",
                mm.x, mm.y, mm.i, mm.j
            ))),
        }
    }

    /// Published tables under the frozen config, validated once per process.
    pub fn published() -> &'static CalibratedFsm {
        static MACHINE: LazyLock<CalibratedFsm> = LazyLock::new(|| {
            CalibratedFsm::new(FsmSpec::published().clone(), FsmConfig::frozen())
                .expect("frozen fsm config passes calibration")
        });
        &MACHINE
    }

    pub fn spec(&self) -> &FsmSpec {
        &self.spec
    }

    pub fn config(&self) -> &FsmConfig {
        &self.config
    }

    /// Emits the next line of the differential table from the previous one.
    ///
    /// For a column-scanning machine `prev` is column `j - 1`, `along` is
    /// `X` and `fixed` is `y_j`; for a row-scanning one `prev` is row
    /// `i - 1`, `along` is `Y` and `fixed` is `x_i`. The first line reads an
    /// all-zero `prev`.
    pub fn fsm_line(&self, prev: &[u8], along: &BinarySequence, fixed: u8) -> Result<Vec<u8>> {
        if prev.len() != along.len() {
            return Err(LcsError::LengthMismatch { expected: along.len(), found: prev.len() });
        }
        if fixed > 1 {
            return Err(LcsError::InvalidArgument(format!("fixed symbol {fixed} is not 0 or 1")));
        }
        Ok(run_line(&self.spec, &self.config, prev, &along.to_symbols(), fixed))
    }

    pub fn diff_table(&self, x: &BinarySequence, y: &BinarySequence) -> DiffTable {
        run_table(&self.spec, &self.config, x, y)
    }

    /// `L(X, Y)` keeping only one line of the differential table.
    pub fn lcs_length(&self, x: &BinarySequence, y: &BinarySequence) -> usize {
        let (xs, ys) = (x.to_symbols(), y.to_symbols());
        match self.config.scan {
            ScanAxis::Columns => {
                let mut col = vec![0u8; xs.len()];
                for &b in &ys {
                    col = run_line(&self.spec, &self.config, &col, &xs, b);
                }
                col.iter().map(|&t| t as usize).sum()
            }
            ScanAxis::Rows => {
                let mut row = vec![0u8; ys.len()];
                let mut total = 0;
                for &a in &xs {
                    row = run_line(&self.spec, &self.config, &row, &ys, a);
                    total += row.last().copied().unwrap_or(0) as usize;
                }
                total
            }
        }
    }
}
