use std::collections::BTreeSet;

use lcs_lab::dp::lcs_table;
use lcs_lab::fsm::{
    calibrate_fsm, candidate_configs, diff_table, fsm_step, reconstruct_lcs, CalibratedFsm, CalibrationSuite,
    FsmConfig, FsmSpec, ScanAxis, STATES,
};
use lcs_lab::sequence::all_sequences_up_to;
use lcs_lab::{dp, BinarySequence, SeedSpec};

const ARCHIVED_REPORT: &str = include_str!("../data/fsm_calibration_report.txt");

#[test]
fn reconstruction_inverts_differencing_exhaustively() {
    let seqs: Vec<_> = all_sequences_up_to(6).collect();
    for x in &seqs {
        for y in &seqs {
            let d = diff_table(x, y);
            assert!(d.rows().iter().all(|r| r.entries().iter().all(|&b| b <= 1)));
            assert_eq!(reconstruct_lcs(&d), lcs_table(x, y), "X={x} Y={y}");
        }
    }
}

#[test]
fn frozen_config_is_first_survivor_and_report_is_archived() {
    let report = calibrate_fsm(FsmSpec::published());
    assert_eq!(report.first_survivor(), Some(FsmConfig::frozen()));
    assert_eq!(report.to_string(), ARCHIVED_REPORT);
    // every row-scanning reading fails
    assert!(report.survivors().iter().all(|c| c.scan == ScanAxis::Columns));
}

#[test]
fn survivors_reproduce_diff_table_on_suite() {
    let report = calibrate_fsm(FsmSpec::published());
    let survivors = report.clone().into_result().expect("at least one survivor");
    let suite: Vec<_> = (0..200)
        .map(|k| {
            let x = BinarySequence::random(40 + k % 7, SeedSpec::new(77, 2 * k as u64));
            let y = BinarySequence::random(30 + k % 11, SeedSpec::new(77, 2 * k as u64 + 1));
            (x, y)
        })
        .collect();
    for config in survivors {
        let fsm = CalibratedFsm::new(FsmSpec::published().clone(), config).unwrap();
        for (x, y) in &suite {
            assert_eq!(fsm.diff_table(x, y), diff_table(x, y));
        }
    }
}

#[test]
fn failure_report_when_nothing_survives() {
    // a machine that always outputs 0 cannot match any table with a 1 in it
    let dead = FsmSpec::new([[0; 4]; 4], [[0; 4]; 4]).unwrap();
    let suite = CalibrationSuite::from_pairs(vec![("1".parse().unwrap(), "1".parse().unwrap())]);
    let report = lcs_lab::fsm::calibrate_fsm_on(&dead, &suite);
    assert!(report.survivors().is_empty());
    assert_eq!(report.results.len(), candidate_configs().len());
    let text = report.to_string();
    assert_eq!(text.matches("FAIL").count(), 32);
    assert!(text.contains("X=1 Y=1 i=1 j=1 expected=1 found=0"));
    assert!(report.into_result().is_err());
}

#[test]
fn fsm_lines_build_the_table_column_by_column() {
    let fsm = CalibratedFsm::published();
    let x: BinarySequence = "01101110".parse().unwrap();
    let y: BinarySequence = "101001011".parse().unwrap();
    let expected = diff_table(&x, &y);
    let mut col = vec![0u8; x.len()];
    for j in 1..=y.len() {
        col = fsm.fsm_line(&col, &x, y.symbol(j)).unwrap();
        for i in 1..=x.len() {
            assert_eq!(col[i - 1], expected.get(i, j));
        }
    }
    let l: usize = col.iter().map(|&b| b as usize).sum();
    assert_eq!(l, 6);
}

#[test]
fn fsm_length_matches_dp_on_random_pairs() {
    let fsm = CalibratedFsm::published();
    for k in 0..1000u64 {
        let m = (k as usize * 37) % 257;
        let n = (k as usize * 91 + 13) % 257;
        let x = BinarySequence::random(m, SeedSpec::new(0xF5, 2 * k));
        let y = BinarySequence::random(n, SeedSpec::new(0xF5, 2 * k + 1));
        assert_eq!(fsm.lcs_length(&x, &y), dp::lcs_length(&x, &y), "m={m} n={n}");
    }
}

/// States visited while the frozen column scan runs over `x` for every
/// column of `y`, starting from `initial`.
fn visited(spec: &FsmSpec, initial: u8, x: &BinarySequence, y: &BinarySequence) -> BTreeSet<u8> {
    let d = diff_table(x, y);
    let mut seen = BTreeSet::new();
    for j in 1..=y.len() {
        let mut s = initial;
        seen.insert(s);
        for i in 1..=x.len() {
            let a = d.get(i, j - 1);
            let b = u8::from(x.symbol(i) == y.symbol(j));
            s = fsm_step(spec, s, (a << 1) | b).unwrap().0;
            seen.insert(s);
        }
    }
    seen
}

#[test]
fn all_states_reachable_and_rows_distinct() {
    let spec = FsmSpec::published();
    let survivors = calibrate_fsm(spec).survivors();
    let mut seen = BTreeSet::new();
    for k in 0..50u64 {
        let x = BinarySequence::random(200, SeedSpec::new(0x5A, 2 * k));
        let y = BinarySequence::random(200, SeedSpec::new(0x5A, 2 * k + 1));
        for c in &survivors {
            seen.extend(visited(spec, c.initial_state, &x, &y));
        }
    }
    assert_eq!(seen.len(), STATES);
    for a in 0..STATES {
        for b in a + 1..STATES {
            assert!(
                spec.transition()[a] != spec.transition()[b] || spec.output()[a] != spec.output()[b],
                "states {a} and {b} have identical rows"
            );
        }
    }
}

#[test]
fn high_state_bit_is_behaviourally_redundant() {
    // states s and s ^ 2 emit the same outputs and move to states that again
    // differ only in bit 1, so they are bisimilar
    let spec = FsmSpec::published();
    for s in 0..2usize {
        for input in 0..4usize {
            assert_eq!(spec.output()[s][input], spec.output()[s + 2][input]);
            assert_eq!(spec.transition()[s][input] & 1, spec.transition()[s + 2][input] & 1);
        }
    }
}
