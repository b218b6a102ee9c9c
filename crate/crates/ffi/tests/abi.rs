use std::ffi::{CStr, CString};
use std::ptr;

use lcs_lab::estimator::{estimate_gamma_with, estimate_psi};
use lcs_lab::{BinarySequence, Engine, SeedSpec};
use lcs_lab_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(lcs_lab_last_error_message()) }.to_str().unwrap().to_owned()
}

fn parse(s: &str) -> *mut LcsLabSequence {
    let c = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { lcs_lab_sequence_from_ascii(c.as_ptr(), &mut out) }, LcsLabStatus::Ok);
    out
}

const ENGINES: [LcsLabEngine; 4] = [LcsLabEngine::Dp, LcsLabEngine::Rows, LcsLabEngine::Fsm, LcsLabEngine::Poset];

#[test]
fn worked_example_through_every_engine() {
    let (x, y) = (parse("01101110"), parse("101001011"));
    unsafe {
        assert_eq!(lcs_lab_sequence_len(x), 8);
        for e in ENGINES {
            let mut l = 0usize;
            assert_eq!(lcs_lab_lcs_length(e, x, y, &mut l), LcsLabStatus::Ok);
            assert_eq!(l, 6, "{e:?}");
        }
        lcs_lab_sequence_free(x);
        lcs_lab_sequence_free(y);
    }
}

#[test]
fn random_and_packed_handles_match_library() {
    let expected = BinarySequence::random(300, SeedSpec::new(11, 4));
    let bytes = expected.to_packed_bytes();
    unsafe {
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(lcs_lab_sequence_random(300, 11, 4, &mut a), LcsLabStatus::Ok);
        assert_eq!(lcs_lab_sequence_from_packed(bytes.as_ptr(), bytes.len(), 300, &mut b), LcsLabStatus::Ok);
        let mut l = 0;
        assert_eq!(lcs_lab_lcs_length(LcsLabEngine::Rows, a, b, &mut l), LcsLabStatus::Ok);
        assert_eq!(l, 300);

        let y = parse("0110");
        let mut buf = [0usize; 301];
        let mut written = 0;
        assert_eq!(lcs_lab_prefix_lengths(a, y, buf.as_mut_ptr(), 10, &mut written), LcsLabStatus::BufferTooSmall);
        assert_eq!(written, 301);
        assert!(last_error().contains("301"));
        assert_eq!(lcs_lab_prefix_lengths(a, y, buf.as_mut_ptr(), buf.len(), &mut written), LcsLabStatus::Ok);
        let other = BinarySequence::from_ascii("0110").unwrap();
        assert_eq!(&buf[..], &lcs_lab::dp::prefix_lengths(&expected, &other)[..]);
        assert!(last_error().is_empty());

        let mut short = ptr::null_mut();
        assert_eq!(lcs_lab_sequence_from_packed(bytes.as_ptr(), 1, 9, &mut short), LcsLabStatus::InvalidArgument);
        assert!(short.is_null());

        for p in [a, b, y] {
            lcs_lab_sequence_free(p);
        }
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut out = ptr::null_mut();
        let bad = CString::new("01201").unwrap();
        assert_eq!(lcs_lab_sequence_from_ascii(bad.as_ptr(), &mut out), LcsLabStatus::InvalidSymbol);
        assert!(last_error().contains("position"));
        assert!(out.is_null());
        assert_eq!(lcs_lab_sequence_from_ascii(ptr::null(), &mut out), LcsLabStatus::NullPointer);
        assert_eq!(
            lcs_lab_lcs_length(LcsLabEngine::Dp, ptr::null(), ptr::null(), ptr::null_mut()),
            LcsLabStatus::NullPointer
        );
        assert_eq!(lcs_lab_sequence_len(ptr::null()), 0);
        lcs_lab_sequence_free(ptr::null_mut());
        lcs_lab_string_free(ptr::null_mut());

        let mut v = 0.0;
        assert_eq!(lcs_lab_psi_star(3.0, &mut v), LcsLabStatus::InvalidArgument);
        let mut s = std::mem::zeroed::<LcsLabTrialStats>();
        assert_eq!(lcs_lab_estimate_gamma(LcsLabEngine::Rows, 10, 1, 1, &mut s), LcsLabStatus::InvalidArgument);
        assert!(!last_error().is_empty());
    }
}

#[test]
fn embedding_probabilities() {
    unsafe {
        let mut p = 0.0;
        assert_eq!(lcs_lab_embed_prob(2, 3, &mut p), LcsLabStatus::Ok);
        assert_eq!(p, 0.5);
        let mut s = ptr::null_mut();
        assert_eq!(lcs_lab_embed_prob_exact(3, 6, &mut s), LcsLabStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "21/32");
        lcs_lab_string_free(s);
    }
}

#[test]
fn estimators_match_library() {
    unsafe {
        for e in ENGINES {
            let mut s = std::mem::zeroed::<LcsLabTrialStats>();
            assert_eq!(lcs_lab_estimate_gamma(e, 64, 8, 3, &mut s), LcsLabStatus::Ok);
            let lib = estimate_gamma_with(Engine::from(e), 64, 8, 3).unwrap();
            assert_eq!(
                (s.m, s.n, s.trials, s.mean, s.err, s.seed),
                (lib.m, lib.n, lib.trials, lib.mean, lib.err, lib.seed)
            );
        }
        let mut p = std::mem::zeroed::<LcsLabPsiPoint>();
        assert_eq!(lcs_lab_estimate_psi(LcsLabEngine::Rows, 1.0, 200, 6, 2, &mut p), LcsLabStatus::Ok);
        let lib = estimate_psi(1.0, 200, 6, 2).unwrap();
        assert_eq!(p.estimate, lib.estimate);
        assert!(p.has_analytic);
        assert_eq!(Some(p.analytic), lib.analytic);
        assert_eq!(lcs_lab_estimate_psi(LcsLabEngine::Rows, 0.3, 200, 6, 2, &mut p), LcsLabStatus::Ok);
        assert!(!p.has_analytic && p.analytic.is_nan());

        let mut v = 0.0;
        assert_eq!(lcs_lab_psi_star(2.0, &mut v), LcsLabStatus::Ok);
        assert_eq!(v, 1.0);
        assert_eq!(lcs_lab_rng_version(), lcs_lab::sequence::RNG_VERSION);
    }
}
