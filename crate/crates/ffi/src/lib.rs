//! C ABI over `lcs_lab`.
//!
//! Every entry point returns an [`LcsLabStatus`] and writes results through
//! out-pointers. On failure a message is available from
//! [`lcs_lab_last_error_message`] on the same thread. Panics never cross the
//! boundary; they come back as [`LcsLabStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lcs_lab::combinatorics;
use lcs_lab::estimator;
use lcs_lab::{BinarySequence, Engine, LcsError, SeedSpec, TrialStats};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcsLabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidSymbol = 2,
    InvalidArgument = 3,
    BufferTooSmall = 4,
    BudgetExceeded = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcsLabEngine {
    Dp = 0,
    Rows = 1,
    Fsm = 2,
    Poset = 3,
}

impl From<LcsLabEngine> for Engine {
    fn from(e: LcsLabEngine) -> Self {
        match e {
            LcsLabEngine::Dp => Engine::Dp,
            LcsLabEngine::Rows => Engine::Rows,
            LcsLabEngine::Fsm => Engine::Fsm,
            LcsLabEngine::Poset => Engine::Poset,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcsLabTrialStats {
    pub m: usize,
    pub n: usize,
    pub trials: usize,
    pub mean: f64,
    /// Standard error of `mean`.
    pub err: f64,
    pub seed: u64,
}

impl From<TrialStats> for LcsLabTrialStats {
    fn from(s: TrialStats) -> Self {
        LcsLabTrialStats { m: s.m, n: s.n, trials: s.trials, mean: s.mean, err: s.err, seed: s.seed }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcsLabPsiPoint {
    pub alpha: f64,
    pub n: usize,
    pub m: usize,
    pub estimate: f64,
    pub err: f64,
    pub trials: usize,
    pub seed: u64,
    /// Only meaningful when `has_analytic` is set.
    pub analytic: f64,
    pub has_analytic: bool,
}

/// Opaque handle to a binary sequence. Free with [`lcs_lab_sequence_free`].
pub struct LcsLabSequence {
    inner: BinarySequence,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(LcsLabStatus, String);

impl From<LcsError> for Failure {
    fn from(e: LcsError) -> Self {
        let status = match e {
            LcsError::InvalidSymbol { .. } => LcsLabStatus::InvalidSymbol,
            LcsError::BudgetExceeded { .. } => LcsLabStatus::BudgetExceeded,
            _ => LcsLabStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(LcsLabStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LcsLabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            LcsLabStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("panic: {msg}"));
            LcsLabStatus::Panic
        }
    }
}

unsafe fn seq<'a>(p: *const LcsLabSequence, what: &str) -> Result<&'a BinarySequence, Failure> {
    p.as_ref().map(|s| &s.inner).ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn boxed(inner: BinarySequence) -> *mut LcsLabSequence {
    Box::into_raw(Box::new(LcsLabSequence { inner }))
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next `lcs_lab_*` call on this thread.
#[no_mangle]
pub extern "C" fn lcs_lab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Version of the trial random-number scheme; results are reproducible only
/// between builds reporting the same value.
#[no_mangle]
pub extern "C" fn lcs_lab_rng_version() -> u32 {
    lcs_lab::sequence::RNG_VERSION
}

/// Parse a NUL-terminated string of '0'/'1'.
///
/// # Safety
/// `text` must be NULL or a valid NUL-terminated string; `out` must be NULL
/// or writable.
#[no_mangle]
pub unsafe extern "C" fn lcs_lab_sequence_from_ascii(
    text: *const c_char,
    out: *mut *mut LcsLabSequence,
) -> LcsLabStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| Failure(LcsLabStatus::InvalidSymbol, e.to_string()))?;
        let x = BinarySequence::from_ascii(s)?;
        write(out, boxed(x), "out")
    })
}

/// Build a sequence of `len` symbols from packed bytes, least significant
/// bit first within each byte.
///
/// # Safety
/// `bytes` must point to `byte_len` readable bytes (it may be NULL when
/// `byte_len` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcs_lab_sequence_from_packed(
    bytes: *const u8,
    byte_len: usize,
    len: usize,
    out: *mut *mut LcsLabSequence,
) -> LcsLabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let data: &[u8] = if byte_len == 0 {
            &[]
        } else if bytes.is_null() {
            return Err(null("bytes"));
        } else {
            std::slice::from_raw_parts(bytes, byte_len)
        };
        let x = BinarySequence::from_packed_bytes(data, len)?;
        write(out, boxed(x), "out")
    })
}

/// Uniform random sequence from the (`master`, `stream`) seed pair.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcs_lab_sequence_random(
    len: usize,
    master: u64,
    stream: u64,
    out: *mut *mut LcsLabSequence,
) -> LcsLabStatus {
    guard(|| write(out, boxed(BinarySequence::random(len, SeedSpec::new(master, stream))), "out"))
}

/// Length of `seq`, or 0 for NULL.
///
/// # Safety
/// `seq` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lcs_lab_sequence_len(seq: *const LcsLabSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.inner.len())
}

/// # Safety
/// `seq` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lcs_lab_sequence_free(seq: *mut LcsLabSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// # Safety
/// `x` and `y` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcs_lab_lcs_length(
    engine: LcsLabEngine,
    x: *const LcsLabSequence,
    y: *const LcsLabSequence,
    out: *mut usize,
) -> LcsLabStatus {
    guard(|| {
        let (x, y) = (seq(x, "x")?, seq(y, "y")?);
        write(out, Engine::from(engine).lcs_length(x, y), "out")
    })
}

/// Writes `L(X[..k], Y)` for k = 0..=len(X) into `buf`. `written` always
/// receives the number of entries required; if `capacity` is smaller, nothing
/// is copied and `BufferTooSmall` is returned.
///
/// # Safety
/// `buf` must have room for `capacity` values; `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcs_lab_prefix_lengths(
    x: *const LcsLabSequence,
    y: *const LcsLabSequence,
    buf: *mut usize,
    capacity: usize,
    written: *mut usize,
) -> LcsLabStatus {
    guard(|| {
        let (x, y) = (seq(x, "x")?, seq(y, "y")?);
        let needed = x.len() + 1;
        write(written, needed, "written")?;
        if capacity < needed {
            return Err(Failure(LcsLabStatus::BufferTooSmall, format!("need {needed} entries, capacity {capacity}")));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        let p = lcs_lab::rows::prefix_lengths(x, y);
        ptr::copy_nonoverlapping(p.as_ptr(), buf, needed);
        Ok(())
    })
}

/// Probability that a fixed length-`m` pattern embeds in a uniform
/// length-`n` text, rounded to double.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcs_lab_embed_prob(m: usize, n: usize, out: *mut f64) -> LcsLabStatus {
    guard(|| write(out, combinatorics::embed_prob(m, n).to_f64(), "out"))
}

/// Same probability as an exact reduced fraction "a/b". Release the string
/// with [`lcs_lab_string_free`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcs_lab_embed_prob_exact(m: usize, n: usize, out: *mut *mut c_char) -> LcsLabStatus {
    guard(|| {
        let s = CString::new(combinatorics::embed_prob(m, n).to_string()).expect("no interior NUL");
        write(out, s.into_raw(), "out")
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lcs_lab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Monte Carlo estimate of `E L(n, n) / n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcs_lab_estimate_gamma(
    engine: LcsLabEngine,
    n: usize,
    trials: usize,
    seed: u64,
    out: *mut LcsLabTrialStats,
) -> LcsLabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = estimator::estimate_gamma_with(engine.into(), n, trials, seed)?;
        write(out, s.into(), "out")
    })
}

/// Monte Carlo estimate of `E L(floor(alpha n), n) / n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcs_lab_estimate_psi(
    engine: LcsLabEngine,
    alpha: f64,
    n: usize,
    trials: usize,
    seed: u64,
    out: *mut LcsLabPsiPoint,
) -> LcsLabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = estimator::estimate_psi_with(engine.into(), alpha, n, trials, seed)?;
        let point = LcsLabPsiPoint {
            alpha: p.alpha,
            n: p.n,
            m: p.m,
            estimate: p.estimate,
            err: p.err,
            trials: p.trials,
            seed: p.seed,
            analytic: p.analytic.unwrap_or(f64::NAN),
            has_analytic: p.analytic.is_some(),
        };
        write(out, point, "out")
    })
}

/// Closed-form curve value for `0.5 <= alpha <= 2`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcs_lab_psi_star(alpha: f64, out: *mut f64) -> LcsLabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        write(out, estimator::psi_star(alpha)?, "out")
    })
}
