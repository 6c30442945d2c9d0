//! Process-wide numeric tolerance and search limits.
//!
//! These are read on every comparison, so they are plain atomics. The CLI
//! sets them once from its flags before doing any work.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_STATES: usize = 1_000_000;
pub const DEFAULT_CHECK_LIMIT: usize = 5000;

static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0x3e11_2e0b_e826_d695); // 1e-9
static MAX_STATES: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_STATES);
static CHECK_LIMIT: AtomicUsize = AtomicUsize::new(DEFAULT_CHECK_LIMIT);

/// Absolute tolerance used for scalar equality and cancellation.
pub fn tolerance() -> f64 {
    f64::from_bits(TOLERANCE_BITS.load(Ordering::Relaxed))
}

pub fn set_tolerance(eps: f64) {
    assert!(eps >= 0.0 && eps.is_finite(), "tolerance must be a finite non-negative number");
    TOLERANCE_BITS.store(eps.to_bits(), Ordering::Relaxed);
}

/// Upper bound on search states visited by a single composition.
pub fn max_states() -> usize {
    MAX_STATES.load(Ordering::Relaxed)
}

pub fn set_max_states(n: usize) {
    MAX_STATES.store(n, Ordering::Relaxed);
}

/// Size guard for the exponential checks (game extension, incoherence
/// preservation). Objects with more maximal positions than this are reported
/// as skipped.
pub fn check_limit() -> usize {
    CHECK_LIMIT.load(Ordering::Relaxed)
}

pub fn set_check_limit(n: usize) {
    CHECK_LIMIT.store(n, Ordering::Relaxed);
}
