//! Thread-local counter of scalar ring operations.
//!
//! Every `Scalar` add/sub/mul/neg bumps the counter once, so benchmark and
//! complexity tests can measure arithmetic cost independent of wall time.
//! The counter is per thread: concurrent test threads do not disturb each
//! other's measurements.

use std::cell::Cell;

thread_local! {
    static SCALAR_OPS: Cell<u64> = const { Cell::new(0) };
}

pub(crate) fn bump() {
    SCALAR_OPS.with(|c| c.set(c.get() + 1));
}

/// Scalar ring operations performed by the current thread since the last reset.
pub fn scalar_ops() -> u64 {
    SCALAR_OPS.with(Cell::get)
}

pub fn reset_scalar_ops() {
    SCALAR_OPS.with(|c| c.set(0));
}
