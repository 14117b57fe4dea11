//! Floating-point comparison helpers shared by every module.
//!
//! All equality and inequality checks on times and durations go through these
//! so that the whole crate agrees on one tolerance.

/// Relative tolerance used for equality checks on times and durations.
pub const REL_TOL: f64 = 1e-9;

/// Absolute slack allowed when comparing against `reference`.
#[inline]
pub fn slack(reference: f64) -> f64 {
    REL_TOL * (1.0 + reference.abs())
}

#[inline]
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= slack(a.abs().max(b.abs()))
}

/// `a >= b` up to tolerance.
#[inline]
pub fn geq(a: f64, b: f64) -> bool {
    a >= b - slack(a.abs().max(b.abs()))
}

/// `a > b` by more than the tolerance.
#[inline]
pub fn strictly_greater(a: f64, b: f64) -> bool {
    !geq(b, a)
}
