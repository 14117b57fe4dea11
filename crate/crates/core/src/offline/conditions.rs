//! Executable necessary conditions for optimality.
//!
//! Each check returns the list of conditions that fail; an empty list means
//! the vector passes. Indices are 1-based.

use std::fmt;

use super::{inter_update_balancing, BalancingSegment};
use crate::model::{InterUpdateVector, SingleHopInstance};
use crate::tolerance;

#[derive(Debug, Clone, PartialEq)]
pub enum ConditionFailure {
    /// `xᵢ < xᵢ₊₁` for some `2 ≤ i ≤ N−1`.
    MiddleIncreasing { i: usize },
    /// `xᵢ > xᵢ₊₁` without a tight energy constraint at `i`.
    MiddleDropNotTight { i: usize },
    /// `x₁ > x₂` but `x₁ ≠ s₁ + d`.
    FirstDropNotTight,
    /// `x₁ < x₂` but some middle gap is above `2d`.
    FirstRiseWithSlack { i: usize },
    /// `x_N < x_{N+1}`.
    LastIncreasing,
    /// `x_N > x_{N+1}` with neither a tight constraint at `N` nor `x_N = 2d`.
    LastDropUnjustified,
    /// Balancing segments increase from one to the next.
    SegmentsIncreasing { segment: usize },
    /// A drop between segments is not on a tight energy constraint.
    SegmentDropNotTight { end: usize },
    /// Re-solving the prefix up to a tight index gives different values.
    RestrictionMismatch { j: usize },
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MiddleIncreasing { i } => write!(f, "x_{i} < x_{}", i + 1),
            Self::MiddleDropNotTight { i } => write!(f, "x_{i} > x_{} but prefix {i} is slack", i + 1),
            Self::FirstDropNotTight => f.write_str("x_1 > x_2 but x_1 != s_1 + d"),
            Self::FirstRiseWithSlack { i } => write!(f, "x_1 < x_2 but x_{i} > 2d"),
            Self::LastIncreasing => f.write_str("x_N < x_{N+1}"),
            Self::LastDropUnjustified => f.write_str("x_N > x_{N+1} with slack prefix and x_N > 2d"),
            Self::SegmentsIncreasing { segment } => write!(f, "segment {segment} exceeds its predecessor"),
            Self::SegmentDropNotTight { end } => write!(f, "segment drop after {end} is not tight"),
            Self::RestrictionMismatch { j } => write!(f, "restricted problem up to {j} disagrees"),
        }
    }
}

/// Is `Σ_{i≤j} xᵢ = s_j + j·d`? (`j` is 1-based, `1 ≤ j ≤ N`.)
fn prefix_tight(x: &[f64], inst: &SingleHopInstance, j: usize) -> bool {
    let prefix: f64 = x[..j].iter().sum();
    tolerance::approx_eq(prefix, inst.arrivals[j - 1] + j as f64 * inst.service)
}

/// The three structural properties every optimal inter-update vector has.
pub fn check_inter_update_conditions(x: &InterUpdateVector, inst: &SingleHopInstance) -> Vec<ConditionFailure> {
    let x = x.as_slice();
    let n = inst.arrivals.len();
    let two_d = 2.0 * inst.service;
    let mut out = Vec::new();
    if n == 0 || x.len() != n + 1 {
        return out;
    }
    // x[i-1] is xᵢ.
    for i in 2..n {
        let (a, b) = (x[i - 1], x[i]);
        if tolerance::strictly_greater(b, a) {
            out.push(ConditionFailure::MiddleIncreasing { i });
        } else if tolerance::strictly_greater(a, b) && !prefix_tight(x, inst, i) {
            out.push(ConditionFailure::MiddleDropNotTight { i });
        }
    }
    if n >= 2 {
        let (x1, x2) = (x[0], x[1]);
        if tolerance::strictly_greater(x1, x2) && !tolerance::approx_eq(x1, inst.arrivals[0] + inst.service) {
            out.push(ConditionFailure::FirstDropNotTight);
        }
        if tolerance::strictly_greater(x2, x1) {
            if let Some(i) = (2..=n).find(|&i| !tolerance::approx_eq(x[i - 1], two_d)) {
                out.push(ConditionFailure::FirstRiseWithSlack { i });
            }
        }
    }
    let (xn, xl) = (x[n - 1], x[n]);
    if tolerance::strictly_greater(xl, xn) {
        out.push(ConditionFailure::LastIncreasing);
    } else if tolerance::strictly_greater(xn, xl) && !prefix_tight(x, inst, n) && !tolerance::approx_eq(xn, two_d) {
        out.push(ConditionFailure::LastDropUnjustified);
    }
    out
}

/// Balancing output: segment values never increase, and every drop sits on a
/// tight energy-causality constraint.
pub fn check_balancing_conditions(
    x_e: &InterUpdateVector,
    segments: &[BalancingSegment],
    inst: &SingleHopInstance,
) -> Vec<ConditionFailure> {
    let mut out = Vec::new();
    for (k, pair) in segments.windows(2).enumerate() {
        let (prev, next) = (&pair[0], &pair[1]);
        if tolerance::strictly_greater(next.value, prev.value) {
            out.push(ConditionFailure::SegmentsIncreasing { segment: k + 2 });
        } else if tolerance::strictly_greater(prev.value, next.value) && !prefix_tight(x_e.as_slice(), inst, prev.end) {
            out.push(ConditionFailure::SegmentDropNotTight { end: prev.end });
        }
    }
    out
}

/// Wherever the energy constraint is tight at `j`, solving the problem that
/// ends at `s_j + d` with the first `j−1` arrivals reproduces `x₁ᵉ..xⱼᵉ`.
pub fn check_restriction_property(x_e: &InterUpdateVector, inst: &SingleHopInstance) -> Vec<ConditionFailure> {
    let x = x_e.as_slice();
    let mut out = Vec::new();
    for j in 1..=inst.arrivals.len() {
        if !prefix_tight(x, inst, j) {
            continue;
        }
        let sub = SingleHopInstance::new(inst.arrivals[..j - 1].to_vec(), inst.service, inst.arrivals[j - 1] + inst.service);
        let (sub_x, _) = inter_update_balancing(&sub);
        let agrees = sub_x.as_slice().iter().zip(&x[..j]).all(|(a, b)| tolerance::approx_eq(*a, *b));
        if !agrees {
            out.push(ConditionFailure::RestrictionMismatch { j });
        }
    }
    out
}
