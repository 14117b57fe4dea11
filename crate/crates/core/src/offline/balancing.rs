use serde::Serialize;

use crate::model::{InterUpdateVector, SingleHopInstance};
use crate::tolerance;

/// One run of the balancing pass: `x̄_start = … = x̄_end = value`.
///
/// Indices are 1-based and inclusive. `candidates[k]` is the averaged slope
/// for closing the segment at index `start + k`; the last entry is the
/// deadline candidate at index `N+1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalancingSegment {
    pub start: usize,
    pub end: usize,
    pub value: f64,
    pub candidates: Vec<f64>,
}

/// Largest index attaining the maximum (ties within tolerance go right).
fn last_argmax(values: &[f64]) -> (usize, f64) {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let idx = values
        .iter()
        .rposition(|&v| tolerance::approx_eq(v, max))
        .expect("non-empty candidate set");
    (idx, max)
}

/// Optimal inter-update durations under energy causality alone.
///
/// Starting from a reference point (initially time 0), each run picks the
/// arrival `j` maximizing the average slope `(s_j − ref)/(j − i)` over the
/// remaining arrivals and the deadline, then spreads updates evenly up to it.
/// Segments come out non-increasing and every drop sits on a tight energy
/// causality constraint.
///
/// Arrivals must be sorted. Works for any `N ≥ 0`.
pub fn inter_update_balancing(inst: &SingleHopInstance) -> (InterUpdateVector, Vec<BalancingSegment>) {
    let n = inst.arrivals.len();
    let d = inst.service;
    let tail = inst.deadline - d;

    let mut x = Vec::with_capacity(n + 1);
    let mut segments = Vec::new();
    let mut done = 0usize;
    let mut reference = 0.0;
    while done < n + 1 {
        let candidates: Vec<f64> = inst.arrivals[done..]
            .iter()
            .chain(std::iter::once(&tail))
            .enumerate()
            .map(|(k, &s)| (s - reference) / (k + 1) as f64)
            .collect();
        let (k, slope) = last_argmax(&candidates);
        let end = done + k + 1;
        let value = slope + d;
        x.extend(std::iter::repeat_n(value, end - done));
        segments.push(BalancingSegment { start: done + 1, end, value, candidates });
        if end == n + 1 {
            break;
        }
        reference = inst.arrivals[end - 1];
        done = end;
    }
    (InterUpdateVector(x), segments)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_worked_example() {
        let inst = SingleHopInstance::new(vec![3., 7., 9., 12., 15.], 3., 20.);
        let (x, segs) = inter_update_balancing(&inst);
        let expected = [6.5, 6.5, 17. / 3., 17. / 3., 17. / 3., 5.];
        for (a, b) in x.as_slice().iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{x:?}");
        }
        let spans: Vec<_> = segs.iter().map(|s| (s.start, s.end)).collect();
        assert_eq!(spans, vec![(1, 2), (3, 5), (6, 6)]);
    }

    #[test]
    fn two_run_illustration() {
        // i₁ = 2 with value s₂/2 + d = 9, then i₂ = N+1 = 4. The tail value is
        // fixed by Σx = T + Nd = 32.
        let inst = SingleHopInstance::new(vec![3., 10., 12.], 4., 20.);
        let (x, segs) = inter_update_balancing(&inst);
        assert_eq!(x.as_slice(), &[9., 9., 7., 7.]);
        assert_eq!(segs.len(), 2);
        assert_eq!((segs[0].end, segs[0].value), (2, 9.));
        assert_eq!(segs[0].candidates, vec![3., 5., 4., 4.]);
        assert_eq!((segs[1].end, segs[1].value), (4, 7.));
        assert_eq!(x.as_slice().iter().sum::<f64>(), 32.);
    }

    #[test]
    fn single_segment_when_deadline_dominates() {
        let inst = SingleHopInstance::new(vec![1., 5., 6., 10., 14.], 3., 19.);
        let (x, segs) = inter_update_balancing(&inst);
        for (a, b) in x.as_slice().iter().zip([5.8, 5.8, 5.8, 5.8, 5.8, 5.]) {
            assert!((a - b).abs() < 1e-12, "{x:?}");
        }
        assert_eq!(segs.len(), 2);
    }

    #[test]
    fn ties_pick_the_largest_index() {
        // s₁ = 2, s₂/2 = 2, (T−d)/3 = 2: one segment to N+1.
        let inst = SingleHopInstance::new(vec![2., 4.], 1., 7.);
        let (x, segs) = inter_update_balancing(&inst);
        assert_eq!(segs.len(), 1);
        assert_eq!(x.as_slice(), &[3., 3., 3.]);
    }

    #[test]
    fn empty_instance_is_one_gap() {
        let inst = SingleHopInstance::new(vec![], 2., 9.);
        let (x, _) = inter_update_balancing(&inst);
        assert_eq!(x.as_slice(), &[9.]);
    }
}
