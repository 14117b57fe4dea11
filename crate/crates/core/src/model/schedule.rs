use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{to_single_hop, SingleHopInstance, TwoHopInstance, Update};
use crate::tolerance;

/// Inter-update durations `x₁..x_{N+1}` of the single-hop problem.
///
/// `x₁ = t₁+d`, `xᵢ = tᵢ−tᵢ₋₁+d` for `2 ≤ i ≤ N`, and `x_{N+1} = T−t_N`, so the
/// age area equals `½Σxᵢ² − ½Nd²` and the constraints become linear in `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InterUpdateVector(pub Vec<f64>);

/// A broken [`InterUpdateVector`] invariant; indices are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub enum GapViolation {
    Length { expected: usize, actual: usize },
    Sum { expected: f64, actual: f64 },
    EnergyCausality { k: usize, prefix: f64, required: f64 },
    MinimumGap { i: usize, value: f64, required: f64 },
}

impl fmt::Display for GapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapViolation::Length { expected, actual } => write!(f, "expected {expected} entries, found {actual}"),
            GapViolation::Sum { expected, actual } => write!(f, "sum is {actual}, expected T+Nd = {expected}"),
            GapViolation::EnergyCausality { k, prefix, required } => {
                write!(f, "prefix sum up to {k} is {prefix} < s_k + k*d = {required}")
            }
            GapViolation::MinimumGap { i, value, required } => write!(f, "x_{i} = {value} < {required}"),
        }
    }
}

impl InterUpdateVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ xᵢ²`, the objective of the convex reformulation.
    pub fn objective(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    /// Every constraint of the convex reformulation that `self` breaks.
    pub fn violations(&self, inst: &SingleHopInstance) -> Vec<GapViolation> {
        let n = inst.len();
        let d = inst.service;
        let mut out = Vec::new();
        if self.len() != n + 1 {
            out.push(GapViolation::Length { expected: n + 1, actual: self.len() });
            return out;
        }
        let expected = inst.deadline + n as f64 * d;
        let actual: f64 = self.0.iter().sum();
        if !tolerance::approx_eq(actual, expected) {
            out.push(GapViolation::Sum { expected, actual });
        }
        let mut prefix = 0.0;
        for (k, (&x, &s)) in self.0.iter().zip(&inst.arrivals).enumerate() {
            prefix += x;
            let required = s + (k + 1) as f64 * d;
            if !tolerance::geq(prefix, required) {
                out.push(GapViolation::EnergyCausality { k: k + 1, prefix, required });
            }
        }
        for (i, &x) in self.0.iter().enumerate().take(n).skip(1) {
            if !tolerance::geq(x, 2.0 * d) {
                out.push(GapViolation::MinimumGap { i: i + 1, value: x, required: 2.0 * d });
            }
        }
        let last = self.0[n];
        if !tolerance::geq(last, d) {
            out.push(GapViolation::MinimumGap { i: n + 1, value: last, required: d });
        }
        out
    }

    pub fn is_feasible_for(&self, inst: &SingleHopInstance) -> bool {
        self.violations(inst).is_empty()
    }
}

/// Transmission epochs for a single-hop channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingleHopSchedule {
    pub tx: Vec<f64>,
    pub deliveries: Vec<f64>,
}

impl SingleHopSchedule {
    /// Rebuilds transmission times from inter-update durations.
    pub fn from_inter_update(x: &InterUpdateVector, inst: &SingleHopInstance) -> Self {
        let d = inst.service;
        let n = inst.len();
        // tᵢ = tᵢ₋₁ + xᵢ − d with t₀ = 0, i.e. t₁ = x₁ − d.
        let mut tx = Vec::with_capacity(n);
        let mut prev = 0.0;
        for (i, &xi) in x.0[..n].iter().enumerate() {
            let t = if i == 0 { xi - d } else { prev + xi - d };
            tx.push(t);
            prev = t;
        }
        let deliveries = tx.iter().map(|t| t + d).collect();
        Self { tx, deliveries }
    }

    pub fn updates(&self) -> Vec<Update> {
        self.tx
            .iter()
            .zip(&self.deliveries)
            .map(|(&g, &r)| Update { generated: g, delivered: r })
            .collect()
    }
}

/// Transmission epochs at source (`tᵢ`) and relay (`t̄ᵢ`) plus delivery
/// epochs `t̄ᵢ + d̄`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoHopSchedule {
    pub source_tx: Vec<f64>,
    pub relay_tx: Vec<f64>,
    pub deliveries: Vec<f64>,
}

/// A broken [`TwoHopSchedule`] constraint; `i` is 1-based.
#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleViolation {
    Length,
    SourceEnergy { i: usize },
    RelayEnergy { i: usize },
    DataCausality { i: usize },
    HalfDuplex { i: usize },
    Deadline,
}

impl fmt::Display for ScheduleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleViolation::Length => write!(f, "schedule length does not match instance"),
            ScheduleViolation::SourceEnergy { i } => write!(f, "t_{i} < s_{i}"),
            ScheduleViolation::RelayEnergy { i } => write!(f, "relay t_{i} < relay s_{i}"),
            ScheduleViolation::DataCausality { i } => write!(f, "t_{i} + d > relay t_{i}"),
            ScheduleViolation::HalfDuplex { i } => write!(f, "relay t_{i} + d_bar > t_{}", i + 1),
            ScheduleViolation::Deadline => write!(f, "last delivery after T"),
        }
    }
}

impl TwoHopSchedule {
    pub fn new(source_tx: Vec<f64>, relay_tx: Vec<f64>, relay_service: f64) -> Self {
        let deliveries = relay_tx.iter().map(|t| t + relay_service).collect();
        Self { source_tx, relay_tx, deliveries }
    }

    pub fn len(&self) -> usize {
        self.source_tx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source_tx.is_empty()
    }

    /// Updates as seen by the destination: generated at `tᵢ`, delivered at `t̄ᵢ+d̄`.
    pub fn updates(&self) -> Vec<Update> {
        self.source_tx
            .iter()
            .zip(&self.deliveries)
            .map(|(&g, &r)| Update { generated: g, delivered: r })
            .collect()
    }

    pub fn violations(&self, inst: &TwoHopInstance) -> Vec<ScheduleViolation> {
        let n = inst.len();
        if self.source_tx.len() != n || self.relay_tx.len() != n || self.deliveries.len() != n {
            return vec![ScheduleViolation::Length];
        }
        let (d, db) = (inst.source_service, inst.relay_service);
        let mut out = Vec::new();
        for i in 0..n {
            let (t, tb) = (self.source_tx[i], self.relay_tx[i]);
            if !tolerance::geq(t, inst.source_arrivals[i]) {
                out.push(ScheduleViolation::SourceEnergy { i: i + 1 });
            }
            if !tolerance::geq(tb, inst.relay_arrivals[i]) {
                out.push(ScheduleViolation::RelayEnergy { i: i + 1 });
            }
            if !tolerance::geq(tb, t + d) {
                out.push(ScheduleViolation::DataCausality { i: i + 1 });
            }
            if i + 1 < n && !tolerance::geq(self.source_tx[i + 1], tb + db) {
                out.push(ScheduleViolation::HalfDuplex { i: i + 1 });
            }
        }
        if n > 0 && !tolerance::geq(inst.deadline, self.relay_tx[n - 1] + db) {
            out.push(ScheduleViolation::Deadline);
        }
        out
    }

    /// Inter-update vector of the combined-node problem: `x₁ = t̄₁+d'`,
    /// `xᵢ = t̄ᵢ−t̄ᵢ₋₁+d'`, `x_{N+1} = T+d−t̄_N` with `d' = d+d̄`.
    pub fn to_inter_update(&self, inst: &TwoHopInstance) -> InterUpdateVector {
        let dp = inst.source_service + inst.relay_service;
        let mut x = Vec::with_capacity(self.len() + 1);
        let mut prev = None;
        for &tb in &self.relay_tx {
            x.push(match prev {
                None => tb + dp,
                Some(p) => tb - p + dp,
            });
            prev = Some(tb);
        }
        x.push(inst.deadline + inst.source_service - prev.unwrap_or(0.0));
        InterUpdateVector(x)
    }
}

/// Maps a solution of the combined single-hop problem back to the two-hop
/// network: `t̄₁ = x₁−d'`, `t̄ᵢ = t̄ᵢ₋₁+xᵢ−d'`, `tᵢ = t̄ᵢ−d`.
pub fn x_to_two_hop(x: &InterUpdateVector, inst: &TwoHopInstance) -> Result<TwoHopSchedule> {
    let n = inst.len();
    if x.len() != n + 1 {
        return Err(Error::Internal(format!("inter-update vector has {} entries, expected {}", x.len(), n + 1)));
    }
    let d = inst.source_service;
    let dp = d + inst.relay_service;
    let mut relay_tx = Vec::with_capacity(n);
    let mut prev = 0.0;
    for (i, &xi) in x.0[..n].iter().enumerate() {
        let tb = if i == 0 { xi - dp } else { prev + xi - dp };
        relay_tx.push(tb);
        prev = tb;
    }
    let source_tx = relay_tx.iter().map(|tb| tb - d).collect();
    let schedule = TwoHopSchedule::new(source_tx, relay_tx, inst.relay_service);
    let broken = schedule.violations(inst);
    if !broken.is_empty() {
        let list = broken.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        return Err(Error::Internal(format!("reconstructed schedule is infeasible: {list}")));
    }
    debug_assert!(x.is_feasible_for(&to_single_hop(inst)));
    Ok(schedule)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_two(t: f64) -> TwoHopInstance {
        TwoHopInstance::new(vec![0., 4., 4., 9., 13.], vec![1., 3., 6., 10., 12.], 1., 2., t)
    }

    fn example_one() -> TwoHopInstance {
        TwoHopInstance::new(vec![2., 6., 7., 11., 13.], vec![1., 4., 9., 10., 15.], 1., 2., 19.)
    }

    #[test]
    fn forward_recursion_example_two() {
        let x = InterUpdateVector(vec![5., 6., 6., 6., 6., 3.]);
        let s = x_to_two_hop(&x, &example_two(16.)).unwrap();
        assert_eq!(s.source_tx, vec![1., 4., 7., 10., 13.]);
        assert_eq!(s.relay_tx, vec![2., 5., 8., 11., 14.]);
        assert_eq!(s.deliveries, vec![4., 7., 10., 13., 16.]);
    }

    #[test]
    fn forward_recursion_example_one() {
        let x = InterUpdateVector(vec![6.5, 6.5, 6., 6., 6., 4.]);
        let s = x_to_two_hop(&x, &example_one()).unwrap();
        assert_eq!(s.source_tx, vec![2.5, 6., 9., 12., 15.]);
        assert_eq!(s.relay_tx, vec![3.5, 7., 10., 13., 16.]);
        assert_eq!(s.deliveries, vec![5.5, 9., 12., 15., 18.]);
    }

    #[test]
    fn single_update() {
        // d' = 2, T' = 3, s'₁ = 1: the only feasible point is x = [3, 2].
        let inst = TwoHopInstance::new(vec![0.], vec![0.], 1., 1., 2.);
        let s = x_to_two_hop(&InterUpdateVector(vec![3., 2.]), &inst).unwrap();
        assert_eq!((s.source_tx[0], s.relay_tx[0], s.deliveries[0]), (0., 1., 2.));
        assert!(x_to_two_hop(&InterUpdateVector(vec![2.5, 2.5]), &inst).is_err());
    }

    #[test]
    fn immediate_transmission_when_first_gap_is_minimal() {
        let inst = TwoHopInstance::new(vec![0.], vec![0.], 0., 1., 4.);
        let x = InterUpdateVector(vec![1., 4.]);
        let s = x_to_two_hop(&x, &inst).unwrap();
        assert_eq!(s.relay_tx, vec![0.]);
    }

    #[test]
    fn infeasible_reconstruction_is_an_internal_error() {
        let x = InterUpdateVector(vec![4., 6., 6., 6., 6., 4.]);
        assert!(matches!(x_to_two_hop(&x, &example_two(16.)), Err(Error::Internal(_))));
    }

    #[test]
    fn schedule_to_x_inverts_reconstruction() {
        let inst = example_one();
        let x = InterUpdateVector(vec![6.5, 6.5, 6., 6., 6., 4.]);
        let s = x_to_two_hop(&x, &inst).unwrap();
        assert_eq!(s.to_inter_update(&inst), x);
    }

    #[test]
    fn gap_violations_reported() {
        let inst = SingleHopInstance::new(vec![3., 7., 9., 12., 15.], 3., 20.);
        let xe = InterUpdateVector(vec![6.5, 6.5, 17. / 3., 17. / 3., 17. / 3., 5.]);
        let v = xe.violations(&inst);
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|e| matches!(e, GapViolation::MinimumGap { .. })));
        assert!(InterUpdateVector(vec![6.5, 6.5, 6., 6., 6., 4.]).is_feasible_for(&inst));
    }

    #[test]
    fn single_hop_schedule_from_x() {
        let inst = SingleHopInstance::new(vec![1., 5., 6., 10., 14.], 3., 17.);
        let s = SingleHopSchedule::from_inter_update(&InterUpdateVector(vec![5., 6., 6., 6., 6., 3.]), &inst);
        assert_eq!(s.tx, vec![2., 5., 8., 11., 14.]);
        assert_eq!(s.deliveries, vec![5., 8., 11., 14., 17.]);
    }
}
