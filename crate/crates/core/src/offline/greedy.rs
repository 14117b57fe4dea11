use serde::Serialize;

use crate::error::Result;
use crate::model::{validate_two_hop, SingleHopInstance, SingleHopSchedule, TwoHopInstance, TwoHopSchedule};
use crate::tolerance;

/// Result of the greedy baseline.
///
/// If the recursion pushes a delivery past `T`, `schedule` holds only the
/// updates that make it in time and `within_deadline` is false.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreedyOutcome {
    pub schedule: TwoHopSchedule,
    pub within_deadline: bool,
}

/// Sends every update as early as energy and the previous update allow:
/// `t₁ = s₁`, `t̄ᵢ = max{s̄ᵢ, tᵢ+d}`, `tᵢ₊₁ = max{sᵢ₊₁, t̄ᵢ+d̄}`.
pub fn offline_greedy_two_hop(inst: &TwoHopInstance) -> Result<GreedyOutcome> {
    let (inst, _) = inst.normalize()?;
    validate_two_hop(&inst)?.into_result()?;
    let (d, db) = (inst.source_service, inst.relay_service);
    let mut source = Vec::with_capacity(inst.len());
    let mut relay = Vec::with_capacity(inst.len());
    let mut next_free = f64::NEG_INFINITY;
    let mut within_deadline = true;
    for (&s, &sb) in inst.source_arrivals.iter().zip(&inst.relay_arrivals) {
        let t = s.max(next_free);
        let tb = sb.max(t + d);
        if !tolerance::geq(inst.deadline, tb + db) {
            within_deadline = false;
            break;
        }
        source.push(t);
        relay.push(tb);
        next_free = tb + db;
    }
    Ok(GreedyOutcome { schedule: TwoHopSchedule::new(source, relay, db), within_deadline })
}

/// Single-hop counterpart: `t₁ = s₁`, `tᵢ₊₁ = max{sᵢ₊₁, tᵢ+d}`.
pub fn offline_greedy_single_hop(inst: &SingleHopInstance) -> Result<SingleHopSchedule> {
    let (inst, _) = inst.normalize()?;
    inst.validate()?.into_result()?;
    let mut tx = Vec::with_capacity(inst.len());
    let mut next_free = f64::NEG_INFINITY;
    for &s in &inst.arrivals {
        let t = s.max(next_free);
        tx.push(t);
        next_free = t + inst.service;
    }
    let deliveries = tx.iter().map(|t| t + inst.service).collect();
    Ok(SingleHopSchedule { tx, deliveries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_worked_example() {
        let inst = TwoHopInstance::new(vec![2., 6., 7., 11., 13.], vec![1., 4., 9., 10., 15.], 1., 2., 19.);
        let g = offline_greedy_two_hop(&inst).unwrap();
        assert!(g.within_deadline);
        assert_eq!(g.schedule.source_tx, vec![2., 6., 9., 12., 15.]);
        assert_eq!(g.schedule.relay_tx, vec![3., 7., 10., 13., 16.]);
    }

    #[test]
    fn second_worked_example() {
        let inst = TwoHopInstance::new(vec![0., 4., 4., 9., 13.], vec![1., 3., 6., 10., 12.], 1., 2., 16.);
        let g = offline_greedy_two_hop(&inst).unwrap();
        assert_eq!(g.schedule.source_tx, vec![0., 4., 7., 10., 13.]);
        assert_eq!(g.schedule.relay_tx, vec![1., 5., 8., 11., 14.]);
        assert!(g.schedule.violations(&inst).is_empty());
    }

    #[test]
    fn single_hop_back_to_back() {
        let inst = SingleHopInstance::new(vec![0., 0.5, 4.], 1., 6.);
        let g = offline_greedy_single_hop(&inst).unwrap();
        assert_eq!(g.tx, vec![0., 1., 4.]);
        assert_eq!(g.deliveries, vec![1., 2., 5.]);
    }
}
