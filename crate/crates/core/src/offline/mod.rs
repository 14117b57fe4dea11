//! Exact offline solver for the two-hop AoI problem and its single-hop
//! reduction, plus the greedy baseline and executable optimality conditions.

mod amend;
mod balancing;
pub mod conditions;
mod greedy;
mod small_horizon;

use serde::Serialize;

pub use amend::{amend, Amendment};
pub use balancing::{inter_update_balancing, BalancingSegment};
pub use greedy::{offline_greedy_single_hop, offline_greedy_two_hop, GreedyOutcome};
pub use small_horizon::{is_small_horizon, solve_small_horizon};

use crate::error::{Error, Result};
use crate::model::{
    to_single_hop, validate_two_hop, x_to_two_hop, InputWarning, InterUpdateVector, SingleHopInstance, TwoHopInstance,
    TwoHopSchedule,
};

/// Which regime produced the final vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    SmallHorizon,
    BalancedFeasible,
    AmendedAtN0,
    AmendedViaSmallHorizonBranch,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Branch::SmallHorizon => "SmallHorizon",
            Branch::BalancedFeasible => "BalancedFeasible",
            Branch::AmendedAtN0 => "AmendedAtN0",
            Branch::AmendedViaSmallHorizonBranch => "AmendedViaSmallHorizonBranch",
        };
        f.write_str(s)
    }
}

/// Everything the solver decided along the way.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveTrace {
    pub branch: Branch,
    pub n0: Option<usize>,
    pub balancing_segments: Vec<BalancingSegment>,
    pub x_e: Option<InterUpdateVector>,
    pub x_star: InterUpdateVector,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<InputWarning>,
}

/// Minimizes `Σxᵢ²` for a single-hop instance.
///
/// Instances with `T < (N+1)d` use the closed form; all others run the
/// balancing pass and then amend the minimum-gap violations.
pub fn solve_single_hop(inst: &SingleHopInstance) -> Result<(InterUpdateVector, SolveTrace)> {
    let (inst, warnings) = inst.normalize()?;
    inst.validate()?.into_result()?;

    let trace = if is_small_horizon(&inst) {
        let x = solve_small_horizon(&inst)?;
        SolveTrace { branch: Branch::SmallHorizon, n0: None, balancing_segments: vec![], x_e: None, x_star: x, warnings }
    } else {
        let (x_e, segments) = inter_update_balancing(&inst);
        let (x, amendment) = amend(&x_e, &inst)?;
        SolveTrace {
            branch: amendment.branch,
            n0: amendment.n0,
            balancing_segments: segments,
            x_e: Some(x_e),
            x_star: x,
            warnings,
        }
    };

    let violations = trace.x_star.violations(&inst);
    if !violations.is_empty() {
        let msg = violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        return Err(Error::Internal(format!("solver output infeasible ({}): {msg}", trace.branch)));
    }
    Ok((trace.x_star.clone(), trace))
}

/// Optimal two-hop solution together with the reduced problem it came from.
#[derive(Debug, Clone, Serialize)]
pub struct TwoHopSolution {
    /// The instance after sorting/truncation.
    pub instance: TwoHopInstance,
    pub reduced: SingleHopInstance,
    pub schedule: TwoHopSchedule,
    pub trace: SolveTrace,
}

/// Solves a two-hop instance by reduction to a single hop with merged
/// arrivals `max{s̄ᵢ, sᵢ+d}`, service `d+d̄` and deadline `T+d`.
pub fn solve_two_hop(inst: &TwoHopInstance) -> Result<TwoHopSolution> {
    let (inst, mut warnings) = inst.normalize()?;
    validate_two_hop(&inst)?.into_result()?;
    let reduced = to_single_hop(&inst);
    let (x, mut trace) = solve_single_hop(&reduced)?;
    warnings.append(&mut trace.warnings);
    trace.warnings = warnings;
    let schedule = x_to_two_hop(&x, &inst)?;
    let violations = schedule.violations(&inst);
    if !violations.is_empty() {
        let msg = violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        return Err(Error::Internal(format!("two-hop schedule infeasible: {msg}")));
    }
    Ok(TwoHopSolution { instance: inst, reduced, schedule, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn dispatch_on_worked_examples() {
        let (x, t) = solve_single_hop(&SingleHopInstance::new(vec![3., 7., 9., 12., 15.], 3., 20.)).unwrap();
        assert!(close(x.as_slice(), &[6.5, 6.5, 6., 6., 6., 4.]));
        assert_eq!((t.branch, t.n0), (Branch::AmendedAtN0, Some(3)));

        let (x, t) = solve_single_hop(&SingleHopInstance::new(vec![1., 5., 6., 10., 14.], 3., 17.)).unwrap();
        assert!(close(x.as_slice(), &[5., 6., 6., 6., 6., 3.]));
        assert_eq!(t.branch, Branch::SmallHorizon);
        assert!(t.x_e.is_none() && t.balancing_segments.is_empty());
    }

    #[test]
    fn tightest_single_update() {
        let (x, _) = solve_single_hop(&SingleHopInstance::new(vec![0.], 1., 1.)).unwrap();
        assert_eq!(x.as_slice(), &[1., 1.]);
    }

    #[test]
    fn infeasible_is_reported() {
        let err = solve_single_hop(&SingleHopInstance::new(vec![3., 7.], 3., 5.)).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)), "{err}");
    }

    #[test]
    fn two_hop_examples() {
        let inst = TwoHopInstance::new(vec![2., 6., 7., 11., 13.], vec![1., 4., 9., 10., 15.], 1., 2., 19.);
        let sol = solve_two_hop(&inst).unwrap();
        assert!(close(&sol.schedule.source_tx, &[2.5, 6., 9., 12., 15.]));
        assert!(close(&sol.schedule.relay_tx, &[3.5, 7., 10., 13., 16.]));

        let inst = TwoHopInstance::new(vec![0., 4., 4., 9., 13.], vec![1., 3., 6., 10., 12.], 1., 2., 16.);
        let sol = solve_two_hop(&inst).unwrap();
        assert!(close(&sol.schedule.deliveries, &[4., 7., 10., 13., 16.]));
    }

    #[test]
    fn two_hop_unique_point() {
        let inst = TwoHopInstance::new(vec![0.], vec![0.], 1., 1., 2.);
        let sol = solve_two_hop(&inst).unwrap();
        assert_eq!(sol.schedule.source_tx, vec![0.]);
        assert_eq!(sol.schedule.relay_tx, vec![1.]);
        assert_eq!(sol.schedule.deliveries, vec![2.]);
    }
}
