use serde::Serialize;

use super::{small_horizon, Branch};
use crate::error::{Error, Result};
use crate::model::{InterUpdateVector, SingleHopInstance};
use crate::tolerance;

/// How the balanced vector was turned into a feasible one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Amendment {
    pub branch: Branch,
    /// First (1-based) index with `x̄ᵢ < 2d`, if any.
    pub n0: Option<usize>,
}

/// Enforces the minimum gaps `xᵢ ≥ 2d` on the energy-only optimum.
///
/// The prefix before the first violating index `n₀` is kept, every later
/// entry up to `N` is clamped to `2d`, and the last gap absorbs the rest.
/// When the violation starts at `n₀ = 2` while `x̄₁` is still free, the
/// small-horizon closed form is used instead.
pub fn amend(x_e: &InterUpdateVector, inst: &SingleHopInstance) -> Result<(InterUpdateVector, Amendment)> {
    let n = inst.arrivals.len();
    let d = inst.service;
    let x = x_e.as_slice();
    if x.len() != n + 1 {
        return Err(Error::Internal(format!("balanced vector has {} entries, expected {}", x.len(), n + 1)));
    }
    // 0-based position of x_{n₀}.
    let Some(pos) = (1..n).find(|&i| !tolerance::geq(x[i], 2.0 * d)) else {
        if !tolerance::geq(x[n], d) {
            return Err(Error::Internal(format!("first infeasible gap is n0 = N+1 = {}", n + 1)));
        }
        return Ok((x_e.clone(), Amendment { branch: Branch::BalancedFeasible, n0: None }));
    };
    let n0 = pos + 1;
    let x1_pinned = tolerance::approx_eq(x[0], inst.arrivals[0] + d);
    if n0 > 2 || x1_pinned {
        let mut out: Vec<f64> = x[..pos].to_vec();
        out.extend(std::iter::repeat_n(2.0 * d, n + 1 - n0));
        let used: f64 = out.iter().sum();
        out.push(inst.deadline + n as f64 * d - used);
        Ok((InterUpdateVector(out), Amendment { branch: Branch::AmendedAtN0, n0: Some(n0) }))
    } else {
        Ok((
            small_horizon::closed_form(inst),
            Amendment { branch: Branch::AmendedViaSmallHorizonBranch, n0: Some(n0) },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::offline::inter_update_balancing;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn first_worked_example() {
        let inst = SingleHopInstance::new(vec![3., 7., 9., 12., 15.], 3., 20.);
        let (x_e, _) = inter_update_balancing(&inst);
        let (x, a) = amend(&x_e, &inst).unwrap();
        assert_eq!(a, Amendment { branch: Branch::AmendedAtN0, n0: Some(3) });
        assert!(close(x.as_slice(), &[6.5, 6.5, 6., 6., 6., 4.]), "{x:?}");
    }

    #[test]
    fn two_run_illustration() {
        let inst = SingleHopInstance::new(vec![3., 10., 12.], 4., 20.);
        let (x_e, _) = inter_update_balancing(&inst);
        let (x, a) = amend(&x_e, &inst).unwrap();
        assert_eq!(a.n0, Some(3));
        assert_eq!(x.as_slice(), &[9., 9., 8., 6.]);
    }

    #[test]
    fn n0_two_with_free_first_gap() {
        let inst = SingleHopInstance::new(vec![1., 5., 6., 10., 14.], 3., 19.);
        let (x_e, _) = inter_update_balancing(&inst);
        let (x, a) = amend(&x_e, &inst).unwrap();
        assert_eq!(a, Amendment { branch: Branch::AmendedViaSmallHorizonBranch, n0: Some(2) });
        assert!(close(x.as_slice(), &[5., 6., 6., 6., 6., 5.]), "{x:?}");
    }

    #[test]
    fn already_feasible() {
        let inst = SingleHopInstance::new(vec![1., 2.], 1., 12.);
        let (x_e, _) = inter_update_balancing(&inst);
        let (x, a) = amend(&x_e, &inst).unwrap();
        assert_eq!(a.branch, Branch::BalancedFeasible);
        assert_eq!(x, x_e);
    }
}
