use crate::error::{Error, Result};
use crate::model::{InterUpdateVector, SingleHopInstance};
use crate::tolerance;

/// `N·d ≤ T < (N+1)·d`: at most one spare `d` of slack beyond back-to-back
/// transmission. The boundary `T = (N+1)·d` belongs to the balancing branch.
pub fn is_small_horizon(inst: &SingleHopInstance) -> bool {
    let n = inst.arrivals.len() as f64;
    !tolerance::geq(inst.deadline, (n + 1.0) * inst.service)
}

/// Closed form without the branch check. Requires `N ≥ 1`.
pub(crate) fn closed_form(inst: &SingleHopInstance) -> InterUpdateVector {
    let n = inst.arrivals.len();
    let d = inst.service;
    let t = inst.deadline;
    let budget = t - (n as f64 - 2.0) * d;
    let causal = inst
        .arrivals
        .iter()
        .enumerate()
        .map(|(k, &s)| s - (k as f64 - 1.0) * d)
        .fold(f64::NEG_INFINITY, f64::max);
    let x1 = (budget / 2.0).max(causal);
    let mut x = Vec::with_capacity(n + 1);
    x.push(x1);
    x.extend(std::iter::repeat_n(2.0 * d, n - 1));
    x.push(budget - x1);
    InterUpdateVector(x)
}

/// Optimal inter-update vector when `N·d ≤ T < (N+1)·d`.
///
/// Updates 2..N go back-to-back (`xᵢ = 2d`), so only `x₁` and `x_{N+1}` are
/// free; `x₁` splits the remaining budget evenly unless energy causality
/// forces it later.
pub fn solve_small_horizon(inst: &SingleHopInstance) -> Result<InterUpdateVector> {
    let n = inst.arrivals.len();
    if n == 0 {
        return Err(Error::WrongBranch("no arrivals".into()));
    }
    if !is_small_horizon(inst) {
        return Err(Error::WrongBranch(format!(
            "T = {} is not below (N+1)·d = {}",
            inst.deadline,
            (n as f64 + 1.0) * inst.service
        )));
    }
    if !tolerance::geq(inst.deadline, n as f64 * inst.service) {
        return Err(Error::WrongBranch(format!(
            "T = {} is below N·d = {}",
            inst.deadline,
            n as f64 * inst.service
        )));
    }
    Ok(closed_form(inst))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_split() {
        // N = 3, d = 2, T = 7: budget T − d = 5, x₁ = 2.5.
        let inst = SingleHopInstance::new(vec![0.5, 1., 1.5], 2., 7.);
        let x = solve_small_horizon(&inst).unwrap();
        assert_eq!(x.as_slice(), &[2.5, 4., 4., 2.5]);
        assert!(x.is_feasible_for(&inst));
    }

    #[test]
    fn causality_binds() {
        // s₃ − d = 3 > 2.5.
        let inst = SingleHopInstance::new(vec![0.5, 1., 5.], 2., 7.);
        let x = solve_small_horizon(&inst).unwrap();
        assert_eq!(x.as_slice(), &[3., 4., 4., 2.]);
        assert!(x.is_feasible_for(&inst));
    }

    #[test]
    fn boundary_is_rejected() {
        let inst = SingleHopInstance::new(vec![0.5, 1., 1.5], 2., 8.);
        assert!(!is_small_horizon(&inst));
        assert!(matches!(solve_small_horizon(&inst), Err(Error::WrongBranch(_))));
        let short = SingleHopInstance::new(vec![0.5, 1., 1.5], 2., 5.);
        assert!(matches!(solve_small_horizon(&short), Err(Error::WrongBranch(_))));
    }
}
