//! Independent reference minimizer for the inter-update problem and a
//! numeric integrator for age curves. Used only to cross-check the exact
//! solver; never to produce answers.

mod area;
mod projection;

pub use area::numeric_area;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{InterUpdateVector, SingleHopInstance};
use projection::project_capped_simplex;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    /// Budget of inner gradient steps across all penalty rounds.
    pub max_iterations: usize,
    /// Relative change in `x` below which an inner solve stops.
    pub step_tolerance: f64,
    /// Relative change in the objective below which the outer loop stops.
    pub objective_tolerance: f64,
    /// Factor applied to the penalty weight when feasibility stalls.
    pub penalty_growth: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { max_iterations: 2_000_000, step_tolerance: 1e-10, objective_tolerance: 1e-8, penalty_growth: 10.0 }
    }
}

impl OracleConfig {
    fn validate(&self) -> Result<()> {
        let ok = self.max_iterations > 0
            && self.step_tolerance > 0.0
            && self.objective_tolerance > 0.0
            && self.penalty_growth > 1.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!("oracle configuration out of range: {self:?}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSolution {
    pub x: InterUpdateVector,
    pub objective: f64,
    /// Largest violation of any constraint (0 if feasible).
    pub max_violation: f64,
    pub iterations: usize,
}

/// Minimizes `Σxᵢ²` with the prefix constraints handled in natural order.
pub fn oracle_solve(inst: &SingleHopInstance, cfg: &OracleConfig) -> Result<OracleSolution> {
    let order: Vec<usize> = (2..=inst.arrivals.len()).collect();
    oracle_solve_with_order(inst, cfg, &order)
}

/// Same, with the prefix constraints `k ∈ 2..=N` processed in `order`.
pub fn oracle_solve_with_order(inst: &SingleHopInstance, cfg: &OracleConfig, order: &[usize]) -> Result<OracleSolution> {
    cfg.validate()?;
    let (inst, _) = inst.normalize()?;
    inst.validate()?.into_result()?;
    let n = inst.arrivals.len();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (2..=n).collect::<Vec<_>>() {
        return Err(Error::InvalidConfig(format!("constraint order {order:?} is not a permutation of 2..={n}")));
    }
    Solver::new(&inst, order).run(cfg)
}

/// Augmented-Lagrangian loop over the prefix constraints; the box and the sum
/// constraint are kept exactly by projection.
struct Solver {
    lower: Vec<f64>,
    total: f64,
    /// `(k, s_k + k·d)`: require `Σ_{i≤k} xᵢ ≥ rhs`.
    prefix: Vec<(usize, f64)>,
    start: Vec<f64>,
    scale: f64,
}

impl Solver {
    fn new(inst: &SingleHopInstance, order: &[usize]) -> Self {
        let n = inst.arrivals.len();
        let d = inst.service;
        let mut lower = vec![2.0 * d; n + 1];
        lower[0] = inst.arrivals[0] + d;
        lower[n] = d;
        let total = inst.deadline + n as f64 * d;
        let prefix = order.iter().map(|&k| (k, inst.arrivals[k - 1] + k as f64 * d)).collect();

        // Earliest back-to-back transmissions, mapped to gaps.
        let mut tx = Vec::with_capacity(n);
        let mut free = f64::NEG_INFINITY;
        for &s in &inst.arrivals {
            let t = s.max(free);
            tx.push(t);
            free = t + d;
        }
        let mut start = Vec::with_capacity(n + 1);
        start.push(tx[0] + d);
        for w in tx.windows(2) {
            start.push(w[1] - w[0] + d);
        }
        start.push(inst.deadline - tx[n - 1]);

        Self { lower, total, prefix, start, scale: 1.0 + total.abs() }
    }

    fn violations(&self, x: &[f64]) -> Vec<f64> {
        self.prefix.iter().map(|&(k, rhs)| rhs - x[..k].iter().sum::<f64>()).collect()
    }

    fn gradient(&self, x: &[f64], lambda: &[f64], rho: f64, grad: &mut [f64]) {
        for (g, xi) in grad.iter_mut().zip(x) {
            *g = 2.0 * xi;
        }
        for (c, &(k, rhs)) in self.prefix.iter().enumerate() {
            let h = rhs - x[..k].iter().sum::<f64>() + lambda[c] / rho;
            if h > 0.0 {
                for g in &mut grad[..k] {
                    *g -= rho * h;
                }
            }
        }
    }

    fn run(&self, cfg: &OracleConfig) -> Result<OracleSolution> {
        let m = self.prefix.len();
        let norm_sq: f64 = self.prefix.iter().map(|&(k, _)| k as f64).sum();
        let feas_tol = 1e-11 * self.scale;

        let mut x = project_capped_simplex(&self.start, &self.lower, self.total);
        let mut lambda = vec![0.0; m];
        let mut rho = 1.0;
        let mut iterations = 0usize;
        let mut prev_violation = f64::INFINITY;
        let mut prev_objective = f64::INFINITY;
        let mut grad = vec![0.0; x.len()];

        loop {
            // Accelerated projected gradient on the penalized objective.
            let step = 1.0 / (2.0 + rho * norm_sq);
            let mut y = x.clone();
            let mut theta = 1.0f64;
            let mut converged = false;
            while iterations < cfg.max_iterations {
                iterations += 1;
                self.gradient(&y, &lambda, rho, &mut grad);
                let trial: Vec<f64> = y.iter().zip(&grad).map(|(yi, gi)| yi - step * gi).collect();
                let next = project_capped_simplex(&trial, &self.lower, self.total);
                let moved = next.iter().zip(&x).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
                let size = next.iter().map(|a| a * a).sum::<f64>().sqrt();
                // Restart momentum whenever it points uphill.
                let uphill: f64 = grad.iter().zip(next.iter().zip(&x)).map(|(g, (a, b))| g * (a - b)).sum();
                let theta_next = 0.5 * (1.0 + (1.0 + 4.0 * theta * theta).sqrt());
                if uphill > 0.0 {
                    theta = 1.0;
                    y = next.clone();
                } else {
                    let beta = (theta - 1.0) / theta_next;
                    y = next.iter().zip(&x).map(|(a, b)| a + beta * (a - b)).collect();
                    theta = theta_next;
                }
                x = next;
                if moved <= (cfg.step_tolerance * step).max(64.0 * f64::EPSILON) * (1.0 + size) {
                    converged = true;
                    break;
                }
            }

            let g = self.violations(&x);
            let violation = g.iter().copied().fold(0.0, f64::max);
            let objective: f64 = x.iter().map(|v| v * v).sum();
            if !converged {
                return Err(Error::OracleFailure { iterations, violation });
            }
            for (l, gi) in lambda.iter_mut().zip(&g) {
                *l = (*l + rho * gi).max(0.0);
            }
            let settled = (objective - prev_objective).abs() <= cfg.objective_tolerance * (1.0 + objective);
            if violation <= feas_tol && settled {
                return Ok(OracleSolution { x: InterUpdateVector(x), objective, max_violation: violation, iterations });
            }
            if violation > 0.25 * prev_violation {
                rho *= cfg.penalty_growth;
            }
            prev_violation = violation;
            prev_objective = objective;
        }
    }
}
