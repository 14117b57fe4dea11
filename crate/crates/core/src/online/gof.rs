use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::{run_policy, OnlineConfig, Policy};
use crate::error::{Error, Result};

/// Fewer completed runs than this and the test is not attempted.
pub const MIN_RUNS: usize = 500;
/// Pooled bins must each expect at least this many observations.
pub const MIN_EXPECTED: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GofVerdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GofReport {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub runs: usize,
    pub success_probability: f64,
    pub alpha: f64,
    pub verdict: GofVerdict,
}

/// Per-slot success probability for one node, `1 − e^{−max{1, d+d̄}}`.
pub fn geometric_parameter(d: f64, d_bar: f64) -> f64 {
    1.0 - (-(d + d_bar).max(1.0)).exp()
}

/// Chi-square test of `samples` (values ≥ 1) against the geometric law
/// `P(u = k) = (1−q)^{k−1} q`.
///
/// Bins `1, 2, …` are kept while each expects at least five counts; the
/// remainder is pooled into one tail bin.
pub fn chi_square_geometric(samples: &[u32], q: f64, alpha: f64) -> GofReport {
    let n = samples.len();
    let total = n as f64;
    let mut expected = Vec::new();
    let mut tail = 1.0; // P(u ≥ k)
    let mut k = 1u32;
    loop {
        let pk = tail * q;
        if total * pk < MIN_EXPECTED || total * (tail - pk) < MIN_EXPECTED {
            break;
        }
        expected.push(total * pk);
        tail -= pk;
        k += 1;
    }
    expected.push(total * tail);
    let last = k as usize; // bins 1..last-1 exact, `last` = tail

    let mut observed = vec![0.0; expected.len()];
    for &u in samples {
        let bin = (u.max(1) as usize).min(last) - 1;
        observed[bin] += 1.0;
    }
    let statistic: f64 = observed.iter().zip(&expected).map(|(o, e)| (o - e).powi(2) / e).sum();
    let dof = expected.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64).map_or(f64::NAN, |c| c.sf(statistic))
    };
    let verdict = if n < MIN_RUNS || dof == 0 {
        GofVerdict::Inconclusive
    } else if p_value >= alpha {
        GofVerdict::Pass
    } else {
        GofVerdict::Fail
    };
    GofReport { statistic, dof, p_value, runs: n, success_probability: q, alpha, verdict }
}

/// Simulates the dumping policy and tests its failure-run lengths against
/// `Geometric(p²)` at significance 0.01.
pub fn failure_run_test(cfg: &OnlineConfig) -> Result<GofReport> {
    if cfg.policy != Policy::BestEffortWithDumping {
        return Err(Error::InvalidConfig(format!(
            "failure-run test needs the {} policy, got {}",
            Policy::BestEffortWithDumping,
            cfg.policy
        )));
    }
    let runs: Vec<u32> = run_policy(cfg)?.into_iter().flat_map(|r| r.failure_runs).collect();
    let p = geometric_parameter(cfg.d, cfg.d_bar);
    Ok(chi_square_geometric(&runs, p * p, 0.01))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parameter_values() {
        let p = geometric_parameter(0.25, 0.25);
        assert!((p - 0.632_120_558_8).abs() < 1e-9);
        assert!((p * p - 0.399_576_4).abs() < 1e-6);
        let p = geometric_parameter(1.0, 1.0);
        assert!((p * p - 0.747_645_9).abs() < 1e-6);
    }

    fn geometric(rng: &mut ChaCha8Rng, q: f64) -> u32 {
        let mut k = 1;
        while rng.random::<f64>() >= q {
            k += 1;
        }
        k
    }

    #[test]
    fn accepts_true_geometric_and_rejects_shifted() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q = 0.4;
        let good: Vec<u32> = (0..2000).map(|_| geometric(&mut rng, q)).collect();
        let r = chi_square_geometric(&good, q, 0.01);
        assert_eq!(r.verdict, GofVerdict::Pass, "{r:?}");
        assert!(r.dof >= 5);
        let shifted: Vec<u32> = good.iter().map(|u| u + 1).collect();
        assert_eq!(chi_square_geometric(&shifted, q, 0.01).verdict, GofVerdict::Fail);
    }

    #[test]
    fn few_samples_are_inconclusive() {
        let r = chi_square_geometric(&[1, 2, 1, 3], 0.4, 0.01);
        assert_eq!(r.verdict, GofVerdict::Inconclusive);
    }

    #[test]
    fn wrong_policy_rejected() {
        let cfg = OnlineConfig {
            d: 0.25,
            d_bar: 0.25,
            horizon: 100.0,
            replications: 1,
            seed: 1,
            policy: Policy::Greedy,
            record_curve: false,
        };
        assert!(failure_run_test(&cfg).is_err());
    }
}
