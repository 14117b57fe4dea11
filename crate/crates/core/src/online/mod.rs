//! Monte Carlo simulation of online update policies.
//!
//! Energy arrives at the source and at the relay as independent unit-rate
//! Poisson processes; each node starts with one unit and every update costs
//! one unit at each node. Updates take `d + d̄` end to end.

mod arrivals;
mod gof;
mod sim;
mod sweep;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use arrivals::sample_poisson;
pub use gof::{chi_square_geometric, failure_run_test, geometric_parameter, GofReport, GofVerdict};
pub use sim::simulate_paths;
pub use sweep::{sweep, write_sweep_csv, SweepRow};

use crate::error::{Error, Result};
use crate::model::AgeCurve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Policy {
    /// Attempt at `n·max{1, d+d̄}` iff both batteries are non-empty.
    BestEffortUniform,
    /// Attempt back to back at `n·(d+d̄)` whenever both batteries are non-empty.
    Greedy,
    /// Best effort, but a failed slot discards whatever energy is left.
    BestEffortWithDumping,
    /// Transmit the moment both batteries are non-empty and the link is free.
    GreedyEventDriven,
}

impl Policy {
    pub const ALL: [Policy; 4] =
        [Policy::BestEffortUniform, Policy::Greedy, Policy::BestEffortWithDumping, Policy::GreedyEventDriven];

    fn slug(self) -> &'static str {
        match self {
            Policy::BestEffortUniform => "best-effort",
            Policy::Greedy => "greedy",
            Policy::BestEffortWithDumping => "dumping",
            Policy::GreedyEventDriven => "greedy-event",
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Policy::ALL
            .into_iter()
            .find(|p| s.eq_ignore_ascii_case(p.slug()) || s.eq_ignore_ascii_case(&p.to_string()))
            .ok_or_else(|| {
                let names: Vec<_> = Policy::ALL.iter().map(|p| p.slug()).collect();
                Error::InvalidConfig(format!("unknown policy '{s}' (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OnlineConfig {
    pub d: f64,
    pub d_bar: f64,
    pub horizon: f64,
    pub replications: usize,
    pub seed: u64,
    pub policy: Policy,
    /// Keep the age curve of the first replication.
    #[serde(default)]
    pub record_curve: bool,
}

impl OnlineConfig {
    pub fn service(&self) -> f64 {
        self.d + self.d_bar
    }

    /// Spacing of best-effort decision instants, `max{1, d+d̄}`.
    pub fn slot(&self) -> f64 {
        self.service().max(1.0)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.d.is_finite() && self.d_bar.is_finite() && self.horizon.is_finite();
        if !finite || self.d < 0.0 || self.d_bar < 0.0 || self.service() <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "service times must be non-negative with a positive sum (d = {}, d_bar = {})",
                self.d, self.d_bar
            )));
        }
        if self.horizon <= 0.0 {
            return Err(Error::InvalidConfig(format!("horizon must be positive, got {}", self.horizon)));
        }
        if self.replications == 0 {
            return Err(Error::InvalidConfig("at least one replication is required".into()));
        }
        if self.horizon < self.slot() {
            return Err(Error::DegenerateHorizon { horizon: self.horizon, slot: self.slot() });
        }
        Ok(())
    }
}

/// Outcome of one replication.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    /// `∫₀ᵀ a(t) dt / T`.
    pub time_avg_aoi: f64,
    /// Updates delivered by `T`.
    pub delivered: usize,
    /// Decision instants at which no update could be sent.
    pub failed_slots: usize,
    pub update_rate: f64,
    /// Lengths of completed runs of consecutive failed slots.
    pub failure_runs: Vec<u32>,
    /// Source transmission epochs of every update sent before `T`.
    pub transmit_times: Vec<f64>,
    pub source_arrivals: usize,
    pub relay_arrivals: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub age_curve_sample: Option<AgeCurve>,
}

/// Mean and spread across replications.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub mean_aoi: f64,
    pub std_aoi: f64,
    pub mean_rate: f64,
    pub reps: usize,
}

impl Summary {
    pub fn of(results: &[SimResult]) -> Self {
        let n = results.len();
        let mean = |f: fn(&SimResult) -> f64| results.iter().map(f).sum::<f64>() / n.max(1) as f64;
        let mean_aoi = mean(|r| r.time_avg_aoi);
        let var = if n > 1 {
            results.iter().map(|r| (r.time_avg_aoi - mean_aoi).powi(2)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        Self { mean_aoi, std_aoi: var.sqrt(), mean_rate: mean(|r| r.update_rate), reps: n }
    }
}

/// Stream ids for replication `rep`: one per node.
pub fn streams(rep: usize) -> (u64, u64) {
    (2 * rep as u64, 2 * rep as u64 + 1)
}

/// Runs every replication (in parallel) and returns results in replication
/// order. Replication `r` draws its arrivals from [`streams`]`(r)`, so
/// different policies with the same seed see the same sample paths.
pub fn run_policy(cfg: &OnlineConfig) -> Result<Vec<SimResult>> {
    cfg.validate()?;
    (0..cfg.replications)
        .into_par_iter()
        .map(|rep| {
            let (a, b) = streams(rep);
            let source = sample_poisson(cfg.horizon, cfg.seed, a);
            let relay = sample_poisson(cfg.horizon, cfg.seed, b);
            simulate_paths(cfg.policy, cfg.d, cfg.d_bar, cfg.horizon, &source, &relay, cfg.record_curve && rep == 0)
        })
        .collect()
}

/// Long-run average AoI no policy can beat: `max{½ + s, 3s/2}` with `s = d+d̄`.
pub fn lower_bound(d: f64, d_bar: f64) -> f64 {
    let s = d + d_bar;
    (0.5 + s).max(1.5 * s)
}

/// Largest sustainable update rate: `min{1, 1/(d+d̄)}`.
pub fn rate_bound(d: f64, d_bar: f64) -> f64 {
    (1.0 / (d + d_bar)).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(lower_bound(0.125, 0.125), 0.75);
        assert_eq!(lower_bound(0.5, 0.5), 1.5);
        assert_eq!(lower_bound(1.0, 1.0), 3.0);
        assert_eq!(rate_bound(0.25, 0.25), 1.0);
        assert_eq!(rate_bound(1.0, 1.0), 0.5);
    }

    #[test]
    fn policy_names_round_trip() {
        for p in Policy::ALL {
            assert_eq!(p.slug().parse::<Policy>().unwrap(), p);
            assert_eq!(p.to_string().parse::<Policy>().unwrap(), p);
        }
        assert!("nope".parse::<Policy>().is_err());
    }

    fn cfg(policy: Policy) -> OnlineConfig {
        OnlineConfig { d: 0.1, d_bar: 0.15, horizon: 200.0, replications: 8, seed: 42, policy, record_curve: true }
    }

    #[test]
    fn config_validation() {
        let bad = OnlineConfig { d: -1.0, ..cfg(Policy::Greedy) };
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        let zero = OnlineConfig { d: 0.0, d_bar: 0.0, ..cfg(Policy::Greedy) };
        assert!(matches!(zero.validate(), Err(Error::InvalidConfig(_))));
        let short = OnlineConfig { horizon: 0.5, ..cfg(Policy::Greedy) };
        assert!(matches!(run_policy(&short), Err(Error::DegenerateHorizon { .. })));
        let none = OnlineConfig { replications: 0, ..cfg(Policy::Greedy) };
        assert!(none.validate().is_err());
    }

    #[test]
    fn deterministic_and_ordered() {
        let c = cfg(Policy::BestEffortUniform);
        let a = run_policy(&c).unwrap();
        let b = run_policy(&c).unwrap();
        assert_eq!(a, b);
        assert!(a[0].age_curve_sample.is_some());
        assert!(a[1].age_curve_sample.is_none());
        // Serial replay of replication 3 matches.
        let (s, r) = streams(3);
        let replay = simulate_paths(
            c.policy,
            c.d,
            c.d_bar,
            c.horizon,
            &sample_poisson(c.horizon, c.seed, s),
            &sample_poisson(c.horizon, c.seed, r),
            false,
        )
        .unwrap();
        assert_eq!(replay, a[3]);
    }

    #[test]
    fn summary_statistics() {
        let results = run_policy(&cfg(Policy::BestEffortUniform)).unwrap();
        let s = Summary::of(&results);
        assert_eq!(s.reps, 8);
        assert!(s.std_aoi > 0.0);
        assert!(s.mean_aoi > lower_bound(0.1, 0.15) * 0.9);
    }
}
