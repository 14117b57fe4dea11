//! `simulate`: Monte Carlo runs of the online policies.

use std::fs::File;
use std::io::{self, BufWriter};
use std::path::Path;

use anyhow::{bail, Context};
use serde_json::json;
use twohop_aoi::online::{
    lower_bound, rate_bound, run_policy, sweep, write_sweep_csv, OnlineConfig, Policy, Summary, SweepRow,
};

use crate::plot::{line_plot, Series};

/// Parses `lo:hi:step` into an inclusive grid.
pub fn parse_grid(spec: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>().with_context(|| format!("bad number '{p}' in sweep '{spec}'")))
        .collect::<anyhow::Result<_>>()?;
    let [lo, hi, step] = parts[..] else {
        bail!(twohop_aoi::Error::InvalidConfig(format!("sweep must look like lo:hi:step, got '{spec}'")));
    };
    if step.is_nan() || step <= 0.0 || hi < lo || !lo.is_finite() || !hi.is_finite() {
        bail!(twohop_aoi::Error::InvalidConfig(format!("empty or unbounded sweep '{spec}'")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| crate::json::round12(lo + k as f64 * step)).collect())
}

/// The two policies every sweep compares.
pub const SWEEP_POLICIES: [Policy; 2] = [Policy::BestEffortUniform, Policy::Greedy];

pub fn run_sweep(grid: &[f64], template: &OnlineConfig) -> anyhow::Result<Vec<SweepRow>> {
    Ok(sweep(grid, template, &SWEEP_POLICIES)?)
}

pub fn write_rows(rows: &[SweepRow], path: Option<&Path>) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
            write_sweep_csv(rows, BufWriter::new(f))?;
        }
        None => write_sweep_csv(rows, io::stdout().lock())?,
    }
    Ok(())
}

/// Mean AoI per policy against the lower bound.
pub fn sweep_svg(rows: &[SweepRow]) -> String {
    let mut series = Vec::new();
    let mut policies: Vec<Policy> = rows.iter().map(|r| r.policy).collect();
    policies.dedup();
    policies.sort_by_key(|p| p.to_string());
    policies.dedup();
    for p in policies {
        let pts = rows.iter().filter(|r| r.policy == p).map(|r| (r.d_plus_dbar, r.mean_aoi)).collect();
        series.push(Series::new(p.to_string(), pts));
    }
    let mut bound: Vec<(f64, f64)> = rows.iter().map(|r| (r.d_plus_dbar, r.lower_bound)).collect();
    bound.dedup();
    series.push(Series::new("lower bound", bound).dashed());
    line_plot("Average AoI vs total service time", "d + d_bar", "time-average AoI", &series, false)
}

/// Single-configuration summary as JSON.
pub fn single_run(cfg: &OnlineConfig) -> anyhow::Result<(serde_json::Value, SweepRow)> {
    let results = run_policy(cfg)?;
    let s = Summary::of(&results);
    let max_rate = results.iter().map(|r| r.update_rate).fold(0.0, f64::max);
    let row = SweepRow {
        d_plus_dbar: cfg.service(),
        policy: cfg.policy,
        mean_aoi: s.mean_aoi,
        std_aoi: s.std_aoi,
        mean_rate: s.mean_rate,
        lower_bound: lower_bound(cfg.d, cfg.d_bar),
        reps: s.reps,
        horizon: cfg.horizon,
        seed: cfg.seed,
    };
    let value = json!({
        "config": cfg,
        "mean_aoi": s.mean_aoi,
        "std_aoi": s.std_aoi,
        "mean_rate": s.mean_rate,
        "max_rate": max_rate,
        "lower_bound": row.lower_bound,
        "rate_bound": rate_bound(cfg.d, cfg.d_bar),
        "mean_failed_slots": results.iter().map(|r| r.failed_slots as f64).sum::<f64>() / results.len() as f64,
    });
    Ok((value, row))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = parse_grid("0.1:2.0:0.1").unwrap();
        assert_eq!(g.len(), 20);
        assert_eq!(g[2], 0.3);
        assert_eq!(g[19], 2.0);
        assert_eq!(parse_grid("1:1:0.5").unwrap(), vec![1.0]);
        assert!(parse_grid("1:0:0.5").is_err());
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("a:2:1").is_err());
    }
}
