//! `reproduce`: regenerates the worked offline examples and the two online
//! experiments (policy comparison across service times, AoI versus horizon).

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use serde_json::json;
use twohop_aoi::model::{Instance, TwoHopInstance};
use twohop_aoi::online::{lower_bound, run_policy, OnlineConfig, Policy, Summary};

use crate::json::to_pretty;
use crate::manifest::ManifestBuilder;
use crate::plot::{line_plot, Series};
use crate::simulate::{run_sweep, sweep_svg, write_rows};
use crate::solve::{solve_instance, write_age_csv, SolveOptions};

/// The three worked examples: name and instance.
pub fn offline_example_instances() -> Vec<(&'static str, TwoHopInstance)> {
    let one = TwoHopInstance::new(vec![2., 6., 7., 11., 13.], vec![1., 4., 9., 10., 15.], 1., 2., 19.);
    let two = |t| TwoHopInstance::new(vec![0., 4., 4., 9., 13.], vec![1., 3., 6., 10., 12.], 1., 2., t);
    vec![("example_1", one), ("example_2_T16", two(16.)), ("example_2_T18", two(18.))]
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproduceOptions {
    pub seed: u64,
    pub reps: usize,
    pub horizon: f64,
    pub grid: Vec<f64>,
    pub horizons: Vec<f64>,
    pub service: f64,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        Self {
            seed: 1,
            reps: 100,
            horizon: 5000.0,
            grid: (1..=20).map(|k| crate::json::round12(0.1 * k as f64)).collect(),
            horizons: vec![10., 20., 50., 100., 200., 500., 1000., 2000., 5000., 10000.],
            service: 0.25,
        }
    }
}

fn write(path: PathBuf, text: &str, manifest: &mut ManifestBuilder) -> anyhow::Result<()> {
    fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
    manifest.record(path);
    Ok(())
}

pub fn offline_examples(dir: &Path, manifest: &mut ManifestBuilder) -> anyhow::Result<()> {
    let opts = SolveOptions { check: false, greedy: true, age_csv: None };
    for (name, inst) in offline_example_instances() {
        let instance = Instance::TwoHop(inst);
        let solved = solve_instance(&instance, &opts)?;
        let mut doc = solved.result;
        doc["instance"] = serde_json::from_str(&instance.to_json_string())?;
        write(dir.join(format!("{name}.json")), &to_pretty(&doc)?, manifest)?;

        let csv = dir.join(format!("{name}_age.csv"));
        write_age_csv(&solved.curve, &csv)?;
        manifest.record(csv);
        let svg = line_plot(
            &format!("Age at the destination, {name}"),
            "t",
            "age",
            &[Series::new("optimal", solved.curve.breakpoints.clone())],
            false,
        );
        write(dir.join(format!("{name}_age.svg")), &svg, manifest)?;
    }
    Ok(())
}

pub fn online_sweep(dir: &Path, opts: &ReproduceOptions, manifest: &mut ManifestBuilder) -> anyhow::Result<()> {
    let template = OnlineConfig {
        d: 0.5,
        d_bar: 0.5,
        horizon: opts.horizon,
        replications: opts.reps,
        seed: opts.seed,
        policy: Policy::BestEffortUniform,
        record_curve: false,
    };
    let rows = run_sweep(&opts.grid, &template)?;
    let csv = dir.join("online_sweep.csv");
    write_rows(&rows, Some(&csv))?;
    manifest.record(csv);
    write(dir.join("online_sweep.svg"), &sweep_svg(&rows), manifest)
}

#[derive(Debug, Clone, Serialize)]
pub struct HorizonRow {
    pub horizon: f64,
    pub mean_aoi: f64,
    pub std_aoi: f64,
    pub lower_bound: f64,
    pub reps: usize,
    pub seed: u64,
}

pub fn aoi_vs_horizon(opts: &ReproduceOptions) -> anyhow::Result<Vec<HorizonRow>> {
    let (d, d_bar) = (opts.service / 2.0, opts.service / 2.0);
    opts.horizons
        .iter()
        .map(|&horizon| {
            let cfg = OnlineConfig {
                d,
                d_bar,
                horizon,
                replications: opts.reps,
                seed: opts.seed,
                policy: Policy::BestEffortUniform,
                record_curve: false,
            };
            let s = Summary::of(&run_policy(&cfg)?);
            Ok(HorizonRow {
                horizon,
                mean_aoi: s.mean_aoi,
                std_aoi: s.std_aoi,
                lower_bound: lower_bound(d, d_bar),
                reps: s.reps,
                seed: opts.seed,
            })
        })
        .collect()
}

pub fn aoi_vs_t(dir: &Path, opts: &ReproduceOptions, manifest: &mut ManifestBuilder) -> anyhow::Result<()> {
    let rows = aoi_vs_horizon(opts)?;
    let csv = dir.join("aoi_vs_T.csv");
    let mut w = csv::Writer::from_path(&csv).with_context(|| format!("cannot create {}", csv.display()))?;
    for r in &rows {
        w.serialize(r)?;
    }
    w.flush()?;
    manifest.record(csv);
    let svg = line_plot(
        &format!("Average AoI vs horizon, d + d_bar = {}", opts.service),
        "T",
        "time-average AoI",
        &[
            Series::new("best effort", rows.iter().map(|r| (r.horizon, r.mean_aoi)).collect()),
            Series::new("lower bound", rows.iter().map(|r| (r.horizon, r.lower_bound)).collect()).dashed(),
        ],
        true,
    );
    write(dir.join("aoi_vs_T.svg"), &svg, manifest)
}

/// Config recorded in the manifest.
pub fn manifest_config(which: &str, opts: &ReproduceOptions) -> serde_json::Value {
    json!({"command": "reproduce", "which": which, "options": opts})
}
