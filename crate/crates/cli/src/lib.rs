//! Command-line front end: `solve`, `trace`, `simulate` and `reproduce`.

pub mod json;
pub mod manifest;
pub mod plot;
pub mod reproduce;
pub mod simulate;
pub mod solve;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use twohop_aoi::online::{OnlineConfig, Policy};

use manifest::ManifestBuilder;

#[derive(Debug, Parser)]
#[command(name = "twohop-aoi", version, about = "Age-of-information scheduling for energy-harvesting two-hop links")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    #[value(name = "offline_examples")]
    OfflineExamples,
    #[value(name = "online_sweep")]
    OnlineSweep,
    #[value(name = "aoi_vs_T")]
    AoiVsT,
}

impl Experiment {
    fn name(self) -> &'static str {
        match self {
            Experiment::OfflineExamples => "offline_examples",
            Experiment::OnlineSweep => "online_sweep",
            Experiment::AoiVsT => "aoi_vs_T",
        }
    }
}

fn parse_policy(s: &str) -> Result<Policy, String> {
    s.parse().map_err(|e: twohop_aoi::Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal offline schedule for an instance file (JSON).
    Solve {
        instance: PathBuf,
        /// Cross-check the objective against the reference oracle.
        #[arg(long)]
        check: bool,
        /// Also report the greedy baseline.
        #[arg(long)]
        greedy: bool,
        /// Write the optimal age curve as `time,age` CSV.
        #[arg(long)]
        age_csv: Option<PathBuf>,
        /// Write result.json, age.csv and manifest.json here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Explain the solver's decisions for an instance file.
    Trace { instance: PathBuf },
    /// Simulate an online policy under unit-rate Poisson energy arrivals.
    Simulate {
        #[arg(long, default_value_t = 0.125)]
        d: f64,
        #[arg(long, default_value_t = 0.125)]
        dbar: f64,
        #[arg(long, default_value_t = 5000.0)]
        horizon: f64,
        #[arg(long, default_value_t = 100)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// best-effort, greedy, dumping or greedy-event.
        #[arg(long, default_value = "best-effort", value_parser = parse_policy)]
        policy: Policy,
        /// Sweep d + d_bar over `lo:hi:step` (keeps the d : d_bar ratio).
        #[arg(long)]
        sweep: Option<String>,
        /// CSV output; an SVG plot is written next to it for sweeps.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate one of the bundled experiments.
    Reproduce {
        #[arg(value_enum)]
        which: Experiment,
        #[arg(long, default_value = "reproduce")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        reps: usize,
        /// Horizon for `online_sweep`.
        #[arg(long, default_value_t = 5000.0)]
        horizon: f64,
    },
}

/// 2 for bad input (unreadable, malformed, invalid or infeasible), 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    use twohop_aoi::Error as E;
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::InvalidInstance(_)
                | E::Infeasible(_)
                | E::Parse(_)
                | E::InvalidConfig(_)
                | E::DegenerateHorizon { .. } => 2,
                _ => 1,
            };
        }
    }
    1
}

fn parent_dir(path: &Path) -> PathBuf {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

fn read_instance(path: &Path) -> anyhow::Result<twohop_aoi::model::Instance> {
    let text = fs::read_to_string(path)
        .map_err(|e| twohop_aoi::Error::InvalidInstance(format!("cannot read {}: {e}", path.display())))?;
    Ok(twohop_aoi::model::Instance::from_json_str(&text)?)
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Solve { instance, check, greedy, age_csv, out_dir } => {
            let inst = read_instance(&instance)?;
            let opts = solve::SolveOptions { check, greedy, age_csv: age_csv.clone() };
            let solved = solve::solve_instance(&inst, &opts)?;
            let text = json::to_pretty(&solved.result)?;
            print!("{text}");
            let config = json!({"command": "solve", "instance": inst.to_json_string(), "check": check, "greedy": greedy});
            let mut manifest = ManifestBuilder::new(config, vec![]);
            if let Some(path) = &age_csv {
                solve::write_age_csv(&solved.curve, path)?;
                manifest.record(path);
            }
            let dir = match (&out_dir, &age_csv) {
                (Some(dir), _) => {
                    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
                    fs::write(dir.join("result.json"), &text)?;
                    manifest.record(dir.join("result.json"));
                    if age_csv.is_none() {
                        solve::write_age_csv(&solved.curve, &dir.join("age.csv"))?;
                        manifest.record(dir.join("age.csv"));
                    }
                    Some(dir.clone())
                }
                (None, Some(path)) => Some(parent_dir(path)),
                (None, None) => None,
            };
            if let Some(dir) = dir {
                manifest.write(&dir)?;
            }
        }
        Command::Trace { instance } => {
            print!("{}", solve::trace_text(&read_instance(&instance)?)?);
        }
        Command::Simulate { d, dbar, horizon, reps, seed, policy, sweep, out } => {
            let cfg = OnlineConfig { d, d_bar: dbar, horizon, replications: reps, seed, policy, record_curve: false };
            let config = json!({"command": "simulate", "config": cfg, "sweep": sweep});
            let mut manifest = ManifestBuilder::new(config, vec![seed]);
            match sweep {
                Some(spec) => {
                    let grid = simulate::parse_grid(&spec)?;
                    let rows = simulate::run_sweep(&grid, &cfg)?;
                    simulate::write_rows(&rows, out.as_deref())?;
                    if let Some(path) = &out {
                        manifest.record(path);
                        let svg = path.with_extension("svg");
                        fs::write(&svg, simulate::sweep_svg(&rows))?;
                        manifest.record(svg);
                    }
                }
                None => {
                    let (summary, row) = simulate::single_run(&cfg)?;
                    print!("{}", json::to_pretty(&summary)?);
                    if let Some(path) = &out {
                        simulate::write_rows(std::slice::from_ref(&row), Some(path))?;
                        manifest.record(path);
                    }
                }
            }
            if let Some(path) = &out {
                manifest.write(&parent_dir(path))?;
            }
        }
        Command::Reproduce { which, out_dir, seed, reps, horizon } => {
            let opts = reproduce::ReproduceOptions { seed, reps, horizon, ..Default::default() };
            let dir = out_dir.join(which.name());
            fs::create_dir_all(&dir).with_context(|| format!("cannot create {}", dir.display()))?;
            let seeds = if which == Experiment::OfflineExamples { vec![] } else { vec![seed] };
            let mut manifest = ManifestBuilder::new(reproduce::manifest_config(which.name(), &opts), seeds);
            match which {
                Experiment::OfflineExamples => reproduce::offline_examples(&dir, &mut manifest)?,
                Experiment::OnlineSweep => reproduce::online_sweep(&dir, &opts, &mut manifest)?,
                Experiment::AoiVsT => reproduce::aoi_vs_t(&dir, &opts, &mut manifest)?,
            }
            let path = manifest.write(&dir)?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}
