//! `solve` and `trace`: offline optimization of a single instance file.

use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use serde_json::{json, Value};
use twohop_aoi::model::{
    age_area, area_of_updates, AgeCurve, Instance, InterUpdateVector, SingleHopInstance, SingleHopSchedule,
    TwoHopSchedule,
};
use twohop_aoi::offline::{
    offline_greedy_single_hop, offline_greedy_two_hop, solve_single_hop, solve_two_hop, Branch, SolveTrace,
};
use twohop_aoi::oracle::{oracle_solve, OracleConfig};

use crate::json::{num, nums};

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub check: bool,
    pub greedy: bool,
    pub age_csv: Option<PathBuf>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum AnySchedule {
    TwoHop(TwoHopSchedule),
    SingleHop(SingleHopSchedule),
}

/// Solved instance in a form ready to print.
pub struct Solved {
    pub trace: SolveTrace,
    pub reduced: SingleHopInstance,
    pub curve: AgeCurve,
    pub area: f64,
    pub result: Value,
}

fn x_json(x: &InterUpdateVector) -> Value {
    json!(x.as_slice())
}

/// Solves either kind of instance and assembles the JSON result.
pub fn solve_instance(instance: &Instance, opts: &SolveOptions) -> anyhow::Result<Solved> {
    let (kind, trace, reduced, schedule, area, curve, deadline) = match instance {
        Instance::TwoHop(inst) => {
            let sol = solve_two_hop(inst)?;
            let (area, curve) = age_area(&sol.schedule, sol.instance.deadline)?;
            ("two_hop", sol.trace, sol.reduced, AnySchedule::TwoHop(sol.schedule), area, curve, inst.deadline)
        }
        Instance::SingleHop(inst) => {
            let (x, trace) = solve_single_hop(inst)?;
            let (normalized, _) = inst.normalize()?;
            let schedule = SingleHopSchedule::from_inter_update(&x, &normalized);
            let updates = schedule.updates();
            let area = area_of_updates(&updates, inst.deadline)?;
            let curve = AgeCurve::from_updates(&updates, inst.deadline)?;
            ("single_hop", trace, normalized, AnySchedule::SingleHop(schedule), area, curve, inst.deadline)
        }
    };

    let segments: Vec<Value> = trace
        .balancing_segments
        .iter()
        .map(|s| json!({"start": s.start, "end": s.end, "value": s.value}))
        .collect();
    let mut result = json!({
        "kind": kind,
        "branch": trace.branch.to_string(),
        "n0": trace.n0,
        "x_e": trace.x_e.as_ref().map(x_json),
        "x_star": x_json(&trace.x_star),
        "objective": trace.x_star.objective(),
        "balancing_segments": segments,
        "schedule": schedule,
        "area": area,
        "warnings": trace.warnings.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });

    if opts.check {
        let oracle = oracle_solve(&reduced, &OracleConfig::default())?;
        let solver = trace.x_star.objective();
        result["check"] = json!({
            "solver_objective": solver,
            "oracle_objective": oracle.objective,
            "gap": solver - oracle.objective,
            "oracle_iterations": oracle.iterations,
            "oracle_max_violation": oracle.max_violation,
            "agrees": (solver - oracle.objective).abs() <= 1e-6 * (1.0 + oracle.objective),
        });
    }

    if opts.greedy {
        result["greedy"] = match instance {
            Instance::TwoHop(inst) => {
                let g = offline_greedy_two_hop(inst)?;
                let (g_area, _) = age_area(&g.schedule, deadline)?;
                json!({"schedule": g.schedule, "area": g_area, "within_deadline": g.within_deadline})
            }
            Instance::SingleHop(inst) => {
                let g = offline_greedy_single_hop(inst)?;
                let g_area = area_of_updates(&g.updates(), deadline)?;
                json!({"schedule": g, "area": g_area, "within_deadline": true})
            }
        };
    }

    Ok(Solved { trace, reduced, curve, area, result })
}

pub fn write_age_csv(curve: &AgeCurve, path: &Path) -> anyhow::Result<()> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    curve.write_csv(BufWriter::new(file))?;
    Ok(())
}

/// Step-by-step account of what the solver did.
pub fn trace_text(instance: &Instance) -> anyhow::Result<String> {
    let mut out = String::new();
    let inst = match instance {
        Instance::TwoHop(two) => {
            let (two, _) = two.normalize()?;
            let reduced = twohop_aoi::model::to_single_hop(&two);
            let _ = writeln!(out, "two-hop instance, N = {}", two.len());
            let _ = writeln!(
                out,
                "reduced to one hop: s' = {}, d' = {}, T' = {}",
                nums(&reduced.arrivals),
                num(reduced.service),
                num(reduced.deadline)
            );
            reduced
        }
        Instance::SingleHop(one) => {
            let _ = writeln!(
                out,
                "single-hop instance, N = {}: s = {}, d = {}, T = {}",
                one.len(),
                nums(&one.arrivals),
                num(one.service),
                num(one.deadline)
            );
            one.clone()
        }
    };
    let (_, trace) = solve_single_hop(&inst)?;
    let n = inst.len();

    if trace.branch == Branch::SmallHorizon {
        let _ = writeln!(
            out,
            "T = {} < (N+1)d = {}: closed-form branch, no balancing runs",
            num(inst.deadline),
            num((n as f64 + 1.0) * inst.service)
        );
    } else {
        let _ = writeln!(
            out,
            "T = {} >= (N+1)d = {}: inter-update balancing",
            num(inst.deadline),
            num((n as f64 + 1.0) * inst.service)
        );
        for (k, seg) in trace.balancing_segments.iter().enumerate() {
            let labels: Vec<String> = seg
                .candidates
                .iter()
                .enumerate()
                .map(|(j, c)| format!("{}:{}", seg.start + j, num(*c)))
                .collect();
            let _ = writeln!(
                out,
                "run {}: i{}={}, value {}  (candidates {}; largest maximizer taken)",
                k + 1,
                k + 1,
                seg.end,
                num(seg.value),
                labels.join(" ")
            );
        }
        if let Some(x_e) = &trace.x_e {
            let _ = writeln!(out, "x_e = {}", nums(x_e.as_slice()));
        }
        match trace.branch {
            Branch::BalancedFeasible => {
                let _ = writeln!(out, "amendment: none needed, x_e is feasible");
            }
            Branch::AmendedAtN0 => {
                let _ = writeln!(
                    out,
                    "amendment: n0={}, keep x_1..x_{}, set the rest to 2d = {}, last gap absorbs the remainder",
                    trace.n0.unwrap_or(0),
                    trace.n0.unwrap_or(1) - 1,
                    num(2.0 * inst.service)
                );
            }
            Branch::AmendedViaSmallHorizonBranch => {
                let _ = writeln!(out, "amendment: n0=2 with x_1 free, switching to the closed form");
            }
            Branch::SmallHorizon => {}
        }
    }
    let _ = writeln!(out, "branch: {}", trace.branch);
    let _ = writeln!(out, "x_star = {}", nums(trace.x_star.as_slice()));
    let _ = writeln!(out, "objective = {}", num(trace.x_star.objective()));
    Ok(out)
}
