//! Age-of-information trajectories and their exact areas.
//!
//! The age at the destination is `a(t) = t − u(t)`, where `u(t)` is the
//! generation epoch of the freshest update received by `t`, with `a(0) = 0`.
//! Between deliveries it grows with slope one; at a delivery at `τ` of an
//! update generated at `g` it drops to `τ − g`.

use std::io;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::TwoHopSchedule;
use crate::tolerance;

/// One status update as seen by the destination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Update {
    pub generated: f64,
    pub delivered: f64,
}

/// Vertices of the piecewise-linear age trajectory on `[0, T]`.
///
/// A delivery contributes two vertices with the same time: the age just before
/// and just after the drop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgeCurve {
    pub breakpoints: Vec<(f64, f64)>,
}

fn check_updates(updates: &[Update], horizon: f64) -> Result<()> {
    let mut prev = Update { generated: 0.0, delivered: 0.0 };
    for (i, u) in updates.iter().enumerate() {
        if !(u.generated.is_finite() && u.delivered.is_finite()) {
            return Err(Error::InvalidSchedule(format!("update {} has non-finite epochs", i + 1)));
        }
        if !tolerance::geq(u.delivered, u.generated) {
            return Err(Error::InvalidSchedule(format!("update {} delivered before it was generated", i + 1)));
        }
        if !tolerance::geq(u.generated, prev.generated) || !tolerance::geq(u.delivered, prev.delivered) {
            return Err(Error::InvalidSchedule(format!("update {} is out of order", i + 1)));
        }
        if !tolerance::geq(horizon, u.delivered) {
            return Err(Error::InvalidSchedule(format!(
                "update {} delivered at {} after T = {horizon}",
                i + 1,
                u.delivered
            )));
        }
        prev = *u;
    }
    Ok(())
}

impl AgeCurve {
    /// Traces the trajectory from `(0, 0)` to `(T, a(T))`.
    pub fn from_updates(updates: &[Update], horizon: f64) -> Result<Self> {
        check_updates(updates, horizon)?;
        let mut pts: Vec<(f64, f64)> = vec![(0.0, 0.0)];
        let mut freshest = 0.0;
        for u in updates {
            let before = u.delivered - freshest;
            let after = u.delivered - u.generated;
            if pts.last() != Some(&(u.delivered, before)) {
                pts.push((u.delivered, before));
            }
            if after != before {
                pts.push((u.delivered, after));
            }
            freshest = u.generated;
        }
        let end = (horizon, horizon - freshest);
        if pts.last() != Some(&end) {
            pts.push(end);
        }
        Ok(Self { breakpoints: pts })
    }

    pub fn horizon(&self) -> f64 {
        self.breakpoints.last().map_or(0.0, |p| p.0)
    }

    /// Age at `t`, taking the post-drop value at a delivery instant.
    pub fn age_at(&self, t: f64) -> f64 {
        let pts = &self.breakpoints;
        let idx = pts.partition_point(|p| p.0 <= t);
        if idx == 0 {
            return pts[0].1;
        }
        let (t0, a0) = pts[idx - 1];
        a0 + (t - t0)
    }

    /// Writes `time,age` rows, one per breakpoint.
    pub fn write_csv<W: io::Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["time", "age"])?;
        for (t, a) in &self.breakpoints {
            w.write_record([t.to_string(), a.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `∫₀ᵀ a(t) dt` in closed form: `Σᵢ [½(Dᵢ−gᵢ₋₁)² − ½(Dᵢ−gᵢ)²] + ½(T−g_N)²` with `g₀ = 0`.
pub fn area_of_updates(updates: &[Update], horizon: f64) -> Result<f64> {
    check_updates(updates, horizon)?;
    let mut prev_generated = 0.0;
    let mut area = 0.0;
    for u in updates {
        let a = u.delivered - prev_generated;
        let b = u.delivered - u.generated;
        area += 0.5 * (a * a - b * b);
        prev_generated = u.generated;
    }
    let tail = horizon - prev_generated;
    Ok(area + 0.5 * tail * tail)
}

/// Area under the age curve produced by a two-hop schedule, plus the curve.
pub fn age_area(schedule: &TwoHopSchedule, horizon: f64) -> Result<(f64, AgeCurve)> {
    let updates = schedule.updates();
    let area = area_of_updates(&updates, horizon)?;
    let curve = AgeCurve::from_updates(&updates, horizon)?;
    Ok((area, curve))
}

/// The un-halved objective `Σ[(t̄ᵢ+d̄−tᵢ₋₁)² − (t̄ᵢ+d̄−tᵢ)²] + (T−t_N)²` that
/// the offline problem is usually written with. Equal to twice the area.
pub fn age_objective(schedule: &TwoHopSchedule, horizon: f64) -> Result<f64> {
    Ok(2.0 * area_of_updates(&schedule.updates(), horizon)?)
}
