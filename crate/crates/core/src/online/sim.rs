use super::{rate_bound, OnlineConfig, Policy, SimResult};
use crate::error::Result;
use crate::model::{area_of_updates, AgeCurve, Update};

/// Two unit-count batteries fed by their arrival paths.
struct Batteries<'a> {
    source: &'a [f64],
    relay: &'a [f64],
    next_source: usize,
    next_relay: usize,
    source_units: u64,
    relay_units: u64,
}

impl<'a> Batteries<'a> {
    fn new(source: &'a [f64], relay: &'a [f64]) -> Self {
        Self { source, relay, next_source: 0, next_relay: 0, source_units: 1, relay_units: 1 }
    }

    /// Credits every arrival strictly before `t` (the battery as seen at `t⁻`).
    fn advance_to(&mut self, t: f64) {
        while self.next_source < self.source.len() && self.source[self.next_source] < t {
            self.next_source += 1;
            self.source_units += 1;
        }
        while self.next_relay < self.relay.len() && self.relay[self.next_relay] < t {
            self.next_relay += 1;
            self.relay_units += 1;
        }
    }

    fn both_ready(&self) -> bool {
        self.source_units >= 1 && self.relay_units >= 1
    }

    fn spend(&mut self) {
        self.source_units -= 1;
        self.relay_units -= 1;
    }

    fn dump(&mut self) {
        self.source_units = 0;
        self.relay_units = 0;
    }
}

/// Runs one policy on given arrival paths (sorted, within `[0, horizon)`).
///
/// Every update is generated at its transmission instant and delivered
/// `d + d̄` later; only updates delivered by `horizon` count.
pub fn simulate_paths(
    policy: Policy,
    d: f64,
    d_bar: f64,
    horizon: f64,
    source: &[f64],
    relay: &[f64],
    record_curve: bool,
) -> Result<SimResult> {
    let cfg = OnlineConfig { d, d_bar, horizon, replications: 1, seed: 0, policy, record_curve };
    cfg.validate()?;
    let s = cfg.service();

    let mut battery = Batteries::new(source, relay);
    let mut transmit_times = Vec::new();
    let mut failed_slots = 0usize;
    let mut failure_runs = Vec::new();

    match policy {
        Policy::BestEffortUniform | Policy::BestEffortWithDumping | Policy::Greedy => {
            let spacing = if policy == Policy::Greedy { s } else { cfg.slot() };
            let mut run = 0u32;
            for n in 1.. {
                let slot = n as f64 * spacing;
                if slot > horizon {
                    break;
                }
                battery.advance_to(slot);
                if battery.both_ready() {
                    battery.spend();
                    transmit_times.push(slot);
                    if run > 0 {
                        failure_runs.push(run);
                        run = 0;
                    }
                } else {
                    failed_slots += 1;
                    run += 1;
                    if policy == Policy::BestEffortWithDumping {
                        battery.dump();
                    }
                }
            }
        }
        Policy::GreedyEventDriven => {
            // Update k ≥ 2 needs the (k−1)-th arrival at both nodes.
            let mut t = 0.0;
            let mut k = 1usize;
            while t <= horizon {
                transmit_times.push(t);
                k += 1;
                let (Some(&a), Some(&b)) = (source.get(k - 2), relay.get(k - 2)) else { break };
                t = (t + s).max(a).max(b);
            }
        }
    }

    let updates: Vec<Update> = transmit_times
        .iter()
        .map(|&t| Update { generated: t, delivered: t + s })
        .filter(|u| u.delivered <= horizon)
        .collect();
    let area = area_of_updates(&updates, horizon)?;
    let delivered = updates.len();
    let update_rate = delivered as f64 / horizon;
    if matches!(policy, Policy::BestEffortUniform | Policy::BestEffortWithDumping) {
        debug_assert!(update_rate <= rate_bound(d, d_bar) + 1.0 / horizon);
    }
    let age_curve_sample = if record_curve { Some(AgeCurve::from_updates(&updates, horizon)?) } else { None };

    Ok(SimResult {
        time_avg_aoi: area / horizon,
        delivered,
        failed_slots,
        update_rate,
        failure_runs,
        transmit_times,
        source_arrivals: source.len(),
        relay_arrivals: relay.len(),
        age_curve_sample,
    })
}
