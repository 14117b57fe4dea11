//! Random instance and schedule generators for property tests and checks.

use rand::Rng;

use crate::model::{validate_two_hop, SingleHopInstance, TwoHopInstance, TwoHopSchedule};

fn sorted_uniform<R: Rng + ?Sized>(rng: &mut R, n: usize, hi: f64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=hi)).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `(0, hi]` rather than `[0, hi)`.
fn positive_uniform<R: Rng + ?Sized>(rng: &mut R, hi: f64) -> f64 {
    hi * (1.0 - rng.random::<f64>())
}

/// Feasible two-hop instance: `N ∈ 1..=max_n`, arrivals uniform on
/// `[0, T/2]`, service times uniform on `(0, T/(2N+2)]`, rejection-sampled
/// until feasible.
pub fn random_two_hop<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> TwoHopInstance {
    loop {
        let n = rng.random_range(1..=max_n.max(1));
        let t = rng.random_range(5.0..50.0);
        let cap = t / (2 * n + 2) as f64;
        let inst = TwoHopInstance::new(
            sorted_uniform(rng, n, t / 2.0),
            sorted_uniform(rng, n, t / 2.0),
            positive_uniform(rng, cap),
            positive_uniform(rng, cap),
            t,
        );
        if validate_two_hop(&inst).is_ok_and(|v| v.is_feasible()) {
            return inst;
        }
    }
}

/// Feasible single-hop instance covering both solver regimes: `d` uniform on
/// `(0, T/N]` and arrivals uniform on `[0, T − N·d]`, so roughly one draw in
/// `N+1` lands in the small-horizon regime.
pub fn random_single_hop<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> SingleHopInstance {
    let n = rng.random_range(1..=max_n.max(1));
    let t = rng.random_range(5.0..50.0);
    let d = positive_uniform(rng, t / n as f64);
    let room = (t - n as f64 * d).max(0.0);
    SingleHopInstance::new(sorted_uniform(rng, n, room), d, t)
}

/// A valid two-hop schedule (`N ∈ 0..=max_n`) together with its horizon:
/// data causality and the half-duplex chain hold, all deliveries are by `T`.
pub fn random_two_hop_schedule<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> (TwoHopSchedule, f64) {
    let n = rng.random_range(0..=max_n);
    let t = rng.random_range(5.0..50.0);
    let cap = t / (2 * n + 2) as f64;
    let d = positive_uniform(rng, cap);
    let db = positive_uniform(rng, cap);
    let slack = t - n as f64 * (d + db);
    let weights: Vec<f64> = (0..2 * n + 1).map(|_| rng.random::<f64>()).collect();
    let total: f64 = weights.iter().sum();
    let mut gaps = weights.iter().map(|w| slack * w / total);
    let mut source = Vec::with_capacity(n);
    let mut relay = Vec::with_capacity(n);
    let mut cursor = 0.0;
    for _ in 0..n {
        let tx = cursor + gaps.next().unwrap_or(0.0);
        let rx = tx + d + gaps.next().unwrap_or(0.0);
        source.push(tx);
        relay.push(rx);
        cursor = rx + db;
    }
    (TwoHopSchedule::new(source, relay, db), t)
}
