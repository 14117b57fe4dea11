use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

/// Unit-rate Poisson arrival epochs in `[0, horizon)`.
///
/// Deterministic in `(seed, stream)`; distinct streams of the same seed are
/// independent.
pub fn sample_poisson(horizon: f64, seed: u64, stream: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut out = Vec::with_capacity(horizon.max(0.0) as usize + 16);
    let mut t = 0.0;
    loop {
        let gap: f64 = Exp1.sample(&mut rng);
        t += gap;
        if t >= horizon {
            return out;
        }
        out.push(t);
    }
}
