//! Seeded synthetic spectra on the circle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` independent uniform phases, sorted.
pub fn poisson_phases(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * std::f64::consts::TAU).collect();
    p.sort_by(f64::total_cmp);
    p
}

/// Phases whose spacings are independent draws from the GOE surmise, scaled to fill 2π.
///
/// Spacings are uncorrelated, so this matches the GOE spacing law but not its ratio law.
pub fn surmise_phases(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s: Vec<f64> =
        (0..n).map(|_| (-4.0 * (1.0 - rng.random::<f64>()).ln() / std::f64::consts::PI).sqrt()).collect();
    let total: f64 = s.iter().sum();
    let mut acc = 0.0;
    s.iter()
        .map(|x| {
            let here = acc;
            acc += x / total * std::f64::consts::TAU;
            here
        })
        .collect()
}
