#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relaysel::NetworkConfig;

/// ∫₀^∞ f by tanh-sinh after `x = t/(1−t)`.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, tol: f64) -> f64 {
    let g = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let u = 1.0 - t;
        let v = f(t / u) / (u * u);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    quadrature::integrate(g, 0.0, 1.0, tol).integral
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random per-link variances in [0.3, 3) and correlations drawn from `rhos`.
pub fn random_config(
    rng: &mut ChaCha8Rng,
    n: usize,
    rhos: &[f64],
    psi_s: f64,
    psi_r: f64,
) -> NetworkConfig {
    let row = |rng: &mut ChaCha8Rng| {
        (0..n)
            .map(|_| 0.3 + 2.7 * rng.random::<f64>())
            .collect::<Vec<_>>()
    };
    let s1 = row(rng);
    let s2 = row(rng);
    let pick = |rng: &mut ChaCha8Rng| {
        (0..n)
            .map(|_| rhos[(rng.random::<f64>() * rhos.len() as f64) as usize % rhos.len()])
            .collect::<Vec<_>>()
    };
    let r1 = pick(rng);
    let r2 = pick(rng);
    NetworkConfig::new([s1, s2], [r1, r2], psi_s, psi_r).unwrap()
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
