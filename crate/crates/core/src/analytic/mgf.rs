//! Moment generating function of the MRC output under multiple relay
//! selection in a symmetric network.

use crate::error::{Error, Result};

/// Largest `N` for which the factorials stay exact in `i128`.
const MAX_MGF_RELAYS: usize = 30;

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// `Φ(s)` of the combined SNR when the best `k` of `n` relays are used,
/// every link has unit variance and correlation `rho`, and the per-relay
/// SNR is approximated by `ψ_h min(|h_1i|², |h_2i|²)`.
///
/// The expression behaves as `c·(−s)^{−k}` and is intended for reading off
/// the diversity order, not absolute values: at `n = k = 1` it returns
/// `4/(−sψ_h)` while the exact exponential MGF tends to `2/(−sψ_h)`.
pub fn mgf_multi_rs(s: f64, n: usize, k: usize, rho: f64, psi_h: f64) -> Result<f64> {
    if !(s < 0.0) || !s.is_finite() {
        return Err(Error::domain(
            "mgf_multi_rs",
            format!("s must be negative, got {s}"),
        ));
    }
    if n == 0 || n > MAX_MGF_RELAYS {
        return Err(Error::invalid(
            "n_relays",
            format!("must lie in [1, {MAX_MGF_RELAYS}], got {n}"),
        ));
    }
    if k == 0 || k > n {
        return Err(Error::invalid(
            "k",
            format!("must lie in [1, {n}], got {k}"),
        ));
    }
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::invalid(
            "rho",
            format!("must lie in [0, 1], got {rho}"),
        ));
    }
    if !(psi_h > 0.0 && psi_h.is_finite()) {
        return Err(Error::invalid(
            "psi_h",
            format!("must be positive, got {psi_h}"),
        ));
    }
    let nk = n - k;
    let lead =
        n as f64 * factorial(n - 1) as f64 / (factorial(k - 1) as f64 * factorial(nk) as f64);
    let x = 4.0 / (-s * psi_h);
    let r2 = rho * rho;
    let mut total = 0.0;
    for nn in 0..=nk {
        for m in 0..=nn {
            // Σ_q (−1)^q (N−K)! / ((N−K−n−q)! m! q! (n−m)!), an exact integer
            let mut coef: i128 = 0;
            for q in 0..=nk - nn {
                let denom =
                    factorial(nk - nn - q) * factorial(m) * factorial(q) * factorial(nn - m);
                let v = factorial(nk) / denom;
                coef += if q % 2 == 0 { v } else { -v };
            }
            if coef == 0 {
                continue;
            }
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let denom = (n - nn + m) as f64 - m as f64 * r2;
            total += x.powi((n - nn) as i32) * sign * coef as f64 / denom;
        }
    }
    Ok(lead * total)
}

/// Exact MGF `1/(1 − sψ_h/2)` of `ψ_h min(|h_1|², |h_2|²)` with unit-variance
/// links, the single-relay reference for [`mgf_multi_rs`].
pub fn exact_single_relay_mgf(s: f64, psi_h: f64) -> f64 {
    1.0 / (1.0 - s * psi_h / 2.0)
}
