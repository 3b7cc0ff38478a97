//! Closed-form and high-SNR average symbol error rate.

use serde::{Deserialize, Serialize};

use super::special::{dd, dd_div, dd_powi, dd_recip, ser_kernel, Dd};
use super::terms::{binomial, TermSet};
use crate::error::{Error, Result};
use crate::model::Modulation;

/// CSI regime assumed by the high-SNR approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CsiMode {
    /// Every link has `ρ = 1`; the SER decays with slope `N`.
    Perfect,
    /// Every link has `ρ < 1`; the SER decays with slope 1.
    Outdated,
}

pub(crate) fn average_ser(
    own: &TermSet,
    other: &TermSet,
    psi_r: f64,
    psi_h: f64,
    m: Modulation,
) -> Result<f64> {
    let beta = dd(m.beta);
    let psi_r = dd(psi_r);
    let psi_h = dd(psi_h);
    let mut acc = dd(0.0);
    for t in &own.dd {
        let a = dd_recip(psi_r * t.sigma_own);
        let xa = t.xi * a;
        let zx = dd_div(t.zeta, t.xi);
        let mut inner = dd(0.0);
        for u in &other.dd {
            let b = dd_recip(psi_h * u.sigma_own);
            let xb = u.xi * b;
            let zx2 = dd_div(u.zeta, u.xi);
            let v = ser_kernel(a, b, beta)
                + zx2 * ser_kernel(a, xb, beta)
                + zx * ser_kernel(xa, b, beta)
                + zx * zx2 * ser_kernel(xa, xb, beta);
            inner += u.weight * v;
        }
        acc += t.weight * inner;
    }
    let ser: Dd = dd(m.alpha) * 0.5 - dd(m.alpha) * beta.sqrt() * acc;
    finish("average_ser", ser.hi())
}

fn finish(function: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::NonConvergence {
            function,
            detail: format!("evaluation lost all significant digits (got {v})"),
        })
    }
}

/// Leading high-SNR term under perfect CSI for `n` relays.
pub(crate) fn asymptotic_perfect(
    own: &TermSet,
    n: usize,
    psi_r: f64,
    psi_h: f64,
    m: Modulation,
) -> Result<f64> {
    let power = n as u32;
    // (−1)^{N+t+1} = (−1)^{N+1}·(−1)^t and the term already carries (−1)^t
    let sign = if (power + 1).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let mut acc = dd(0.0);
    for t in &own.dd {
        let own_part = dd_powi(t.rate_sum * t.sigma_own, power - 1)
            * dd_powi(dd_recip(dd(psi_r) * t.sigma_own), power);
        let other_part = dd_powi(t.rate_sum * t.sigma_other, power - 1)
            * dd_powi(dd_recip(dd(psi_h) * t.sigma_other), power);
        acc += t.signed_count * sign * (own_part + other_part);
    }
    // α/(2√π)·Γ(N+½)/Γ(N+1) = (α/2)·C(2N, N)/4^N
    let central = binomial(2 * n as u64, n as u64) as f64;
    let pref =
        dd(m.alpha) * 0.5 * central / 4f64.powi(power as i32) * dd_powi(dd(2.0) / m.beta, power);
    finish("asymptotic_ser", (pref * acc).hi())
}

/// Leading high-SNR term under outdated CSI; `own` and `other` must be
/// enumerated in the same `(i, A_t)` order.
pub(crate) fn asymptotic_outdated(
    own: &TermSet,
    other: &TermSet,
    psi_r: f64,
    psi_h: f64,
    m: Modulation,
) -> Result<f64> {
    let mut acc = dd(0.0);
    for (t, u) in own.dd.iter().zip(&other.dd) {
        acc += dd_div(t.weight * (1.0 + t.zeta), dd(psi_r) * t.sigma_own)
            + dd_div(u.weight * (1.0 + u.zeta), dd(psi_h) * u.sigma_own);
    }
    finish("asymptotic_ser", (dd(m.alpha) / (m.beta * 2.0) * acc).hi())
}
