//! Distribution of the selected relay's link gain and of the end-to-end SNR.

use super::special::{bessel_k1_scaled, dd, Dd};
use super::terms::TermSet;

/// Density of `|h_jk|²` at `z ≥ 0`.
pub(crate) fn pdf(terms: &TermSet, z: f64) -> f64 {
    let mut acc = dd(0.0);
    for t in &terms.dd {
        let sigma = t.sigma_own.hi();
        let xi = t.xi.hi();
        let e1 = (-z / sigma).exp();
        let e2 = (-xi * z / sigma).exp();
        acc += t.weight * ((e1 + t.zeta.hi() * e2) / sigma);
    }
    acc.hi()
}

/// `P(|h_jk|² > z)`.
pub(crate) fn ccdf(terms: &TermSet, z: f64) -> f64 {
    let mut acc = dd(0.0);
    for t in &terms.dd {
        let sigma = t.sigma_own.hi();
        let xi = t.xi.hi();
        let e1 = (-z / sigma).exp();
        let e2 = (-xi * z / sigma).exp();
        acc += t.weight * (e1 + t.zeta.hi() / xi * e2);
    }
    acc.hi()
}

/// `y·eʸK₁(y)·e^{−(√A+√B)² z}` with `y = 2z√(AB)`, which equals
/// `2z√(AB)·e^{−(A+B)z}·K₁(2z√(AB))` and tends to 1 as `z → 0`.
fn bessel_factor(a: f64, b: f64, z: f64) -> f64 {
    if z == 0.0 {
        return 1.0;
    }
    let y = 2.0 * z * (a * b).sqrt();
    let d = a.sqrt() + b.sqrt();
    let decay = (-d * d * z).exp();
    if y == 0.0 {
        return decay;
    }
    // the argument is positive and finite here
    let k = bessel_k1_scaled(y).unwrap_or(0.0);
    y * k * decay
}

/// CDF of the upper-bound end-to-end SNR at the source owning `own`.
///
/// `own` holds the terms of `|h_jk|²` and `other` those of `|h_j̄k|²`.
pub(crate) fn cdf_e2e(own: &TermSet, other: &TermSet, z: f64, psi_r: f64, psi_h: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    let mut acc: Dd = dd(0.0);
    for t in &own.dd {
        let a = 1.0 / (psi_r * t.sigma_own.hi());
        let (xi, zeta) = (t.xi.hi(), t.zeta.hi());
        let w = t.weight.hi();
        let mut inner = 0.0;
        for u in &other.dd {
            let b = 1.0 / (psi_h * u.sigma_own.hi());
            let (xi2, zeta2) = (u.xi.hi(), u.zeta.hi());
            let v = bessel_factor(a, b, z)
                + zeta2 / xi2 * bessel_factor(a, xi2 * b, z)
                + zeta / xi * bessel_factor(xi * a, b, z)
                + zeta * zeta2 / (xi * xi2) * bessel_factor(xi * a, xi2 * b, z);
            inner += u.weight.hi() * v;
        }
        acc += dd(w) * inner;
    }
    (1.0 - acc).hi().clamp(0.0, 1.0)
}
