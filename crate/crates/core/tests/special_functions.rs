//! `K₁`, `₂F₁` and `Q` against quadrature, asymptotic series and brute-force
//! sums.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::{integrate_half_line, rel_err};
use proptest::prelude::*;
use relaysel::analytic::{bessel_k1, bessel_k1_scaled, gauss_2f1, gaussian_q};
use twofloat::TwoFloat;

/// `eˣK₁(x) = ∫₀^∞ e^{−x(cosh t − 1)} cosh t dt`.
fn k1_scaled_by_quadrature(x: f64) -> f64 {
    // the integrand is below e^{−800} past this point
    let end = (1.0 + 800.0 / x).acosh();
    quadrature::integrate(
        |t| (-x * (t.cosh() - 1.0)).exp() * t.cosh(),
        0.0,
        end,
        1e-14,
    )
    .integral
}

#[test]
fn k1_at_one() {
    assert!((bessel_k1(1.0).unwrap() - 0.601_907_230_2).abs() < 1e-10);
}

#[test]
fn k1_matches_integral_representation() {
    for x in [0.01, 0.1, 0.5, 1.0, 1.9, 2.0, 2.1, 5.0, 20.0, 100.0, 700.0] {
        let q = k1_scaled_by_quadrature(x);
        let got = bessel_k1_scaled(x).unwrap();
        assert!(rel_err(got, q) < 1e-10, "x={x}: {got} vs {q}");
        let unscaled = bessel_k1(x).unwrap();
        assert!(rel_err(unscaled, q * (-x).exp()) < 1e-10, "x={x}");
    }
}

#[test]
fn k1_large_argument_series() {
    // e^{−x}√(π/2x) Σ_k t_k with t_k = t_{k−1}(4 − (2k−1)²)/(8kx)
    let x = 10.0;
    let mut term = 1.0f64;
    let mut sum = 1.0;
    for k in 1..12 {
        let kf = k as f64;
        term *= (4.0 - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * x);
        sum += term;
    }
    let want = (-x).exp() * (FRAC_PI_2 / x).sqrt() * sum;
    assert!(rel_err(bessel_k1(x).unwrap(), want) < 1e-6);
}

#[test]
fn k1_domain_errors() {
    for x in [0.0, -2.0, f64::NAN] {
        assert!(bessel_k1(x).is_err());
    }
}

#[test]
fn hyp_logarithm_identity() {
    let v = gauss_2f1(1.0, 1.0, 2.0, 0.5).unwrap();
    assert!((v - 2.0 * std::f64::consts::LN_2).abs() < 1e-14);
    for z in [0.1, 0.79, 0.81, 0.95, 0.999] {
        let want = -(1.0f64 - z).ln() / z;
        assert!(
            rel_err(gauss_2f1(1.0, 1.0, 2.0, z).unwrap(), want) < 1e-12,
            "z={z}"
        );
    }
}

#[test]
fn hyp_binomial_identity() {
    // ₂F₁(a, b; b; z) = (1 − z)^{−a}
    for (a, z) in [(2.5, 0.3), (0.7, 0.85), (1.5, 0.97)] {
        let want = (1.0f64 - z).powf(-a);
        assert!(
            rel_err(gauss_2f1(a, 1.25, 1.25, z).unwrap(), want) < 1e-11,
            "a={a} z={z}"
        );
    }
}

#[test]
fn hyp_elliptic_identity() {
    // ₂F₁(1/2, 1/2; 1; 1/2) = 2K(1/2)/π
    let want = 2.0 * 1.854_074_677_301_371_9 / PI;
    assert!(rel_err(gauss_2f1(0.5, 0.5, 1.0, 0.5).unwrap(), want) < 1e-14);
}

#[test]
fn hyp_kernel_family_against_long_series() {
    // 50,000 terms summed in double-double
    let (a, b, c, z) = (2.5, 1.5, 2.0, 0.9);
    let mut term = TwoFloat::from(1.0);
    let mut sum = TwoFloat::from(1.0);
    for k in 0..50_000 {
        let kf = k as f64;
        term = term * ((a + kf) * (b + kf)) * z / ((c + kf) * (kf + 1.0));
        sum += term;
    }
    let want = sum.hi();
    assert!(
        rel_err(gauss_2f1(a, b, c, z).unwrap(), want) < 1e-9,
        "{want}"
    );
}

#[test]
fn hyp_domain_errors() {
    assert!(gauss_2f1(2.5, 1.5, 2.0, 1.0).is_err());
    assert!(gauss_2f1(2.5, 1.5, 2.0, -0.1).is_err());
    assert!(gauss_2f1(2.5, 1.5, 0.0, 0.5).is_err());
}

#[test]
fn q_at_one() {
    assert!((gaussian_q(1.0) - 0.158_655_254).abs() < 1e-9);
}

#[test]
fn q_matches_density_quadrature() {
    let phi = |t: f64| (-0.5 * t * t).exp() / (2.0 * PI).sqrt();
    for x in [0.0, 0.5, 1.0, 2.0, 3.5, 6.0] {
        let q = integrate_half_line(|u| phi(x + u), 1e-16);
        assert!((gaussian_q(x) - q).abs() < 1e-12, "x={x}");
    }
}

proptest! {
    #[test]
    fn q_reflection(x in -8.0f64..8.0) {
        prop_assert!((gaussian_q(-x) - (1.0 - gaussian_q(x))).abs() < 1e-15);
    }

    #[test]
    fn k1_scaled_consistent(x in 0.01f64..600.0) {
        let s = bessel_k1_scaled(x).unwrap();
        let u = bessel_k1(x).unwrap();
        prop_assert!(rel_err(u * x.exp(), s) < 1e-12);
    }

    #[test]
    fn hyp_continuous_across_transform(a in 0.5f64..3.0, b in 0.5f64..2.0) {
        let lo = gauss_2f1(a, b, 2.0, 0.8).unwrap();
        let hi = gauss_2f1(a, b, 2.0, 0.8 + 1e-12).unwrap();
        prop_assert!(rel_err(hi, lo) < 1e-9);
    }
}
