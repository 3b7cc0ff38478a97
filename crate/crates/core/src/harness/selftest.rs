//! Built-in numerical self-checks.

use std::f64::consts::PI;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{
    bessel_k1, exact_single_relay_mgf, gauss_2f1, gaussian_q, mgf_multi_rs,
    subset_identity_residuals, Analyzer,
};
use crate::model::{jakes_correlation, Modulation, NetworkConfig, Source};

/// Outcome of one self-check.
#[derive(Debug, Clone, PartialEq)]
pub struct SelftestCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> SelftestCheck {
    SelftestCheck {
        name,
        passed,
        detail,
    }
}

/// `∫₀^∞ f` through `x = t/(1−t)`.
fn integrate_half_line<F: Fn(f64) -> f64>(f: F) -> f64 {
    quadrature::integrate(
        |t: f64| {
            if t >= 1.0 {
                return 0.0;
            }
            let x = t / (1.0 - t);
            f(x) / ((1.0 - t) * (1.0 - t))
        },
        0.0,
        1.0,
        1e-14,
    )
    .integral
}

fn subset_identity_check() -> SelftestCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        for _ in 0..100 {
            let v: Vec<f64> = (0..n).map(|_| 0.1 + 4.9 * rng.random::<f64>()).collect();
            match subset_identity_residuals(&v) {
                Ok(r) => worst = worst.max(r.max()),
                Err(e) => return check("subset identities", false, e.to_string()),
            }
        }
    }
    check(
        "subset identities",
        worst < 1e-8,
        format!("max residual {worst:.3e} over N = 1..6"),
    )
}

fn k1_check() -> SelftestCheck {
    let mut worst: f64 = 0.0;
    for x in [0.3, 1.0, 2.5, 8.0] {
        let q = integrate_half_line(|t| (-x * t.cosh()).exp() * t.cosh());
        let v = bessel_k1(x).unwrap_or(f64::NAN);
        worst = worst.max((v / q - 1.0).abs());
    }
    check(
        "bessel K1 vs integral",
        worst < 1e-9,
        format!("max relative error {worst:.3e}"),
    )
}

fn hyp_check() -> SelftestCheck {
    let a = gauss_2f1(1.0, 1.0, 2.0, 0.5).unwrap_or(f64::NAN);
    let e1 = (a - 2.0 * 2f64.ln()).abs();
    // brute-force series at z = 0.9
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 0..2000 {
        let kf = k as f64;
        term *= (2.5 + kf) * (1.5 + kf) / ((2.0 + kf) * (kf + 1.0)) * 0.9;
        sum += term;
    }
    let b = gauss_2f1(2.5, 1.5, 2.0, 0.9).unwrap_or(f64::NAN);
    let e2 = (b / sum - 1.0).abs();
    check(
        "gauss 2F1",
        e1 < 1e-12 && e2 < 1e-9,
        format!("|F(1,1;2;.5) - 2ln2| = {e1:.2e}, rel err at z=.9 {e2:.2e}"),
    )
}

fn q_check() -> SelftestCheck {
    let q = quadrature::integrate(|t: f64| (-0.5 * t * t).exp(), 1.0, 40.0, 1e-15).integral
        / (2.0 * PI).sqrt();
    let e = (gaussian_q(1.0) - q).abs();
    check(
        "gaussian Q vs quadrature",
        e < 1e-12,
        format!("|Q(1) - quadrature| = {e:.2e}"),
    )
}

fn jakes_check() -> SelftestCheck {
    let x = 2.0 * PI * 0.1;
    let q = x * x / 4.0;
    let (mut term, mut sum) = (1.0, 1.0);
    for k in 1..60 {
        term *= -q / (k * k) as f64;
        sum += term;
    }
    let e = (jakes_correlation(0.1).unwrap_or(f64::NAN) - sum).abs();
    check(
        "jakes correlation vs series",
        e < 1e-13,
        format!("error {e:.2e}"),
    )
}

fn symmetric_check() -> SelftestCheck {
    let mut worst: f64 = 0.0;
    for (rho, db) in [(1.0, 10.0), (0.9, 20.0), (0.5, 30.0)] {
        let run = || -> crate::Result<f64> {
            let cfg = NetworkConfig::symmetric(4, 1.0, rho, 1.0, 1.0)?;
            let g = Analyzer::new(&cfg)?
                .at_snr_db(db)?
                .average_ser(Modulation::BPSK, Source::S1)?;
            let s = Analyzer::symmetric(&cfg)?
                .at_snr_db(db)?
                .average_ser(Modulation::BPSK, Source::S1)?;
            Ok((g / s - 1.0).abs())
        };
        match run() {
            Ok(e) => worst = worst.max(e),
            Err(e) => return check("symmetric path equivalence", false, e.to_string()),
        }
    }
    check(
        "symmetric path equivalence",
        worst < 1e-10,
        format!("max relative difference {worst:.2e}"),
    )
}

fn normalization_check() -> SelftestCheck {
    let run = || -> crate::Result<f64> {
        let cfg = NetworkConfig::new(
            [vec![1.0, 0.5, 2.0], vec![0.7, 1.5, 1.0]],
            [vec![0.9, 0.7, 0.3], vec![1.0, 0.9, 0.7]],
            1.0,
            1.0,
        )?;
        let a = Analyzer::new(&cfg)?;
        Ok(integrate_half_line(|z| {
            a.pdf_selected_gain(z, Source::S1).unwrap_or(f64::NAN)
        }))
    };
    match run() {
        Ok(v) => check(
            "selected-gain density integrates to 1",
            (v - 1.0).abs() < 1e-6,
            format!("integral {v:.12}"),
        ),
        Err(e) => check(
            "selected-gain density integrates to 1",
            false,
            e.to_string(),
        ),
    }
}

fn mgf_check() -> SelftestCheck {
    let s = -1e6;
    let v = mgf_multi_rs(s, 1, 1, 0.9, 1.0).unwrap_or(f64::NAN);
    let ratio = v / exact_single_relay_mgf(s, 1.0);
    check(
        "multi-relay MGF at N = K = 1",
        (ratio - 2.0).abs() < 1e-3,
        format!(
            "formula / exact exponential MGF = {ratio:.6} at s = {s:e}; the expression carries a constant factor 2 and is used for its exponent only"
        ),
    )
}

/// Runs every self-check.
pub fn selftest() -> Vec<SelftestCheck> {
    vec![
        subset_identity_check(),
        k1_check(),
        hyp_check(),
        q_check(),
        jakes_check(),
        symmetric_check(),
        normalization_check(),
        mgf_check(),
    ]
}
