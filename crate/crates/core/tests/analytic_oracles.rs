//! Closed-form engine against independent oracles: high-precision reference
//! values, quadrature of the density and CDF, algebraic identities, and the
//! binomially weighted path.

mod common;

use std::time::Instant;

use common::{integrate_half_line, random_config, rel_err, rng, slope};
use proptest::prelude::*;
use relaysel::analytic::{
    exact_single_relay_mgf, mgf_multi_rs, subset_identity_residuals, symmetric_simplify, Analyzer,
    CsiMode, TermPath, XiZetaForm,
};
use relaysel::{Modulation, NetworkConfig, Source};

const BPSK: Modulation = Modulation::BPSK;

struct Reference {
    name: &'static str,
    cfg: NetworkConfig,
    ser: [f64; 2],
    cdf_s1_at_0_7: f64,
    pdf_s1_at_0_8: f64,
}

// Reference values computed with 50-digit arithmetic from the subset-sum
// expressions, using an independent implementation.
fn references() -> Vec<Reference> {
    let p15 = 10f64.powf(1.5);
    vec![
        Reference {
            name: "sym4_perfect_40dB",
            cfg: NetworkConfig::symmetric(4, 1.0, 1.0, 1e4, 1e4).unwrap(),
            ser: [4.456_367_963_088_405_1e-14; 2],
            cdf_s1_at_0_7: 3.264_660_585_317_36e-15,
            pdf_s1_at_0_8: 0.568_841_277_864_271_4,
        },
        Reference {
            name: "asym2_rho09_15dB",
            cfg: NetworkConfig::new(
                [vec![1.0, 0.5], vec![2.0, 1.5]],
                [vec![0.9; 2], vec![0.9; 2]],
                p15,
                p15,
            )
            .unwrap(),
            ser: [0.011_441_143_025_457_62, 0.013_609_574_784_307_085],
            cdf_s1_at_0_7: 0.030_332_057_560_150_17,
            pdf_s1_at_0_8: 0.519_962_546_819_819_3,
        },
        Reference {
            name: "asym3_mixed_10dB",
            cfg: NetworkConfig::new(
                [vec![1.0, 0.7, 1.3], vec![0.8, 1.6, 1.1]],
                [vec![0.9, 0.5, 1.0], vec![0.95, 0.7, 0.8]],
                10.0,
                20.0,
            )
            .unwrap(),
            ser: [0.024_905_661_200_881_065, 0.025_697_239_058_987_3],
            cdf_s1_at_0_7: 0.065_149_922_808_042_28,
            pdf_s1_at_0_8: 0.483_081_592_492_334_6,
        },
        Reference {
            name: "sym4_fd01_30dB",
            cfg: NetworkConfig::symmetric(4, 1.0, 0.903_712_642_092_466_3, 1e3, 1e3).unwrap(),
            ser: [1.323_121_414_096_121_2e-4; 2],
            cdf_s1_at_0_7: 3.682_306_668_410_977_7e-4,
            pdf_s1_at_0_8: 0.485_085_744_565_231_8,
        },
    ]
}

#[test]
fn frozen_reference_values_general_path() {
    for r in references() {
        let a = Analyzer::new(&r.cfg).unwrap();
        for s in Source::BOTH {
            let got = a.average_ser(BPSK, s).unwrap();
            assert!(
                rel_err(got, r.ser[s.index()]) < 1e-10,
                "{} {s:?}: {got:e}",
                r.name
            );
        }
        let cdf = a.cdf_e2e_snr(0.7, Source::S1).unwrap();
        // the CDF is formed as 1 − Σ in double precision
        assert!(
            (cdf - r.cdf_s1_at_0_7).abs() < 1e-13,
            "{}: cdf {cdf:e}",
            r.name
        );
        let pdf = a.pdf_selected_gain(0.8, Source::S1).unwrap();
        assert!(
            rel_err(pdf, r.pdf_s1_at_0_8) < 1e-12,
            "{}: pdf {pdf}",
            r.name
        );
    }
}

#[test]
fn frozen_reference_values_symmetric_path() {
    for r in references().into_iter().filter(|r| r.cfg.is_symmetric()) {
        let a = symmetric_simplify(&r.cfg).unwrap();
        assert_eq!(a.path(), TermPath::Symmetric);
        let got = a.average_ser(BPSK, Source::S1).unwrap();
        assert!(rel_err(got, r.ser[0]) < 1e-10, "{}: {got:e}", r.name);
    }
}

#[test]
fn frozen_asymptotic_values() {
    let rho = relaysel::jakes_correlation(0.1).unwrap();
    let cfg = NetworkConfig::symmetric(4, 1.0, rho, 1e5, 1e5).unwrap();
    let v = Analyzer::new(&cfg)
        .unwrap()
        .asymptotic_ser(BPSK, Source::S1, CsiMode::Outdated)
        .unwrap();
    assert!(rel_err(v, 1.307_752_654_609_074_7e-6) < 1e-10, "{v:e}");

    let cfg = NetworkConfig::new(
        [vec![1.0, 0.5], vec![2.0, 1.5]],
        [vec![1.0; 2], vec![1.0; 2]],
        1e4,
        1e4,
    )
    .unwrap();
    let v = Analyzer::new(&cfg)
        .unwrap()
        .asymptotic_ser(BPSK, Source::S1, CsiMode::Perfect)
        .unwrap();
    assert!(rel_err(v, 2.8125e-8) < 1e-12, "{v:e}");
}

#[test]
fn identities_single_relay_exact() {
    let r = subset_identity_residuals(&[2.5]).unwrap();
    assert_eq!(r.r1, 0.0);
    assert!(r.r2.is_empty());
}

#[test]
fn identities_four_relays() {
    let r = subset_identity_residuals(&[0.5, 1.0, 2.0, 4.0]).unwrap();
    assert_eq!(r.r2.len(), 3);
    assert!(r.max() < 1e-9, "{r:?}");
}

#[test]
fn identities_six_relays_random() {
    let mut g = rng(6);
    for _ in 0..100 {
        let v: Vec<f64> = (0..6)
            .map(|_| 0.05 + 20.0 * rand::RngExt::random::<f64>(&mut g))
            .collect();
        let r = subset_identity_residuals(&v).unwrap();
        assert!(r.max() < 1e-8, "{v:?}: {r:?}");
    }
}

#[test]
fn identities_reject_bad_input() {
    assert!(subset_identity_residuals(&[]).is_err());
    assert!(subset_identity_residuals(&[1.0, -1.0]).is_err());
    assert!(subset_identity_residuals(&[1.0; 13]).is_err());
}

#[test]
fn density_normalizes() {
    let mut g = rng(11);
    for n in 1..=4 {
        for &rho in &[0.3, 0.7, 0.9, 1.0] {
            let cfg = random_config(&mut g, n, &[rho], 10.0, 10.0);
            let a = Analyzer::new(&cfg).unwrap();
            for s in Source::BOTH {
                let total = integrate_half_line(|z| a.pdf_selected_gain(z, s).unwrap(), 1e-12);
                assert!((total - 1.0).abs() < 1e-6, "n={n} rho={rho}: {total}");
            }
        }
    }
}

#[test]
fn density_nonnegative_and_tail_matches() {
    let mut g = rng(12);
    let cfg = random_config(&mut g, 3, &[0.2, 0.6, 0.95], 10.0, 10.0);
    let a = Analyzer::new(&cfg).unwrap();
    for i in 0..200 {
        let z = i as f64 * 0.05;
        let p = a.pdf_selected_gain(z, Source::S2).unwrap();
        assert!(p >= 0.0);
    }
    for z in [0.3, 1.0, 4.0] {
        let tail = integrate_half_line(|u| a.pdf_selected_gain(z + u, Source::S2).unwrap(), 1e-13);
        let c = a.ccdf_selected_gain(z, Source::S2).unwrap();
        assert!((tail - c).abs() < 1e-9, "{z}: {tail} vs {c}");
    }
}

#[test]
fn single_relay_density_is_exponential_for_any_rho() {
    for rho in [0.0, 0.4, 1.0] {
        let cfg = NetworkConfig::symmetric(1, 2.0, rho, 5.0, 5.0).unwrap();
        let a = Analyzer::new(&cfg).unwrap();
        for z in [0.0, 0.5, 3.0] {
            let want = (-z / 2.0f64).exp() / 2.0;
            assert!((a.pdf_selected_gain(z, Source::S1).unwrap() - want).abs() < 1e-15);
        }
    }
}

/// `P(γ ≤ z)` by one-dimensional quadrature over the own-link gain, with the
/// two hop gains independent and the other-link gain entering through its
/// tail probability.
fn cdf_by_quadrature(a: &Analyzer, z: f64, s: Source) -> f64 {
    let psi_r = a.config().psi_r();
    let psi_h = a.config().psi_h();
    let x0 = z / psi_r;
    let tail = integrate_half_line(
        |u| {
            let x = x0 + u;
            let y = z * psi_r * x / (psi_h * (psi_r * x - z));
            a.pdf_selected_gain(x, s).unwrap() * a.ccdf_selected_gain(y, s.other()).unwrap()
        },
        1e-14,
    );
    1.0 - tail
}

#[test]
fn snr_cdf_matches_quadrature() {
    for r in references() {
        let a = Analyzer::new(&r.cfg).unwrap();
        let psi = r.cfg.psi_r();
        for s in Source::BOTH {
            for f in [0.01, 0.1, 0.5, 2.0] {
                let z = f * psi;
                let got = a.cdf_e2e_snr(z, s).unwrap();
                let want = cdf_by_quadrature(&a, z, s);
                assert!(
                    (got - want).abs() < 1e-9,
                    "{} {s:?} z={z}: {got} vs {want}",
                    r.name
                );
            }
        }
    }
}

#[test]
fn snr_cdf_limits() {
    let mut g = rng(13);
    let cfg = random_config(&mut g, 3, &[0.5, 0.9, 1.0], 10.0, 30.0);
    let a = Analyzer::new(&cfg).unwrap();
    for s in Source::BOTH {
        assert_eq!(a.cdf_e2e_snr(0.0, s).unwrap(), 0.0);
        assert!((1.0 - a.cdf_e2e_snr(1e4, s).unwrap()) < 1e-9);
    }
    assert!(a.cdf_e2e_snr(-1.0, Source::S1).is_err());
}

#[test]
fn snr_cdf_density_consistency() {
    let mut g = rng(14);
    let cfg = random_config(&mut g, 2, &[0.9], 10.0, 10.0);
    let a = Analyzer::new(&cfg).unwrap();
    let f = |z: f64| a.cdf_e2e_snr(z, Source::S1).unwrap();
    let zs: Vec<f64> = (1..=400).map(|i| i as f64 * 0.05).collect();
    let dens: Vec<f64> = zs
        .iter()
        .map(|&z| {
            let h = 1e-5 * z;
            (f(z + h) - f(z - h)) / (2.0 * h)
        })
        .collect();
    assert!(dens.iter().all(|&d| d >= -1e-9), "negative derivative");
    let integral: f64 = zs
        .windows(2)
        .zip(dens.windows(2))
        .map(|(z, d)| 0.5 * (z[1] - z[0]) * (d[0] + d[1]))
        .sum();
    let increment = f(zs[zs.len() - 1]) - f(zs[0]);
    assert!(
        (integral - increment).abs() < 1e-4,
        "{integral} vs {increment}"
    );
}

/// `α/√(2π) ∫₀^∞ F(t²/β) e^{−t²/2} dt`.
fn ser_by_quadrature(a: &Analyzer, m: Modulation, s: Source) -> f64 {
    let g = |t: f64| a.cdf_e2e_snr(t * t / m.beta, s).unwrap() * (-0.5 * t * t).exp();
    m.alpha / (2.0 * std::f64::consts::PI).sqrt() * integrate_half_line(g, 1e-15)
}

#[test]
fn ser_matches_quadrature_of_cdf() {
    let qpsk_like = Modulation::new(2.0, 1.0).unwrap();
    for r in references() {
        let a = Analyzer::new(&r.cfg).unwrap();
        for m in [BPSK, qpsk_like] {
            for s in Source::BOTH {
                let got = a.average_ser(m, s).unwrap();
                if got < 1e-9 {
                    continue;
                }
                let want = ser_by_quadrature(&a, m, s);
                assert!(
                    rel_err(got, want) < 1e-6,
                    "{} {s:?}: {got:e} vs {want:e}",
                    r.name
                );
            }
        }
    }
}

#[test]
fn ser_tends_to_half_alpha_in_deep_noise() {
    let cfg = NetworkConfig::symmetric(3, 1.0, 0.8, 1e-8, 1e-8).unwrap();
    let v = Analyzer::new(&cfg)
        .unwrap()
        .average_ser(BPSK, Source::S1)
        .unwrap();
    assert!(v <= 0.5 && 0.5 - v < 1e-3, "{v}");
}

#[test]
fn ser_decreases_with_snr() {
    let mut g = rng(15);
    for n in 1..=4 {
        let cfg = random_config(&mut g, n, &[0.5, 0.9, 1.0], 1.0, 1.0);
        let base = Analyzer::new(&cfg).unwrap();
        let mut prev = 1.0;
        for db in (0..=40).step_by(4) {
            let v = base
                .at_snr_db(db as f64)
                .unwrap()
                .average_ser(BPSK, Source::S1)
                .unwrap();
            assert!(v > 0.0 && v <= prev, "n={n} {db} dB: {v:e} after {prev:e}");
            prev = v;
        }
    }
}

#[test]
fn perfect_collapse_equals_general_form() {
    let mut g = rng(16);
    for n in 1..=5 {
        let cfg = random_config(&mut g, n, &[1.0], 20.0, 50.0);
        let general = Analyzer::new(&cfg).unwrap();
        let collapsed =
            Analyzer::build(&cfg, TermPath::General, XiZetaForm::PerfectCollapse).unwrap();
        for s in Source::BOTH {
            let x = general.average_ser(BPSK, s).unwrap();
            let y = collapsed.average_ser(BPSK, s).unwrap();
            assert!(rel_err(y, x) < 1e-9, "n={n}: {x:e} vs {y:e}");
        }
    }
}

#[test]
fn perfect_collapse_rejects_outdated_links() {
    let cfg = NetworkConfig::symmetric(2, 1.0, 0.9, 10.0, 10.0).unwrap();
    let e = Analyzer::build(&cfg, TermPath::General, XiZetaForm::PerfectCollapse).unwrap_err();
    assert!(e.to_string().contains("rho"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetric_path_equals_general(
        n in 1usize..=6,
        sigma2 in 0.2f64..5.0,
        rho in 0.0f64..=1.0,
        db in 0.0f64..35.0,
    ) {
        let p = 10f64.powf(db / 10.0);
        let cfg = NetworkConfig::symmetric(n, sigma2, rho, p, p).unwrap();
        let g = Analyzer::new(&cfg).unwrap();
        let s = symmetric_simplify(&cfg).unwrap();
        let x = g.average_ser(BPSK, Source::S1).unwrap();
        let y = s.average_ser(BPSK, Source::S1).unwrap();
        prop_assert!(rel_err(y, x) < 1e-10, "{} vs {}", x, y);
        for z in [0.0, 0.3 * sigma2, 2.0 * sigma2] {
            let x = g.pdf_selected_gain(z, Source::S2).unwrap();
            let y = s.pdf_selected_gain(z, Source::S2).unwrap();
            prop_assert!((x - y).abs() <= 1e-10 * x.abs().max(1e-300));
        }
    }

    #[test]
    fn snr_cdf_bounded_and_nondecreasing(seed in any::<u64>(), n in 1usize..=4) {
        let mut g = rng(seed);
        let cfg = random_config(&mut g, n, &[0.3, 0.8, 1.0], 10.0, 10.0);
        let a = Analyzer::new(&cfg).unwrap();
        let mut prev = 0.0;
        for i in 0..60 {
            let z = 0.25 * i as f64;
            let f = a.cdf_e2e_snr(z, Source::S1).unwrap();
            prop_assert!((0.0..=1.0).contains(&f));
            prop_assert!(f >= prev - 1e-14, "z={}: {} < {}", z, f, prev);
            prev = f;
        }
    }
}

#[test]
fn symmetric_path_rejects_asymmetric() {
    let cfg = NetworkConfig::new(
        [vec![1.0, 2.0], vec![1.0, 1.0]],
        [vec![1.0; 2], vec![1.0; 2]],
        1.0,
        1.0,
    )
    .unwrap();
    assert!(symmetric_simplify(&cfg).is_err());
}

#[test]
fn symmetric_path_is_faster_at_ten_relays() {
    let cfg = NetworkConfig::symmetric(10, 1.0, 0.9, 100.0, 100.0).unwrap();
    let zs: Vec<f64> = (0..200).map(|i| i as f64 * 0.02).collect();
    let run = |path: TermPath| {
        let t = Instant::now();
        let a = Analyzer::build(&cfg, path, XiZetaForm::General).unwrap();
        let mut acc = 0.0;
        for &z in &zs {
            acc += a.pdf_selected_gain(z, Source::S1).unwrap();
        }
        (t.elapsed(), acc)
    };
    // warm up, then take the best of three
    run(TermPath::General);
    let best = |p| (0..3).map(|_| run(p)).min_by_key(|r| r.0).unwrap();
    let (tg, ag) = best(TermPath::General);
    let (ts, as_) = best(TermPath::Symmetric);
    assert!(rel_err(as_, ag) < 1e-10);
    let speedup = tg.as_secs_f64() / ts.as_secs_f64();
    assert!(speedup > 10.0, "speedup {speedup:.1}");
}

#[test]
fn asymptotic_outdated_has_unit_slope() {
    let rho = relaysel::jakes_correlation(0.1).unwrap();
    let base = Analyzer::new(&NetworkConfig::symmetric(4, 1.0, rho, 1.0, 1.0).unwrap()).unwrap();
    let dbs = [30.0, 40.0, 50.0, 60.0];
    let logs: Vec<f64> = dbs
        .iter()
        .map(|&d| {
            base.at_snr_db(d)
                .unwrap()
                .asymptotic_ser(BPSK, Source::S1, CsiMode::Outdated)
                .unwrap()
                .log10()
        })
        .collect();
    let xs: Vec<f64> = dbs.iter().map(|d| d / 10.0).collect();
    assert!((slope(&xs, &logs) + 1.0).abs() < 1e-12);
}

#[test]
fn asymptotic_perfect_slope_is_relay_count() {
    for n in 1..=4 {
        let base =
            Analyzer::new(&NetworkConfig::symmetric(n, 1.0, 1.0, 1.0, 1.0).unwrap()).unwrap();
        let xs = [3.0, 4.0, 5.0];
        let logs: Vec<f64> = xs
            .iter()
            .map(|&x| {
                base.at_snr_db(10.0 * x)
                    .unwrap()
                    .asymptotic_ser(BPSK, Source::S1, CsiMode::Perfect)
                    .unwrap()
                    .log10()
            })
            .collect();
        assert!((slope(&xs, &logs) + n as f64).abs() < 1e-9, "n={n}");
    }
}

#[test]
fn asymptotic_forms_agree_for_one_relay() {
    // perfect CSI with one relay against outdated CSI with ρ → 1
    let perfect = NetworkConfig::symmetric(1, 1.0, 1.0, 1e5, 1e5).unwrap();
    let nearly = NetworkConfig::symmetric(1, 1.0, 1.0 - 1e-12, 1e5, 1e5).unwrap();
    let a = Analyzer::new(&perfect)
        .unwrap()
        .asymptotic_ser(BPSK, Source::S1, CsiMode::Perfect)
        .unwrap();
    let b = Analyzer::new(&nearly)
        .unwrap()
        .asymptotic_ser(BPSK, Source::S1, CsiMode::Outdated)
        .unwrap();
    assert!(rel_err(b, a) < 1e-9, "{a:e} vs {b:e}");
}

#[test]
fn asymptotic_approaches_exact() {
    let rho = relaysel::jakes_correlation(0.1).unwrap();
    for (cfg, csi) in [
        (
            NetworkConfig::symmetric(2, 1.0, 1.0, 1e5, 1e5).unwrap(),
            CsiMode::Perfect,
        ),
        (
            NetworkConfig::symmetric(4, 1.0, rho, 1e5, 1e5).unwrap(),
            CsiMode::Outdated,
        ),
    ] {
        let a = Analyzer::new(&cfg).unwrap();
        let exact = a.average_ser(BPSK, Source::S1).unwrap();
        let asym = a.asymptotic_ser(BPSK, Source::S1, csi).unwrap();
        let ratio = asym / exact;
        assert!((0.95..1.05).contains(&ratio), "{csi:?}: {ratio}");
    }
}

#[test]
fn asymptotic_rejects_mixed_or_mismatched_csi() {
    let mixed = NetworkConfig::new(
        [vec![1.0; 2], vec![1.0; 2]],
        [vec![1.0, 0.9], vec![1.0; 2]],
        10.0,
        10.0,
    )
    .unwrap();
    let a = Analyzer::new(&mixed).unwrap();
    for csi in [CsiMode::Perfect, CsiMode::Outdated] {
        assert!(a
            .asymptotic_ser(BPSK, Source::S1, csi)
            .unwrap_err()
            .to_string()
            .contains("rho"));
    }
    let perfect =
        Analyzer::new(&NetworkConfig::symmetric(2, 1.0, 1.0, 10.0, 10.0).unwrap()).unwrap();
    assert!(perfect
        .asymptotic_ser(BPSK, Source::S1, CsiMode::Outdated)
        .is_err());
}

#[test]
fn mgf_power_law_exponents() {
    for (n, k) in [(4, 1), (4, 2), (4, 3), (4, 4), (6, 2)] {
        let ss = [-1e4, -1e5, -1e6];
        let xs: Vec<f64> = ss.iter().map(|s: &f64| (-s).log10()).collect();
        let ys: Vec<f64> = ss
            .iter()
            .map(|&s| mgf_multi_rs(s, n, k, 0.9, 1.0).unwrap().log10())
            .collect();
        assert!((slope(&xs, &ys) + k as f64).abs() < 0.05, "n={n} k={k}");
    }
}

#[test]
fn mgf_all_relays_ignores_correlation() {
    for s in [-1e3, -1e5] {
        let a = mgf_multi_rs(s, 4, 4, 1.0, 2.0).unwrap();
        let b = mgf_multi_rs(s, 4, 4, 0.5, 2.0).unwrap();
        assert!(rel_err(b, a) < 1e-12);
    }
}

#[test]
fn mgf_single_relay_constant_factor() {
    let s = -1e6;
    let ratio = mgf_multi_rs(s, 1, 1, 1.0, 1.0).unwrap() / exact_single_relay_mgf(s, 1.0);
    assert!((ratio - 2.0).abs() < 1e-5, "{ratio}");
}

#[test]
fn mgf_rejects_bad_arguments() {
    assert!(mgf_multi_rs(0.0, 4, 1, 0.9, 1.0).is_err());
    assert!(mgf_multi_rs(-1.0, 4, 0, 0.9, 1.0).is_err());
    assert!(mgf_multi_rs(-1.0, 4, 2, 1.5, 1.0).is_err());
}
