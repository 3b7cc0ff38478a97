//! Sweep execution, cross-method consistency and run outputs.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::config::{ExperimentConfig, Method, Variant};
use super::curve::{emit_csv, SerCurve, SerPoint};
use crate::analytic::{csi_mode_of, Analyzer};
use crate::error::{Error, Result};
use crate::model::{Modulation, Source};
use crate::montecarlo::{simulate_ser_grid, RngStream, Scheme, SimulationOptions};

/// Monte-Carlo points below this SER are excluded from the consistency check.
pub const CONSISTENCY_FLOOR: f64 = 1e-5;

/// Version string written to run manifests.
pub fn version_string() -> String {
    match option_env!("RELAYSEL_GIT_DESCRIBE") {
        Some(d) => format!("relaysel {} ({d})", env!("CARGO_PKG_VERSION")),
        None => format!("relaysel {}", env!("CARGO_PKG_VERSION")),
    }
}

fn fd_label(fd: Option<f64>) -> String {
    fd.map(|f| format!("{f}")).unwrap_or_else(|| "given".into())
}

fn context(method: Method, v: &Variant, k: usize, snr: Option<f64>) -> String {
    let mut s = format!(
        "{}, N={}, fd_td={}, K={k}",
        method.name(),
        v.n_relays,
        fd_label(v.fd_td)
    );
    if let Some(x) = snr {
        s.push_str(&format!(", snr_db={x}"));
    }
    s
}

fn analytic_curve(
    method: Method,
    v: &Variant,
    grid: &[f64],
    m: Modulation,
    source: Source,
) -> Result<SerCurve> {
    let base =
        Analyzer::auto(&v.network).map_err(|e| e.with_context(context(method, v, 1, None)))?;
    let csi = csi_mode_of(&v.network);
    let values: Vec<Result<Option<f64>>> = grid
        .par_iter()
        .map(|&db| {
            let a = base.at_snr_db(db)?;
            match method {
                Method::Analytic => a.average_ser(m, source).map(Some),
                Method::Asymptotic => {
                    let csi = csi.ok_or_else(|| {
                        Error::invalid("rho", "the high-SNR approximation needs rho = 1 on all links or rho < 1 on all links")
                    })?;
                    // the approximation is only meaningful once it drops below α/2
                    a.asymptotic_ser(m, source, csi).map(|x| (x < 0.5 * m.alpha).then_some(x))
                }
                Method::Montecarlo => unreachable!(),
            }
            .map_err(|e| e.with_context(context(method, v, 1, Some(db))))
        })
        .collect();
    let mut points = Vec::with_capacity(grid.len());
    for (&db, r) in grid.iter().zip(values) {
        if let Some(ser) = r? {
            points.push(SerPoint {
                snr_db: db,
                fd_td: v.fd_td,
                ser,
                half_width: None,
            });
        }
    }
    Ok(SerCurve {
        method,
        source,
        n_relays: v.n_relays,
        k: 1,
        fd_td: v.fd_td,
        seed: None,
        points,
    })
}

/// Evaluates every `(method, N, fd_td, K, source)` curve of the sweep.
///
/// Curves come out ordered by method, `N`, `fd_td`, `K` and source. The
/// closed forms cover `K = 1` only, so `K > 1` yields Monte-Carlo curves
/// alone. Monte-Carlo points with a zero estimate and high-SNR points that
/// do not lie below `α/2` are omitted.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<Vec<SerCurve>> {
    cfg.validate()?;
    let spec = &cfg.sweep;
    let grid = spec.snr_db.values();
    let m = spec.modulation.modulation()?;
    let sources = spec.source_list()?;
    let variants = cfg.variants()?;
    let mut methods = spec.methods.clone();
    methods.sort();
    methods.dedup();
    let mut ks = spec.k_values.clone();
    ks.sort();
    ks.dedup();

    let mut curves = Vec::new();
    for &method in &methods {
        for (vi, v) in variants.iter().enumerate() {
            for &k in &ks {
                match method {
                    Method::Montecarlo => {
                        let scheme = if k == 1 {
                            Scheme::Single
                        } else {
                            Scheme::Multiple(k)
                        };
                        let opts = SimulationOptions::new(spec.trials)
                            .scheme(scheme)
                            .policy(spec.policy);
                        // one stream per (variant, K) so curves are independent of each other
                        let stream = RngStream::new(spec.seed, (vi * 64 + k) as u64);
                        let est = simulate_ser_grid(&v.network, m, &opts, stream, &grid)
                            .map_err(|e| e.with_context(context(method, v, k, None)))?;
                        for &s in &sources {
                            let points = grid
                                .iter()
                                .zip(&est)
                                .filter(|(_, e)| e[s.index()].value > 0.0)
                                .map(|(&db, e)| SerPoint {
                                    snr_db: db,
                                    fd_td: v.fd_td,
                                    ser: e[s.index()].value,
                                    half_width: Some(e[s.index()].half_width),
                                })
                                .collect();
                            curves.push(SerCurve {
                                method,
                                source: s,
                                n_relays: v.n_relays,
                                k,
                                fd_td: v.fd_td,
                                seed: Some(spec.seed),
                                points,
                            });
                        }
                    }
                    Method::Analytic | Method::Asymptotic => {
                        if k != 1 {
                            continue;
                        }
                        for &s in &sources {
                            curves.push(analytic_curve(method, v, &grid, m, s)?);
                        }
                    }
                }
            }
        }
    }
    Ok(curves)
}

/// Largest `|montecarlo − analytic| / half_width` of one curve pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyEntry {
    pub n: usize,
    pub fd_td: Option<f64>,
    pub k: usize,
    pub source: u8,
    pub worst: f64,
    pub points_compared: usize,
}

/// Compares each Monte-Carlo curve against the analytic curve of the same
/// network, over points where the simulated SER is at least
/// [`CONSISTENCY_FLOOR`].
pub fn consistency_report(curves: &[SerCurve]) -> Vec<ConsistencyEntry> {
    let mut out = Vec::new();
    for mc in curves
        .iter()
        .filter(|c| c.method == Method::Montecarlo && c.k == 1)
    {
        let Some(an) = curves.iter().find(|c| {
            c.method == Method::Analytic
                && c.n_relays == mc.n_relays
                && c.fd_td == mc.fd_td
                && c.source == mc.source
        }) else {
            continue;
        };
        let mut worst: f64 = 0.0;
        let mut count = 0;
        for p in &mc.points {
            let (Some(hw), Some(q)) = (
                p.half_width,
                an.points.iter().find(|q| q.snr_db == p.snr_db),
            ) else {
                continue;
            };
            if p.ser < CONSISTENCY_FLOOR || hw <= 0.0 {
                continue;
            }
            worst = worst.max((p.ser - q.ser).abs() / hw);
            count += 1;
        }
        out.push(ConsistencyEntry {
            n: mc.n_relays,
            fd_td: mc.fd_td,
            k: mc.k,
            source: mc.source.number(),
            worst,
            points_compared: count,
        });
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub version: String,
    pub config_sha256: String,
    pub seed: u64,
    pub trials: u64,
    pub files: Vec<String>,
    pub consistency: Vec<ConsistencyEntry>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub(crate) fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

pub(crate) fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.to_path_buf(),
        source: e,
    })
}

pub(crate) fn write_manifest(dir: &Path, manifest: &Manifest) -> Result<PathBuf> {
    let path = dir.join("manifest.json");
    let text = serde_json::to_string_pretty(manifest).map_err(|e| Error::Parse {
        path: path.clone(),
        message: e.to_string(),
    })?;
    write_file(&path, &(text + "\n"))?;
    Ok(path)
}

/// Outcome of [`run_to_dir`].
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub curves: Vec<SerCurve>,
    pub consistency: Vec<ConsistencyEntry>,
    pub csv: PathBuf,
    pub manifest: PathBuf,
}

/// Runs the sweep and writes `ser.csv` and `manifest.json` into `dir`.
///
/// `config_bytes` is hashed into the manifest. When the configuration sets
/// a consistency gate and a curve pair exceeds it, the outputs are still
/// written and [`Error::ConsistencyGate`] is returned.
pub fn run_to_dir(cfg: &ExperimentConfig, config_bytes: &[u8], dir: &Path) -> Result<RunSummary> {
    let curves = run_sweep(cfg)?;
    let consistency = consistency_report(&curves);
    create_dir(dir)?;
    let csv = dir.join("ser.csv");
    emit_csv(&curves, &csv)?;
    let manifest = Manifest {
        version: version_string(),
        config_sha256: sha256_hex(config_bytes),
        seed: cfg.sweep.seed,
        trials: cfg.sweep.trials,
        files: vec!["ser.csv".into()],
        consistency: consistency.clone(),
    };
    let manifest_path = write_manifest(dir, &manifest)?;
    if let Some(gate) = cfg.output.consistency_gate {
        if let Some(bad) = consistency
            .iter()
            .filter(|c| c.worst > gate)
            .max_by(|a, b| a.worst.total_cmp(&b.worst))
        {
            return Err(Error::ConsistencyGate {
                worst: bad.worst,
                gate,
                curve: format!(
                    "N={}, fd_td={}, source S{}",
                    bad.n,
                    fd_label(bad.fd_td),
                    bad.source
                ),
            });
        }
    }
    Ok(RunSummary {
        curves,
        consistency,
        csv,
        manifest: manifest_path,
    })
}

/// Caps the global worker pool at `RELAYSEL_THREADS` when set.
pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("RELAYSEL_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Error::invalid(
            "RELAYSEL_THREADS",
            format!("expected a positive integer, got `{v}`"),
        )
    })?;
    // a pool that is already initialized keeps its size
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}
