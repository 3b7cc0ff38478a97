//! Presets for the standard figure datasets.
//!
//! Every preset uses unit link variances, equal Doppler on every link,
//! BPSK and source S1.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{ExperimentConfig, Method, NetworkSection, SnrGrid, SweepSpec};
use super::curve::{emit_csv, SerCurve, SerPoint};
use super::sweep::{
    create_dir, run_sweep, sha256_hex, version_string, write_file, write_manifest, Manifest,
};
use crate::analytic::Analyzer;
use crate::error::{Error, Result};
use crate::model::{Modulation, NetworkConfig, SnrPolicy, Source};
use crate::montecarlo::{estimate_diversity, simulate_ser, RngStream, SimulationOptions};

/// Simulation budget of a figure run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureOptions {
    pub trials: u64,
    pub seed: u64,
}

impl Default for FigureOptions {
    fn default() -> Self {
        FigureOptions {
            trials: super::config::DEFAULT_TRIALS,
            seed: super::config::DEFAULT_SEED,
        }
    }
}

/// SNR used by the Doppler sweep preset.
pub const FIG4_SNR_DB: f64 = 15.0;

fn preset(
    n_values: Vec<usize>,
    fd: Vec<f64>,
    k: Vec<usize>,
    methods: Vec<Method>,
    grid: SnrGrid,
    o: FigureOptions,
) -> ExperimentConfig {
    ExperimentConfig {
        network: NetworkSection::default(),
        sweep: SweepSpec {
            snr_db: grid,
            fd_td_values: fd,
            n_values,
            k_values: k,
            methods,
            trials: o.trials,
            seed: o.seed,
            policy: SnrPolicy::Exact,
            ..SweepSpec::default()
        },
        output: Default::default(),
    }
}

/// Sweep configuration behind figures 2, 3, 5 and 6.
pub fn figure_config(fig_id: u8, o: FigureOptions) -> Result<ExperimentConfig> {
    let all = vec![Method::Montecarlo, Method::Analytic, Method::Asymptotic];
    let sim_grid = SnrGrid {
        start: 0.0,
        stop: 30.0,
        step: 2.5,
    };
    match fig_id {
        2 => Ok(preset(vec![1, 2, 4], vec![0.0], vec![1], all, sim_grid, o)),
        3 => Ok(preset(
            vec![4],
            vec![0.0, 0.1, 0.2, 0.3],
            vec![1],
            all,
            sim_grid,
            o,
        )),
        5 => Ok(preset(
            vec![2, 4],
            vec![0.0, 0.05, 0.1],
            vec![1],
            vec![Method::Analytic],
            SnrGrid {
                start: 0.0,
                stop: 40.0,
                step: 1.0,
            },
            o,
        )),
        6 => Ok(preset(
            vec![4],
            vec![0.1],
            vec![1, 2, 3, 4],
            vec![Method::Montecarlo],
            sim_grid,
            o,
        )),
        _ => Err(Error::invalid(
            "fig_id",
            format!("no preset for figure {fig_id}; expected 2..6"),
        )),
    }
}

/// `fd_td` axis of the Doppler sweep.
pub fn fig4_fd_grid() -> Vec<f64> {
    (0..=15).map(|i| i as f64 * 0.02).collect()
}

fn fig4_curves(o: FigureOptions) -> Result<Vec<SerCurve>> {
    let fds = fig4_fd_grid();
    let m = Modulation::BPSK;
    let p = 10f64.powf(FIG4_SNR_DB / 10.0);
    let mut mc = Vec::new();
    let mut an = Vec::new();
    for n in 1..=4usize {
        let nets = fds
            .iter()
            .map(|&fd| {
                NetworkConfig::from_fd_td(
                    [vec![1.0; n], vec![1.0; n]],
                    [vec![fd; n], vec![fd; n]],
                    p,
                    p,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let opts = SimulationOptions::new(o.trials);
        let mut mc_points = Vec::new();
        for (fi, (net, &fd)) in nets.iter().zip(&fds).enumerate() {
            let e = simulate_ser(
                net,
                m,
                &opts,
                RngStream::new(o.seed, (n * 1000 + fi) as u64),
            )?;
            mc_points.push(SerPoint {
                snr_db: FIG4_SNR_DB,
                fd_td: Some(fd),
                ser: e[0].value,
                half_width: Some(e[0].half_width),
            });
        }
        let an_points = nets
            .par_iter()
            .zip(&fds)
            .map(|(net, &fd)| {
                Ok(SerPoint {
                    snr_db: FIG4_SNR_DB,
                    fd_td: Some(fd),
                    ser: Analyzer::auto(net)?.average_ser(m, Source::S1)?,
                    half_width: None,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mk = |method, seed, points| SerCurve {
            method,
            source: Source::S1,
            n_relays: n,
            k: 1,
            fd_td: None,
            seed,
            points,
        };
        mc.push(mk(Method::Montecarlo, Some(o.seed), mc_points));
        an.push(mk(Method::Analytic, None, an_points));
    }
    mc.extend(an);
    Ok(mc)
}

fn diversity_csv(curves: &[SerCurve]) -> Result<String> {
    let mut out = String::from("snr_db,diversity,n,fd_td\n");
    for c in curves {
        let d = estimate_diversity(c)?;
        for (s, v) in d.snr_grid_db.iter().zip(&d.d_of_snr) {
            let fd = c.fd_td.map(|f| format!("{f:.11e}")).unwrap_or_default();
            let _ = writeln!(out, "{s:.11e},{v:.11e},{},{fd}", c.n_relays);
        }
    }
    Ok(out)
}

fn plot_script(fig_id: u8, csv: &str) -> String {
    let (x, ylabel, logy) = match fig_id {
        4 => ("fd_td", "SER", true),
        _ => ("snr_db", "SER", true),
    };
    let mut s = String::new();
    let _ = writeln!(s, "# Plot stub for figure {fig_id}; edit freely.");
    let _ = writeln!(s, "import csv");
    let _ = writeln!(s, "from collections import defaultdict");
    let _ = writeln!(s, "import matplotlib.pyplot as plt\n");
    let _ = writeln!(s, "series = defaultdict(list)");
    let _ = writeln!(s, "with open(\"{csv}\") as f:");
    let _ = writeln!(s, "    for row in csv.DictReader(f):");
    if fig_id == 5 {
        let _ = writeln!(s, "        series[(row['n'], row['fd_td'])].append((float(row['snr_db']), float(row['diversity'])))");
    } else {
        let _ = writeln!(
            s,
            "        key = (row['method'], row['n'], row['k'], row['fd_td'] if '{x}' == 'snr_db' else '')"
        );
        let _ = writeln!(
            s,
            "        series[key].append((float(row['{x}']), float(row['ser'])))"
        );
    }
    let _ = writeln!(s, "for key, pts in sorted(series.items()):");
    let _ = writeln!(s, "    xs, ys = zip(*sorted(pts))");
    let _ = writeln!(s, "    plt.plot(xs, ys, label=' '.join(key))");
    if logy && fig_id != 5 {
        let _ = writeln!(s, "plt.yscale('log')");
    }
    let ylabel = if fig_id == 5 {
        "diversity order"
    } else {
        ylabel
    };
    let _ = writeln!(
        s,
        "plt.xlabel('{x}')\nplt.ylabel('{ylabel}')\nplt.legend()\nplt.grid(True, which='both')"
    );
    let _ = writeln!(s, "plt.savefig('fig{fig_id}.png', dpi=150)");
    s
}

/// Writes the dataset, a plot stub and a manifest for figure `fig_id`
/// (2 to 6) into `dir`, returning the written paths.
pub fn reproduce_figure(fig_id: u8, dir: &Path, o: FigureOptions) -> Result<Vec<PathBuf>> {
    if !(2..=6).contains(&fig_id) {
        return Err(Error::invalid(
            "fig_id",
            format!("no preset for figure {fig_id}; expected 2..6"),
        ));
    }
    create_dir(dir)?;
    let mut files = Vec::new();
    let csv_name = format!("fig{fig_id}.csv");
    let (curves, config_text) = if fig_id == 4 {
        let text = format!(
            "figure 4: fd_td grid {:?}, snr_db {FIG4_SNR_DB}, N 1..4, trials {}, seed {}",
            fig4_fd_grid(),
            o.trials,
            o.seed
        );
        (fig4_curves(o)?, text)
    } else {
        let cfg = figure_config(fig_id, o)?;
        let text = cfg.to_toml_string()?;
        (run_sweep(&cfg)?, text)
    };
    let csv_path = dir.join(&csv_name);
    emit_csv(&curves, &csv_path)?;
    files.push(csv_path);
    let plot_source = if fig_id == 5 {
        let name = "fig5_diversity.csv".to_string();
        let path = dir.join(&name);
        write_file(&path, &diversity_csv(&curves)?)?;
        files.push(path);
        name
    } else {
        csv_name.clone()
    };
    let script = dir.join(format!("plot_fig{fig_id}.py"));
    write_file(&script, &plot_script(fig_id, &plot_source))?;
    files.push(script);
    let manifest = Manifest {
        version: version_string(),
        config_sha256: sha256_hex(config_text.as_bytes()),
        seed: o.seed,
        trials: o.trials,
        files: files
            .iter()
            .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
            .collect(),
        consistency: super::sweep::consistency_report(&curves),
    };
    files.push(write_manifest(dir, &manifest)?);
    Ok(files)
}
