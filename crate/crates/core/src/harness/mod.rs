//! Experiment harness: configuration files, parameter sweeps, figure
//! presets, CSV output and self-checks.

mod config;
mod curve;
mod figure;
mod selftest;
mod sweep;

pub use config::{
    load_config, ExperimentConfig, LinkValues, Method, ModulationPreset, ModulationSpec,
    NetworkSection, OutputSection, SnrGrid, SweepSpec, Variant, DEFAULT_SEED, DEFAULT_TRIALS,
};
pub use curve::{emit_csv, to_csv, SerCurve, SerPoint, CSV_HEADER};
pub use figure::{fig4_fd_grid, figure_config, reproduce_figure, FigureOptions, FIG4_SNR_DB};
pub use selftest::{selftest, SelftestCheck};
pub use sweep::{
    configure_threads, consistency_report, run_sweep, run_to_dir, sha256_hex, version_string,
    ConsistencyEntry, Manifest, RunSummary, CONSISTENCY_FLOOR,
};
