//! Run the sweep in `examples/sweep.toml` and write CSV plus manifest.
//!
//! `cargo run --example sweep_from_config -- [config] [out_dir]`

use std::path::PathBuf;

use relaysel::harness::{load_config, run_to_dir};

fn main() -> relaysel::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/sweep.toml"));
    let out = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("relaysel-sweep"));
    let cfg = load_config(&config)?;
    let bytes = std::fs::read(&config).map_err(|e| relaysel::Error::Io {
        path: config.clone(),
        source: e,
    })?;
    let run = run_to_dir(&cfg, &bytes, &out)?;
    println!("{} curves -> {}", run.curves.len(), run.csv.display());
    for c in &run.consistency {
        println!("{c:?}");
    }
    Ok(())
}
