use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use relaysel::harness::{self, FigureOptions, Method};
use relaysel::Error;

#[derive(Parser)]
#[command(
    name = "relaysel",
    version,
    about = "SER sweeps for AF relay selection with outdated CSI"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a TOML configuration file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; defaults to `[output] dir` or `out`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        /// Comma-separated subset of montecarlo (m), analytic (a), asymptotic (s).
        #[arg(long, value_delimiter = ',')]
        methods: Option<Vec<String>>,
    },
    /// Write the dataset of a standard figure (2 to 6).
    Figure {
        #[arg(long)]
        id: u8,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the built-in numerical checks.
    Selftest,
}

fn run(cli: Cli) -> Result<(), Error> {
    harness::configure_threads()?;
    match cli.command {
        Command::Sweep {
            config,
            out,
            seed,
            trials,
            methods,
        } => {
            let bytes = std::fs::read(&config).map_err(|e| match e.kind() {
                std::io::ErrorKind::NotFound => Error::ConfigNotFound {
                    path: config.clone(),
                },
                _ => Error::Io {
                    path: config.clone(),
                    source: e,
                },
            })?;
            let mut cfg = harness::load_config(&config)?;
            if let Some(s) = seed {
                cfg.sweep.seed = s;
            }
            if let Some(t) = trials {
                cfg.sweep.trials = t;
            }
            if let Some(ms) = methods {
                cfg.sweep.methods = ms
                    .iter()
                    .map(|m| Method::parse(m))
                    .collect::<Result<_, _>>()?;
            }
            cfg.validate()?;
            let dir = out
                .or_else(|| cfg.output.dir.clone())
                .unwrap_or_else(|| PathBuf::from("out"));
            let summary = harness::run_to_dir(&cfg, &bytes, &dir)?;
            for c in &summary.consistency {
                println!(
                    "consistency N={} fd_td={} S{}: max |mc - analytic|/half_width = {:.3} over {} points",
                    c.n,
                    c.fd_td.map(|f| f.to_string()).unwrap_or_else(|| "given".into()),
                    c.source,
                    c.worst,
                    c.points_compared
                );
            }
            println!(
                "wrote {} curves to {}",
                summary.curves.len(),
                summary.csv.display()
            );
        }
        Command::Figure {
            id,
            out,
            trials,
            seed,
        } => {
            let d = FigureOptions::default();
            let o = FigureOptions {
                trials: trials.unwrap_or(d.trials),
                seed: seed.unwrap_or(d.seed),
            };
            for f in harness::reproduce_figure(id, &out, o)? {
                println!("wrote {}", f.display());
            }
        }
        Command::Selftest => {
            let checks = harness::selftest();
            let mut ok = true;
            for c in &checks {
                println!(
                    "{} {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
                ok &= c.passed;
            }
            if !ok {
                return Err(Error::NonConvergence {
                    function: "selftest",
                    detail: "one or more checks failed".into(),
                });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
