//! Simulated SER at both sources next to the closed form.

use relaysel::analytic::Analyzer;
use relaysel::montecarlo::{simulate_ser_grid, RngStream, SimulationOptions};
use relaysel::{Modulation, NetworkConfig, SnrPolicy, Source};

fn main() -> relaysel::Result<()> {
    let cfg = NetworkConfig::new(
        [vec![1.0, 0.5, 2.0], vec![0.7, 1.5, 1.0]],
        [vec![0.9; 3], vec![0.9; 3]],
        1.0,
        1.0,
    )?;
    let grid = [0.0, 5.0, 10.0, 15.0, 20.0];
    let opts = SimulationOptions::new(200_000).policy(SnrPolicy::UpperBound);
    let est = simulate_ser_grid(&cfg, Modulation::BPSK, &opts, RngStream::new(42, 0), &grid)?;
    let a = Analyzer::new(&cfg)?;
    for (db, e) in grid.iter().zip(&est) {
        let at = a.at_snr_db(*db)?;
        for s in Source::BOTH {
            let m = e[s.index()];
            println!(
                "{db:>4} dB {s:?}: simulated {:.4e} +/- {:.1e}, closed form {:.4e}",
                m.value,
                m.half_width,
                at.average_ser(Modulation::BPSK, s)?
            );
        }
    }
    Ok(())
}
