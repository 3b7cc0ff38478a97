//! Selecting the best K of N relays with the transmit power split K ways,
//! and the power-law exponent of the combined SNR's MGF.

use relaysel::analytic::{exact_single_relay_mgf, mgf_multi_rs};
use relaysel::montecarlo::{simulate_ser_grid, RngStream, Scheme, SimulationOptions};
use relaysel::{jakes_correlation, Modulation, NetworkConfig};

fn main() -> relaysel::Result<()> {
    let rho = jakes_correlation(0.1)?;
    let cfg = NetworkConfig::symmetric(4, 1.0, rho, 1.0, 1.0)?;
    let grid = [0.0, 10.0, 20.0];
    for k in 1..=4 {
        let opts = SimulationOptions::new(200_000).scheme(Scheme::Multiple(k));
        let est = simulate_ser_grid(
            &cfg,
            Modulation::BPSK,
            &opts,
            RngStream::new(11, k as u64),
            &grid,
        )?;
        let line: Vec<String> = est.iter().map(|e| format!("{:.3e}", e[0].value)).collect();
        println!("K={k}: SER at 0/10/20 dB = {}", line.join(", "));
    }

    for k in [1, 2, 4] {
        let (a, b) = (-1e4f64, -1e6f64);
        let slope = (mgf_multi_rs(b, 4, k, rho, 1.0)?.ln() - mgf_multi_rs(a, 4, k, rho, 1.0)?.ln())
            / (b.abs().ln() - a.abs().ln());
        println!("N=4 K={k}: MGF decays as |s|^{slope:.3}");
    }
    let s = -1e3;
    println!(
        "N=K=1 at s={s}: expression {:.4e}, exponential MGF {:.4e}",
        mgf_multi_rs(s, 1, 1, rho, 1.0)?,
        exact_single_relay_mgf(s, 1.0)
    );
    Ok(())
}
