//! Finite-SNR diversity order of analytic SER curves.

use relaysel::analytic::Analyzer;
use relaysel::montecarlo::estimate_diversity_from;
use relaysel::{jakes_correlation, Modulation, NetworkConfig, Source};

fn main() -> relaysel::Result<()> {
    let snr: Vec<f64> = (0..=40).map(f64::from).collect();
    for (n, fd_td) in [(2, 0.0), (4, 0.0), (2, 0.05), (4, 0.05)] {
        let cfg = NetworkConfig::symmetric(n, 1.0, jakes_correlation(fd_td)?, 1.0, 1.0)?;
        let a = Analyzer::auto(&cfg)?;
        let ser = snr
            .iter()
            .map(|&db| a.at_snr_db(db)?.average_ser(Modulation::BPSK, Source::S1))
            .collect::<relaysel::Result<Vec<_>>>()?;
        let d = estimate_diversity_from(&snr, &ser)?;
        println!(
            "N={n} fd_td={fd_td}: d(10 dB) = {:.2}, d(25 dB) = {:.2}, d(40 dB) = {:.2}",
            d.at(10.0).unwrap(),
            d.at(25.0).unwrap(),
            d.at(40.0).unwrap()
        );
    }
    Ok(())
}
