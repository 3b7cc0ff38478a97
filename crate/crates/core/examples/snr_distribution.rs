//! Density and CDF of the selected relay's gain and of the end-to-end SNR,
//! with an empirical CDF from simulation.

use relaysel::analytic::Analyzer;
use relaysel::montecarlo::{empirical_cdf, sample_selected_snr, RngStream};
use relaysel::{NetworkConfig, SnrPolicy, Source};

fn main() -> relaysel::Result<()> {
    let cfg = NetworkConfig::symmetric(3, 1.0, 0.8, 10.0, 10.0)?;
    let a = Analyzer::new(&cfg)?;
    let mut x = sample_selected_snr(
        &cfg,
        1,
        SnrPolicy::UpperBound,
        Source::S1,
        100_000,
        RngStream::new(5, 0),
    )?;
    x.sort_by(f64::total_cmp);
    println!(
        "{:>5} {:>10} {:>10} {:>10}",
        "z", "pdf gain", "cdf SNR", "empirical"
    );
    for z in [0.5, 1.0, 2.0, 4.0, 8.0] {
        println!(
            "{z:>5} {:>10.5} {:>10.5} {:>10.5}",
            a.pdf_selected_gain(z / 10.0, Source::S1)?,
            a.cdf_e2e_snr(z, Source::S1)?,
            empirical_cdf(&x, z)?
        );
    }
    Ok(())
}
