//! Pick a relay from outdated estimates and compare the SNR it delivers with
//! the relay an oracle would have picked.

use num_complex::Complex64;
use relaysel::model::{select_and_combine, select_single, snr_exact, snr_upper};
use relaysel::montecarlo::{sample_realization, RngStream};
use relaysel::{jakes_correlation, NetworkConfig, SnrPolicy, Source};

fn main() -> relaysel::Result<()> {
    for fd_td in [0.0, 0.1, 0.2, 0.3] {
        println!(
            "fd_td = {fd_td:.1}  ->  rho = {:.4}",
            jakes_correlation(fd_td)?
        );
    }

    // one relay, unit gains, 10 dB at both sources and the relay
    let one = NetworkConfig::symmetric(1, 1.0, 1.0, 10.0, 10.0)?;
    let h = Complex64::new(1.0, 0.0);
    println!(
        "unit channel: exact SNR {:.4}, upper bound {:.4}",
        snr_exact(h, h, &one, Source::S1),
        snr_upper(h, h, &one, Source::S1)
    );

    let cfg = NetworkConfig::from_fd_td(
        [vec![1.0; 4], vec![1.0; 4]],
        [vec![0.2; 4], vec![0.2; 4]],
        100.0,
        100.0,
    )?;
    let mut rng = RngStream::new(7, 0).rng();
    for _ in 0..5 {
        let r = sample_realization(&cfg, &mut rng);
        let chosen = select_and_combine(&r, 1, &cfg, SnrPolicy::Exact)?;
        let oracle = select_single(&r.h)?;
        println!(
            "chose relay {} (oracle {oracle}), SNR at S1 {:.2}, at S2 {:.2}",
            chosen.indices[0],
            chosen.gamma(Source::S1),
            chosen.gamma(Source::S2)
        );
    }
    Ok(())
}
