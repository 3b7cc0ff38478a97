//! Draw correlated channel pairs and check the sample correlation between the
//! estimate and the channel in force during transmission.

use relaysel::montecarlo::{sample_realization, RngStream};
use relaysel::NetworkConfig;

fn main() -> relaysel::Result<()> {
    let rho = 0.7;
    let cfg = NetworkConfig::symmetric(2, 2.0, rho, 1.0, 1.0)?;
    let mut rng = RngStream::new(1, 0).rng();
    let n = 200_000;
    let (mut cross, mut power) = (0.0, 0.0);
    for _ in 0..n {
        let r = sample_realization(&cfg, &mut rng);
        let (h, e) = (r.h[0][0], r.h_hat[0][0]);
        cross += (h * e.conj()).re;
        power += h.norm_sqr();
    }
    println!("mean |h|^2      = {:.4} (variance 2)", power / n as f64);
    println!(
        "E[Re(h conj h^)] = {:.4} (rho * variance = {:.4})",
        cross / n as f64,
        rho * 2.0
    );
    Ok(())
}
