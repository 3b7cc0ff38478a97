//! Closed-form and high-SNR average SER of BPSK for one to four relays.

use relaysel::analytic::{csi_mode_of, Analyzer};
use relaysel::{jakes_correlation, Modulation, NetworkConfig, Source};

fn main() -> relaysel::Result<()> {
    let rho = jakes_correlation(0.1)?;
    println!(
        "{:>6} {:>3} {:>13} {:>13}",
        "snr_dB", "N", "SER", "asymptotic"
    );
    for n in [1, 2, 4] {
        let cfg = NetworkConfig::symmetric(n, 1.0, rho, 1.0, 1.0)?;
        let csi = csi_mode_of(&cfg).expect("uniform correlation");
        let a = Analyzer::auto(&cfg)?;
        for db in [10.0, 20.0, 30.0, 40.0] {
            let at = a.at_snr_db(db)?;
            let ser = at.average_ser(Modulation::BPSK, Source::S1)?;
            let asym = at.asymptotic_ser(Modulation::BPSK, Source::S1, csi)?;
            println!("{db:>6.0} {n:>3} {ser:>13.5e} {asym:>13.5e}");
        }
    }
    Ok(())
}
