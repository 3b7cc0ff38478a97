use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::model::{ChannelRealization, NetworkConfig};

/// Seed plus stream identifier; equal pairs replay equal sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        RngStream { seed, stream_id }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }

    /// Independent stream for chunk `chunk` of this stream.
    pub fn substream(&self, chunk: u64) -> RngStream {
        RngStream {
            seed: self.seed ^ self.stream_id.wrapping_mul(0x9E37_79B9_7F4A_7C15),
            stream_id: chunk,
        }
    }
}

/// `CN(0, var)`.
#[inline]
fn complex_gaussian<R: RngExt + ?Sized>(rng: &mut R, var: f64) -> Complex64 {
    let s = (0.5 * var).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

/// Draws `h_ji ~ CN(0, σ_ji²)` and an independent `ε_ji` of the same law,
/// and sets `ĥ_ji = ρ_ji h_ji + √(1−ρ_ji²) ε_ji`.
///
/// Links are visited source-major (`S1` first), drawing `h` before `ε`.
pub fn sample_realization<R: RngExt + ?Sized>(
    cfg: &NetworkConfig,
    rng: &mut R,
) -> ChannelRealization {
    let n = cfg.n_relays();
    let mut r = ChannelRealization {
        h: [vec![Complex64::default(); n], vec![Complex64::default(); n]],
        h_hat: [vec![Complex64::default(); n], vec![Complex64::default(); n]],
    };
    fill_realization(cfg, rng, &mut r);
    r
}

/// In-place variant of [`sample_realization`]; `out` must already hold
/// `N` entries per row.
pub fn fill_realization<R: RngExt + ?Sized>(
    cfg: &NetworkConfig,
    rng: &mut R,
    out: &mut ChannelRealization,
) {
    for src in crate::model::Source::BOTH {
        let j = src.index();
        for i in 0..cfg.n_relays() {
            let var = cfg.sigma2(src, i);
            let rho = cfg.rho(src, i);
            let h = complex_gaussian(rng, var);
            let eps = complex_gaussian(rng, var);
            out.h[j][i] = h;
            out.h_hat[j][i] = if rho == 1.0 {
                h
            } else {
                h * rho + eps * (1.0 - rho * rho).sqrt()
            };
        }
    }
}
