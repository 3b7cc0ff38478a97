use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::config::{NetworkConfig, Source};
use super::selection::ChannelRealization;

/// Which end-to-end SNR expression a transmission uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SnrPolicy {
    /// Post-cancellation SNR of a variable-gain AF relay.
    #[default]
    Exact,
    /// Harmonic-mean form obtained by dropping the `+1` in the denominator.
    UpperBound,
}

impl SnrPolicy {
    /// SNR at the source whose own link gain is `own` (`|h_ji|²`) when the
    /// other source's link gain is `other` (`|h_j̄i|²`).
    pub fn evaluate(self, own: f64, other: f64, psi_s: f64, psi_r: f64) -> f64 {
        match self {
            SnrPolicy::Exact => exact_snr_from_gains(own, other, psi_s, psi_r),
            SnrPolicy::UpperBound => upper_snr_from_gains(own, other, psi_s, psi_r),
        }
    }
}

/// `ψ_s ψ_r g_own g_other / ((ψ_s + ψ_r) g_own + ψ_s g_other + 1)`.
pub fn exact_snr_from_gains(own: f64, other: f64, psi_s: f64, psi_r: f64) -> f64 {
    psi_s * psi_r * own * other / ((psi_s + psi_r) * own + psi_s * other + 1.0)
}

/// `(ψ_r g_own)(ψ_h g_other) / (ψ_r g_own + ψ_h g_other)`, zero when both
/// gains vanish.
pub fn upper_snr_from_gains(own: f64, other: f64, psi_s: f64, psi_r: f64) -> f64 {
    let psi_h = psi_s * psi_r / (psi_s + psi_r);
    let x = psi_r * own;
    let y = psi_h * other;
    if x + y == 0.0 {
        return 0.0;
    }
    x * y / (x + y)
}

fn own_other(h1: Complex64, h2: Complex64, source: Source) -> (f64, f64) {
    match source {
        Source::S1 => (h1.norm_sqr(), h2.norm_sqr()),
        Source::S2 => (h2.norm_sqr(), h1.norm_sqr()),
    }
}

/// Instantaneous received SNR at `source` through one relay whose links to
/// S1 and S2 are `h1` and `h2`.
pub fn snr_exact(h1: Complex64, h2: Complex64, cfg: &NetworkConfig, source: Source) -> f64 {
    let (own, other) = own_other(h1, h2, source);
    exact_snr_from_gains(own, other, cfg.psi_s(), cfg.psi_r())
}

/// Upper bound of [`snr_exact`].
pub fn snr_upper(h1: Complex64, h2: Complex64, cfg: &NetworkConfig, source: Source) -> f64 {
    let (own, other) = own_other(h1, h2, source);
    upper_snr_from_gains(own, other, cfg.psi_s(), cfg.psi_r())
}

/// `ψ_h min(|h1|², |h2|²)`, which dominates the smaller of the two
/// upper-bound SNRs through the same relay.
pub fn min_snr_bound(h1: Complex64, h2: Complex64, cfg: &NetworkConfig) -> f64 {
    cfg.psi_h() * h1.norm_sqr().min(h2.norm_sqr())
}

/// MRC output SNR at `source` over the relays in `indices`.
///
/// With `K = indices.len()` relays the relay power is split evenly, so each
/// path is evaluated at `ψ_r / K`.
pub fn combined_snr(
    realization: &ChannelRealization,
    indices: &[usize],
    cfg: &NetworkConfig,
    source: Source,
    policy: SnrPolicy,
) -> f64 {
    let psi_r = cfg.psi_r() / indices.len() as f64;
    let (own, other) = (
        &realization.h[source.index()],
        &realization.h[source.other().index()],
    );
    indices
        .iter()
        .map(|&i| policy.evaluate(own[i].norm_sqr(), other[i].norm_sqr(), cfg.psi_s(), psi_r))
        .sum()
}
