use num_complex::Complex64;

use super::config::{NetworkConfig, Source};
use super::snr::{combined_snr, SnrPolicy};
use crate::error::{Error, Result};

/// Channel state of every link at transmission time (`h`) and at selection
/// time (`h_hat`). Row `j` holds the links of source `S_{j+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub h: [Vec<Complex64>; 2],
    pub h_hat: [Vec<Complex64>; 2],
}

impl ChannelRealization {
    pub fn n_relays(&self) -> usize {
        self.h[0].len()
    }

    /// Realization where the selection-time estimate equals the channel.
    pub fn perfect(h: [Vec<Complex64>; 2]) -> Self {
        ChannelRealization {
            h_hat: h.clone(),
            h,
        }
    }
}

/// Anything that can be read as a squared channel gain `|h|²`.
///
/// Plain `f64` entries are taken to already be squared gains.
pub trait SquaredGain {
    fn squared_gain(&self) -> f64;
}

impl SquaredGain for f64 {
    fn squared_gain(&self) -> f64 {
        *self
    }
}

impl SquaredGain for Complex64 {
    fn squared_gain(&self) -> f64 {
        self.norm_sqr()
    }
}

#[inline]
fn metric<T: SquaredGain>(gains: &[Vec<T>; 2], i: usize) -> f64 {
    gains[0][i].squared_gain().min(gains[1][i].squared_gain())
}

fn check_shape<T>(gains: &[Vec<T>; 2]) -> Result<usize> {
    let n = gains[0].len();
    if n == 0 {
        return Err(Error::invalid("h_hat", "no relays to select from"));
    }
    if gains[1].len() != n {
        return Err(Error::invalid("h_hat", "rows have different lengths"));
    }
    Ok(n)
}

/// Index of the relay maximizing `min(|ĥ_1i|², |ĥ_2i|²)`; the lowest index
/// wins ties.
pub fn select_single<T: SquaredGain>(h_hat: &[Vec<T>; 2]) -> Result<usize> {
    let n = check_shape(h_hat)?;
    let mut best = 0;
    let mut best_metric = metric(h_hat, 0);
    for i in 1..n {
        let m = metric(h_hat, i);
        if m > best_metric {
            best = i;
            best_metric = m;
        }
    }
    Ok(best)
}

/// The `k` relays with the largest selection metric, in ascending index
/// order. Rank ties go to the lower index, so exactly `k` relays are
/// returned.
pub fn select_multiple<T: SquaredGain>(h_hat: &[Vec<T>; 2], k: usize) -> Result<Vec<usize>> {
    let n = check_shape(h_hat)?;
    if k == 0 || k > n {
        return Err(Error::invalid(
            "k",
            format!("must lie in [1, {n}], got {k}"),
        ));
    }
    let mut order: Vec<usize> = (0..n).collect();
    rank_into(h_hat, &mut order);
    let mut chosen = order[..k].to_vec();
    chosen.sort_unstable();
    Ok(chosen)
}

/// Sorts relay indices by decreasing metric, ties by increasing index.
pub(crate) fn rank_into<T: SquaredGain>(h_hat: &[Vec<T>; 2], order: &mut [usize]) {
    order.sort_by(|&a, &b| {
        metric(h_hat, b)
            .partial_cmp(&metric(h_hat, a))
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
}

/// Chosen relays and the SNR each source obtains through them.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    pub indices: Vec<usize>,
    /// End-to-end (MRC-combined when `K > 1`) SNR at S1 and S2.
    pub gamma: [f64; 2],
}

impl SelectionResult {
    pub fn gamma(&self, source: Source) -> f64 {
        self.gamma[source.index()]
    }
}

/// Selects the best `k` relays from `h_hat` and evaluates both sources' SNRs
/// on the transmission-time channel `h`.
pub fn select_and_combine(
    realization: &ChannelRealization,
    k: usize,
    cfg: &NetworkConfig,
    policy: SnrPolicy,
) -> Result<SelectionResult> {
    if realization.n_relays() != cfg.n_relays() {
        return Err(Error::invalid(
            "realization",
            "relay count does not match the configuration",
        ));
    }
    let indices = if k == 1 {
        vec![select_single(&realization.h_hat)?]
    } else {
        select_multiple(&realization.h_hat, k)?
    };
    let gamma = Source::BOTH.map(|s| combined_snr(realization, &indices, cfg, s, policy));
    Ok(SelectionResult { indices, gamma })
}
