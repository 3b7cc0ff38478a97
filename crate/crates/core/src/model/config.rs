use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of relays accepted by a [`NetworkConfig`].
pub const MAX_RELAYS: usize = 64;

/// One of the two sources exchanging data through the relays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Source {
    S1,
    S2,
}

impl Source {
    pub const BOTH: [Source; 2] = [Source::S1, Source::S2];

    /// Row index (0 for S1, 1 for S2).
    pub fn index(self) -> usize {
        match self {
            Source::S1 => 0,
            Source::S2 => 1,
        }
    }

    pub fn other(self) -> Source {
        match self {
            Source::S1 => Source::S2,
            Source::S2 => Source::S1,
        }
    }

    /// One-based number used in file formats.
    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Source> {
        match n {
            1 => Some(Source::S1),
            2 => Some(Source::S2),
            _ => None,
        }
    }
}

/// Outdated-CSI correlation `ρ = J₀(2π f_d T_d)` of the Jakes model.
pub fn jakes_correlation(fd_td: f64) -> Result<f64> {
    if !(fd_td >= 0.0) || !fd_td.is_finite() {
        return Err(Error::domain(
            "jakes_correlation",
            format!("fd_td must be a finite nonnegative number, got {fd_td}"),
        ));
    }
    Ok(libm::j0(2.0 * PI * fd_td))
}

/// Linear modulation described by `SER = α E[Q(√(βγ))]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Modulation {
    pub alpha: f64,
    pub beta: f64,
}

impl Modulation {
    pub const BPSK: Modulation = Modulation {
        alpha: 1.0,
        beta: 2.0,
    };

    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::invalid(
                "alpha",
                format!("must be positive, got {alpha}"),
            ));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::invalid(
                "beta",
                format!("must be positive, got {beta}"),
            ));
        }
        Ok(Modulation { alpha, beta })
    }
}

impl Default for Modulation {
    fn default() -> Self {
        Modulation::BPSK
    }
}

/// Link statistics and transmit SNRs of a network with `N` relays.
///
/// Row `j` of `sigma2` and `rho` describes the links between source `S_{j+1}`
/// and every relay. `psi_s = p_s/σ_n²` and `psi_r = p_r/σ_n²` are the source
/// and relay transmit SNRs.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    sigma2: [Vec<f64>; 2],
    rho: [Vec<f64>; 2],
    psi_s: f64,
    psi_r: f64,
}

impl NetworkConfig {
    pub fn new(sigma2: [Vec<f64>; 2], rho: [Vec<f64>; 2], psi_s: f64, psi_r: f64) -> Result<Self> {
        let n = sigma2[0].len();
        if n == 0 {
            return Err(Error::invalid("n_relays", "at least one relay is required"));
        }
        if n > MAX_RELAYS {
            return Err(Error::invalid(
                "n_relays",
                format!("at most {MAX_RELAYS} relays are supported, got {n}"),
            ));
        }
        if sigma2[1].len() != n {
            return Err(Error::invalid(
                "sigma2",
                "both rows must have one entry per relay",
            ));
        }
        if rho[0].len() != n || rho[1].len() != n {
            return Err(Error::invalid(
                "rho",
                "both rows must have one entry per relay",
            ));
        }
        for (j, row) in sigma2.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::invalid(
                        "sigma2",
                        format!(
                            "variance of link (S{}, R{}) must be positive, got {v}",
                            j + 1,
                            i + 1
                        ),
                    ));
                }
            }
        }
        for (j, row) in rho.iter().enumerate() {
            for (i, &r) in row.iter().enumerate() {
                if !(0.0..=1.0).contains(&r) {
                    return Err(Error::invalid(
                        "rho",
                        format!(
                            "correlation of link (S{}, R{}) must lie in [0, 1], got {r}",
                            j + 1,
                            i + 1
                        ),
                    ));
                }
            }
        }
        if !(psi_s > 0.0 && psi_s.is_finite()) {
            return Err(Error::invalid(
                "psi_s",
                format!("must be positive, got {psi_s}"),
            ));
        }
        if !(psi_r > 0.0 && psi_r.is_finite()) {
            return Err(Error::invalid(
                "psi_r",
                format!("must be positive, got {psi_r}"),
            ));
        }
        Ok(NetworkConfig {
            sigma2,
            rho,
            psi_s,
            psi_r,
        })
    }

    /// Every link has variance `sigma2` and correlation `rho`.
    pub fn symmetric(
        n_relays: usize,
        sigma2: f64,
        rho: f64,
        psi_s: f64,
        psi_r: f64,
    ) -> Result<Self> {
        Self::new(
            [vec![sigma2; n_relays], vec![sigma2; n_relays]],
            [vec![rho; n_relays], vec![rho; n_relays]],
            psi_s,
            psi_r,
        )
    }

    /// Builds the correlations from normalized Doppler products `f_d T_d`.
    ///
    /// Products large enough to make `J₀` negative are rejected.
    pub fn from_fd_td(
        sigma2: [Vec<f64>; 2],
        fd_td: [Vec<f64>; 2],
        psi_s: f64,
        psi_r: f64,
    ) -> Result<Self> {
        let mut rho = [Vec::new(), Vec::new()];
        for (row, out) in fd_td.iter().zip(rho.iter_mut()) {
            for &x in row {
                let r = jakes_correlation(x).map_err(|e| match e {
                    Error::Domain { reason, .. } => Error::invalid("fd_td", reason),
                    other => other,
                })?;
                if r < 0.0 {
                    return Err(Error::invalid(
                        "fd_td",
                        format!("fd_td = {x} gives a negative correlation J0 = {r:.4}"),
                    ));
                }
                out.push(r.min(1.0));
            }
        }
        Self::new(sigma2, rho, psi_s, psi_r)
    }

    /// Same links, new transmit SNRs.
    pub fn with_powers(&self, psi_s: f64, psi_r: f64) -> Result<Self> {
        Self::new(self.sigma2.clone(), self.rho.clone(), psi_s, psi_r)
    }

    /// Same links with `p_s = p_r = P₀` and `P₀/σ_n²` given in dB.
    pub fn with_snr_db(&self, snr_db: f64) -> Result<Self> {
        let p = db_to_linear(snr_db);
        self.with_powers(p, p)
    }

    pub fn n_relays(&self) -> usize {
        self.sigma2[0].len()
    }

    pub fn sigma2(&self, source: Source, relay: usize) -> f64 {
        self.sigma2[source.index()][relay]
    }

    pub fn sigma2_row(&self, source: Source) -> &[f64] {
        &self.sigma2[source.index()]
    }

    pub fn rho(&self, source: Source, relay: usize) -> f64 {
        self.rho[source.index()][relay]
    }

    pub fn rho_row(&self, source: Source) -> &[f64] {
        &self.rho[source.index()]
    }

    pub fn psi_s(&self) -> f64 {
        self.psi_s
    }

    pub fn psi_r(&self) -> f64 {
        self.psi_r
    }

    /// `ψ_h = ψ_s ψ_r / (ψ_s + ψ_r)`.
    pub fn psi_h(&self) -> f64 {
        self.psi_s * self.psi_r / (self.psi_s + self.psi_r)
    }

    /// Variance of the selection metric `min(|h_1i|², |h_2i|²)`:
    /// `σ_i² = σ_1i² σ_2i² / (σ_1i² + σ_2i²)`.
    pub fn min_variance(&self, relay: usize) -> f64 {
        1.0 / self.min_rate(relay)
    }

    /// `1/σ_1i² + 1/σ_2i²`, the rate of the exponential selection metric.
    pub fn min_rate(&self, relay: usize) -> f64 {
        1.0 / self.sigma2[0][relay] + 1.0 / self.sigma2[1][relay]
    }

    /// All link variances equal and all correlations equal.
    pub fn is_symmetric(&self) -> bool {
        let s = self.sigma2[0][0];
        let r = self.rho[0][0];
        self.sigma2.iter().flatten().all(|&v| v == s) && self.rho.iter().flatten().all(|&v| v == r)
    }

    pub fn all_perfect(&self) -> bool {
        self.rho.iter().flatten().all(|&r| r == 1.0)
    }

    pub fn all_outdated(&self) -> bool {
        self.rho.iter().flatten().all(|&r| r < 1.0)
    }
}

pub(crate) fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
