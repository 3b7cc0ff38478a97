//! Closed-form engine: special functions, the selected-gain distribution,
//! the end-to-end SNR CDF, exact and asymptotic average SER, and the MGF
//! under multiple relay selection.
//!
//! Closed-form SNR expressions refer to the upper-bound SNR
//! ([`SnrPolicy::UpperBound`](crate::model::SnrPolicy)).

mod distribution;
mod mgf;
mod ser;
mod special;
mod terms;

use std::sync::Arc;

pub use mgf::{exact_single_relay_mgf, mgf_multi_rs};
pub use ser::CsiMode;
pub use special::{bessel_k1, bessel_k1_scaled, gauss_2f1, gaussian_q};
pub use terms::{
    subset_identity_residuals, SubsetIdentityResiduals, SubsetTerm, TermSet, XiZeta, XiZetaForm,
    MAX_ANALYTIC_RELAYS,
};

use crate::error::{Error, Result};
use crate::model::{Modulation, NetworkConfig, Source};

/// Which enumeration of the subset sums to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermPath {
    /// Every `(i, A_t)` explicitly.
    General,
    /// Binomial weights; symmetric networks only.
    Symmetric,
}

/// Closed-form evaluator for one network.
///
/// The term sets depend only on the link statistics, so [`Analyzer::at_powers`]
/// and [`Analyzer::at_snr_db`] reuse them across an SNR grid.
#[derive(Debug, Clone)]
pub struct Analyzer {
    cfg: NetworkConfig,
    terms: Arc<[TermSet; 2]>,
    path: TermPath,
}

impl Analyzer {
    /// General enumeration, `O(N·2^N)` terms per source.
    pub fn new(cfg: &NetworkConfig) -> Result<Self> {
        Self::build(cfg, TermPath::General, XiZetaForm::General)
    }

    /// Binomially weighted path; rejects asymmetric networks.
    pub fn symmetric(cfg: &NetworkConfig) -> Result<Self> {
        Self::build(cfg, TermPath::Symmetric, XiZetaForm::General)
    }

    /// Symmetric path when the network allows it, general otherwise.
    pub fn auto(cfg: &NetworkConfig) -> Result<Self> {
        if cfg.is_symmetric() {
            Self::symmetric(cfg)
        } else {
            Self::new(cfg)
        }
    }

    pub fn build(cfg: &NetworkConfig, path: TermPath, form: XiZetaForm) -> Result<Self> {
        let make = |s| match path {
            TermPath::General => TermSet::general(cfg, s, form),
            TermPath::Symmetric => TermSet::symmetric(cfg, s, form),
        };
        Ok(Analyzer {
            cfg: cfg.clone(),
            terms: Arc::new([make(Source::S1)?, make(Source::S2)?]),
            path,
        })
    }

    /// Same links, new transmit SNRs.
    pub fn at_powers(&self, psi_s: f64, psi_r: f64) -> Result<Self> {
        Ok(Analyzer {
            cfg: self.cfg.with_powers(psi_s, psi_r)?,
            terms: Arc::clone(&self.terms),
            path: self.path,
        })
    }

    /// Same links with `ψ_s = ψ_r` given in dB.
    pub fn at_snr_db(&self, snr_db: f64) -> Result<Self> {
        let p = crate::model::db_to_linear(snr_db);
        self.at_powers(p, p)
    }

    pub fn config(&self) -> &NetworkConfig {
        &self.cfg
    }

    pub fn path(&self) -> TermPath {
        self.path
    }

    pub fn terms(&self, source: Source) -> &TermSet {
        &self.terms[source.index()]
    }

    /// Density of `|h_jk|²`, the own-link gain of `source` through the
    /// relay chosen from outdated estimates.
    pub fn pdf_selected_gain(&self, z: f64, source: Source) -> Result<f64> {
        check_z("pdf_selected_gain", z)?;
        Ok(distribution::pdf(self.terms(source), z))
    }

    /// `P(|h_jk|² > z)`.
    pub fn ccdf_selected_gain(&self, z: f64, source: Source) -> Result<f64> {
        check_z("ccdf_selected_gain", z)?;
        Ok(distribution::ccdf(self.terms(source), z))
    }

    /// CDF of the end-to-end (upper-bound) SNR at `source`.
    ///
    /// The closed form treats the two hop gains of the selected relay as
    /// independent.
    pub fn cdf_e2e_snr(&self, z: f64, source: Source) -> Result<f64> {
        check_z("cdf_e2e_snr", z)?;
        Ok(distribution::cdf_e2e(
            self.terms(source),
            self.terms(source.other()),
            z,
            self.cfg.psi_r(),
            self.cfg.psi_h(),
        ))
    }

    /// Closed-form average SER at `source`.
    pub fn average_ser(&self, modulation: Modulation, source: Source) -> Result<f64> {
        ser::average_ser(
            self.terms(source),
            self.terms(source.other()),
            self.cfg.psi_r(),
            self.cfg.psi_h(),
            modulation,
        )
    }

    /// High-SNR approximation of [`Analyzer::average_ser`].
    pub fn asymptotic_ser(
        &self,
        modulation: Modulation,
        source: Source,
        csi: CsiMode,
    ) -> Result<f64> {
        match csi {
            CsiMode::Perfect => {
                if !self.cfg.all_perfect() {
                    return Err(Error::invalid(
                        "rho",
                        "csi = perfect requires rho = 1 on every link",
                    ));
                }
                ser::asymptotic_perfect(
                    self.terms(source),
                    self.cfg.n_relays(),
                    self.cfg.psi_r(),
                    self.cfg.psi_h(),
                    modulation,
                )
            }
            CsiMode::Outdated => {
                if !self.cfg.all_outdated() {
                    return Err(Error::invalid(
                        "rho",
                        "csi = outdated requires rho < 1 on every link",
                    ));
                }
                ser::asymptotic_outdated(
                    self.terms(source),
                    self.terms(source.other()),
                    self.cfg.psi_r(),
                    self.cfg.psi_h(),
                    modulation,
                )
            }
        }
    }
}

fn check_z(function: &'static str, z: f64) -> Result<()> {
    if z >= 0.0 && !z.is_nan() {
        Ok(())
    } else {
        Err(Error::domain(
            function,
            format!("z must be nonnegative, got {z}"),
        ))
    }
}

/// The CSI mode matching a configuration, if it is not mixed.
pub fn csi_mode_of(cfg: &NetworkConfig) -> Option<CsiMode> {
    if cfg.all_perfect() {
        Some(CsiMode::Perfect)
    } else if cfg.all_outdated() {
        Some(CsiMode::Outdated)
    } else {
        None
    }
}

/// Density of the selected relay's own-link gain. See [`Analyzer`].
pub fn pdf_selected_gain(z: f64, source: Source, cfg: &NetworkConfig) -> Result<f64> {
    Analyzer::auto(cfg)?.pdf_selected_gain(z, source)
}

/// CDF of the end-to-end SNR. See [`Analyzer::cdf_e2e_snr`].
pub fn cdf_e2e_snr(z: f64, source: Source, cfg: &NetworkConfig) -> Result<f64> {
    Analyzer::auto(cfg)?.cdf_e2e_snr(z, source)
}

/// Closed-form average SER. See [`Analyzer::average_ser`].
pub fn average_ser(cfg: &NetworkConfig, modulation: Modulation, source: Source) -> Result<f64> {
    Analyzer::auto(cfg)?.average_ser(modulation, source)
}

/// High-SNR SER. See [`Analyzer::asymptotic_ser`].
pub fn asymptotic_ser(
    cfg: &NetworkConfig,
    modulation: Modulation,
    source: Source,
    csi: CsiMode,
) -> Result<f64> {
    Analyzer::auto(cfg)?.asymptotic_ser(modulation, source, csi)
}

/// Evaluator on the binomially weighted path; asymmetric networks are
/// rejected.
pub fn symmetric_simplify(cfg: &NetworkConfig) -> Result<Analyzer> {
    Analyzer::symmetric(cfg)
}
