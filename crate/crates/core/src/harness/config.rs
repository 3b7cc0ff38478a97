//! TOML experiment configuration.
//!
//! ```toml
//! [network]
//! n_relays = 4
//! sigma2 = 1.0          # scalar, or [[σ_11², …], [σ_21², …]]
//! fd_td = 0.1           # or `rho = …`; scalar or 2×N matrix
//!
//! [sweep]
//! snr_db = { start = 0.0, stop = 30.0, step = 2.5 }
//! n_values = [1, 2, 4]
//! fd_td_values = [0.0, 0.1]
//! k_values = [1]
//! methods = ["montecarlo", "analytic", "asymptotic"]
//! trials = 1_000_000
//! seed = 7
//!
//! [output]
//! dir = "out"
//! consistency_gate = 3.0
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Modulation, NetworkConfig, SnrPolicy, Source};

pub const DEFAULT_TRIALS: u64 = 10_000_000;
pub const DEFAULT_SEED: u64 = 20_130_101;

/// A per-link quantity given once for every link or as a `2 × N` matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LinkValues {
    Scalar(f64),
    Matrix(Vec<Vec<f64>>),
}

impl LinkValues {
    fn rows(&self, name: &str, n: usize) -> Result<[Vec<f64>; 2]> {
        match self {
            LinkValues::Scalar(v) => Ok([vec![*v; n], vec![*v; n]]),
            LinkValues::Matrix(m) => {
                if m.len() != 2 || m.iter().any(|r| r.len() != n) {
                    return Err(Error::invalid(
                        name,
                        format!("expected a 2 x {n} matrix (one row per source)"),
                    ));
                }
                Ok([m[0].clone(), m[1].clone()])
            }
        }
    }

    fn is_scalar(&self) -> bool {
        matches!(self, LinkValues::Scalar(_))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSection {
    #[serde(default = "one")]
    pub n_relays: usize,
    #[serde(default = "unit_variance")]
    pub sigma2: LinkValues,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<LinkValues>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fd_td: Option<LinkValues>,
}

fn one() -> usize {
    1
}

fn unit_variance() -> LinkValues {
    LinkValues::Scalar(1.0)
}

impl Default for NetworkSection {
    fn default() -> Self {
        NetworkSection {
            n_relays: 1,
            sigma2: unit_variance(),
            rho: None,
            fd_td: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SnrGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SnrGrid {
    /// `start, start+step, …` up to `stop` inclusive (with a small slack for
    /// rounding).
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| self.start + i as f64 * self.step).collect()
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::invalid(
                "sweep.snr_db.step",
                format!("must be positive, got {}", self.step),
            ));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.stop >= self.start) {
            return Err(Error::invalid("sweep.snr_db", "need finite start <= stop"));
        }
        Ok(())
    }
}

impl Default for SnrGrid {
    fn default() -> Self {
        SnrGrid {
            start: 0.0,
            stop: 30.0,
            step: 5.0,
        }
    }
}

/// Evaluation route of a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Montecarlo,
    Analytic,
    Asymptotic,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Montecarlo => "montecarlo",
            Method::Analytic => "analytic",
            Method::Asymptotic => "asymptotic",
        }
    }

    /// Accepts full names and the initials `m`, `a`, `s`.
    pub fn parse(s: &str) -> Result<Method> {
        match s.trim().to_ascii_lowercase().as_str() {
            "montecarlo" | "mc" | "m" => Ok(Method::Montecarlo),
            "analytic" | "a" => Ok(Method::Analytic),
            "asymptotic" | "s" => Ok(Method::Asymptotic),
            other => Err(Error::invalid(
                "methods",
                format!("unknown method `{other}`"),
            )),
        }
    }
}

/// `"bpsk"` or explicit `{ alpha, beta }`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModulationSpec {
    Preset(ModulationPreset),
    Custom { alpha: f64, beta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModulationPreset {
    Bpsk,
}

impl ModulationSpec {
    pub fn modulation(&self) -> Result<Modulation> {
        match *self {
            ModulationSpec::Preset(ModulationPreset::Bpsk) => Ok(Modulation::BPSK),
            ModulationSpec::Custom { alpha, beta } => Modulation::new(alpha, beta),
        }
    }
}

impl Default for ModulationSpec {
    fn default() -> Self {
        ModulationSpec::Preset(ModulationPreset::Bpsk)
    }
}

/// Parameter sweep: every combination of `n_values × fd_td_values ×
/// k_values` is evaluated over the SNR grid with every method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub snr_db: SnrGrid,
    /// Overrides the network's correlations; empty keeps them.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fd_td_values: Vec<f64>,
    /// Overrides the network's relay count; empty keeps it.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub n_values: Vec<usize>,
    #[serde(default = "default_k")]
    pub k_values: Vec<usize>,
    #[serde(default)]
    pub modulation: ModulationSpec,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// One-based source numbers.
    #[serde(default = "default_sources")]
    pub sources: Vec<u8>,
    /// SNR expression used by the simulation.
    #[serde(default)]
    pub policy: SnrPolicy,
}

fn default_k() -> Vec<usize> {
    vec![1]
}

fn default_methods() -> Vec<Method> {
    vec![Method::Montecarlo, Method::Analytic, Method::Asymptotic]
}

fn default_trials() -> u64 {
    DEFAULT_TRIALS
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_sources() -> Vec<u8> {
    vec![1]
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            snr_db: SnrGrid::default(),
            fd_td_values: Vec::new(),
            n_values: Vec::new(),
            k_values: default_k(),
            modulation: ModulationSpec::default(),
            methods: default_methods(),
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            sources: default_sources(),
            policy: SnrPolicy::Exact,
        }
    }
}

impl SweepSpec {
    pub fn source_list(&self) -> Result<Vec<Source>> {
        self.sources
            .iter()
            .map(|&s| {
                Source::from_number(s)
                    .ok_or_else(|| Error::invalid("sweep.sources", format!("unknown source {s}")))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    /// Largest accepted `|montecarlo − analytic| / half_width`; unset means
    /// the comparison is only reported.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consistency_gate: Option<f64>,
}

/// Whole configuration file.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub network: NetworkSection,
    #[serde(default)]
    pub sweep: SweepSpec,
    #[serde(default)]
    pub output: OutputSection,
}

/// One network instance of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Variant {
    pub n_relays: usize,
    /// `None` when correlations were given directly.
    pub fd_td: Option<f64>,
    pub network: NetworkConfig,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str, origin: &Path) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Parse {
            path: origin.to_path_buf(),
            message: e.message().to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse {
            path: PathBuf::from("<serialize>"),
            message: e.to_string(),
        })
    }

    /// Enforces every invariant, including those of each network variant.
    pub fn validate(&self) -> Result<()> {
        let s = &self.sweep;
        s.snr_db.validate()?;
        if s.methods.is_empty() {
            return Err(Error::invalid(
                "sweep.methods",
                "at least one method is required",
            ));
        }
        if s.k_values.is_empty() {
            return Err(Error::invalid(
                "sweep.k_values",
                "at least one value is required",
            ));
        }
        if s.trials == 0 {
            return Err(Error::invalid("sweep.trials", "must be at least 1"));
        }
        if s.sources.is_empty() {
            return Err(Error::invalid(
                "sweep.sources",
                "at least one source is required",
            ));
        }
        s.source_list()?;
        s.modulation.modulation()?;
        if let Some(g) = self.output.consistency_gate {
            if !(g > 0.0) {
                return Err(Error::invalid(
                    "output.consistency_gate",
                    format!("must be positive, got {g}"),
                ));
            }
        }
        if self.network.rho.is_some() && self.network.fd_td.is_some() {
            return Err(Error::invalid(
                "rho",
                "give either `rho` or `fd_td`, not both",
            ));
        }
        for v in self.variants()? {
            for &k in &s.k_values {
                if k == 0 || k > v.n_relays {
                    return Err(Error::invalid(
                        "sweep.k_values",
                        format!("k = {k} is outside [1, {}]", v.n_relays),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The network instances of the sweep in `(N, fd_td)` order.
    pub fn variants(&self) -> Result<Vec<Variant>> {
        let net = &self.network;
        let s = &self.sweep;
        let n_values = if s.n_values.is_empty() {
            vec![net.n_relays]
        } else {
            s.n_values.clone()
        };
        let matrices = !net.sigma2.is_scalar()
            || net.rho.as_ref().is_some_and(|r| !r.is_scalar())
            || net.fd_td.as_ref().is_some_and(|r| !r.is_scalar());
        if matrices && n_values.iter().any(|&n| n != net.n_relays) {
            return Err(Error::invalid(
                "sweep.n_values",
                "per-link matrices fix the relay count; n_values must be empty or equal n_relays",
            ));
        }
        let mut out = Vec::new();
        for &n in &n_values {
            if n == 0 {
                return Err(Error::invalid("n_relays", "at least one relay is required"));
            }
            let sigma2 = net.sigma2.rows("sigma2", n)?;
            if s.fd_td_values.is_empty() {
                let (network, fd) = match (&net.rho, &net.fd_td) {
                    (Some(r), _) => (
                        NetworkConfig::new(sigma2, r.rows("rho", n)?, 1.0, 1.0)?,
                        None,
                    ),
                    (None, Some(f)) => {
                        let rows = f.rows("fd_td", n)?;
                        let fd = match f {
                            LinkValues::Scalar(v) => Some(*v),
                            LinkValues::Matrix(_) => None,
                        };
                        (NetworkConfig::from_fd_td(sigma2, rows, 1.0, 1.0)?, fd)
                    }
                    (None, None) => (
                        NetworkConfig::new(sigma2, [vec![1.0; n], vec![1.0; n]], 1.0, 1.0)?,
                        Some(0.0),
                    ),
                };
                out.push(Variant {
                    n_relays: n,
                    fd_td: fd,
                    network,
                });
            } else {
                for &fd in &s.fd_td_values {
                    let network = NetworkConfig::from_fd_td(
                        sigma2.clone(),
                        [vec![fd; n], vec![fd; n]],
                        1.0,
                        1.0,
                    )?;
                    out.push(Variant {
                        n_relays: n,
                        fd_td: Some(fd),
                        network,
                    });
                }
            }
        }
        Ok(out)
    }
}

/// Reads and validates a configuration file.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Err(Error::ConfigNotFound {
                path: path.to_path_buf(),
            })
        }
        Err(e) => {
            return Err(Error::Io {
                path: path.to_path_buf(),
                source: e,
            })
        }
    };
    ExperimentConfig::from_toml_str(&text, path)
}
