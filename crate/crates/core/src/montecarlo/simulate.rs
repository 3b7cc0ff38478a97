use rand::RngExt;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::sampling::{fill_realization, RngStream};
use crate::analytic::gaussian_q;
use crate::error::{Error, Result};
use crate::model::{
    combined_snr, db_to_linear, select_multiple, select_single, ChannelRealization, Modulation,
    NetworkConfig, SnrPolicy, Source,
};

/// Trials per substream.
pub const DEFAULT_CHUNK_SIZE: u64 = 65_536;

/// Single relay selection or the best `K` relays combined by MRC.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Single,
    Multiple(usize),
}

impl Scheme {
    pub fn k(self) -> usize {
        match self {
            Scheme::Single => 1,
            Scheme::Multiple(k) => k,
        }
    }
}

/// How the SER of a trial is scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Estimator {
    /// Average `α Q(√(βγ))` over trials.
    #[default]
    QAverage,
    /// Send one antipodal symbol through AWGN at SNR `γ` and count errors.
    /// Only defined for `α = 1`.
    SymbolDetection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationOptions {
    pub scheme: Scheme,
    pub estimator: Estimator,
    pub policy: SnrPolicy,
    pub trials: u64,
    pub chunk_size: u64,
}

impl SimulationOptions {
    pub fn new(trials: u64) -> Self {
        SimulationOptions {
            scheme: Scheme::Single,
            estimator: Estimator::QAverage,
            policy: SnrPolicy::Exact,
            trials,
            chunk_size: DEFAULT_CHUNK_SIZE,
        }
    }

    pub fn scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn estimator(mut self, estimator: Estimator) -> Self {
        self.estimator = estimator;
        self
    }

    pub fn policy(mut self, policy: SnrPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn chunk_size(mut self, chunk_size: u64) -> Self {
        self.chunk_size = chunk_size;
        self
    }
}

/// Simulated SER with a 95% normal-approximation confidence half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SerEstimate {
    pub value: f64,
    pub half_width: f64,
    pub trials: u64,
    /// Error count under [`Estimator::SymbolDetection`].
    pub errors_observed: Option<u64>,
    /// False when symbol detection saw fewer than 20 errors.
    pub reliable: bool,
}

impl SerEstimate {
    /// Relative half-width, infinite for a zero estimate.
    pub fn relative_half_width(&self) -> f64 {
        if self.value > 0.0 {
            self.half_width / self.value
        } else {
            f64::INFINITY
        }
    }
}

const Z95: f64 = 1.96;
const MIN_ERRORS: u64 = 20;

/// Per-chunk sums for one (grid point, source) cell.
#[derive(Debug, Clone, Copy, Default)]
struct Acc {
    sum: f64,
    sum_sq: f64,
    errors: u64,
}

fn validate(cfg: &NetworkConfig, m: Modulation, opts: &SimulationOptions) -> Result<()> {
    if opts.trials == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    if opts.chunk_size == 0 {
        return Err(Error::invalid("chunk_size", "must be at least 1"));
    }
    let k = opts.scheme.k();
    if k == 0 || k > cfg.n_relays() {
        return Err(Error::invalid(
            "k",
            format!("must lie in [1, {}], got {k}", cfg.n_relays()),
        ));
    }
    if opts.estimator == Estimator::SymbolDetection && m.alpha != 1.0 {
        return Err(Error::invalid(
            "alpha",
            "symbol detection simulates a binary antipodal decision and needs alpha = 1",
        ));
    }
    Ok(())
}

fn select(r: &ChannelRealization, scheme: Scheme, out: &mut Vec<usize>) {
    out.clear();
    match scheme {
        // inputs are validated before the trial loop
        Scheme::Single | Scheme::Multiple(1) => out.push(select_single(&r.h_hat).unwrap_or(0)),
        Scheme::Multiple(k) => out.extend(select_multiple(&r.h_hat, k).unwrap_or_default()),
    }
}

/// Runs one chunk of trials over every config in `cfgs` (same links,
/// different powers) with common random numbers.
fn run_chunk(
    cfgs: &[NetworkConfig],
    m: Modulation,
    opts: &SimulationOptions,
    stream: RngStream,
    chunk: u64,
    trials: u64,
) -> Vec<[Acc; 2]> {
    let mut rng = stream.substream(chunk).rng();
    let base = &cfgs[0];
    let mut r = crate::montecarlo::sample_realization(base, &mut rng);
    let mut idx = Vec::with_capacity(opts.scheme.k());
    let mut acc = vec![[Acc::default(); 2]; cfgs.len()];
    for trial in 0..trials {
        if trial > 0 {
            fill_realization(base, &mut rng, &mut r);
        }
        select(&r, opts.scheme, &mut idx);
        let noise: [f64; 2] = match opts.estimator {
            Estimator::QAverage => [0.0; 2],
            Estimator::SymbolDetection => [rng.sample(StandardNormal), rng.sample(StandardNormal)],
        };
        for (cfg, cell) in cfgs.iter().zip(acc.iter_mut()) {
            for s in Source::BOTH {
                let gamma = combined_snr(&r, &idx, cfg, s, opts.policy);
                let a = &mut cell[s.index()];
                match opts.estimator {
                    Estimator::QAverage => {
                        let v = m.alpha * gaussian_q((m.beta * gamma).sqrt());
                        a.sum += v;
                        a.sum_sq += v * v;
                    }
                    Estimator::SymbolDetection => {
                        // +1 sent; decision statistic √(βγ) + n
                        if (m.beta * gamma).sqrt() + noise[s.index()] < 0.0 {
                            a.errors += 1;
                        }
                    }
                }
            }
        }
    }
    acc
}

fn finish(acc: &Acc, trials: u64, estimator: Estimator) -> SerEstimate {
    let n = trials as f64;
    match estimator {
        Estimator::QAverage => {
            let mean = acc.sum / n;
            let var = if trials > 1 {
                ((acc.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
            } else {
                0.0
            };
            SerEstimate {
                value: mean,
                half_width: Z95 * (var / n).sqrt(),
                trials,
                errors_observed: None,
                reliable: true,
            }
        }
        Estimator::SymbolDetection => {
            let p = acc.errors as f64 / n;
            SerEstimate {
                value: p,
                half_width: Z95 * (p * (1.0 - p) / n).sqrt(),
                trials,
                errors_observed: Some(acc.errors),
                reliable: acc.errors >= MIN_ERRORS,
            }
        }
    }
}

fn run(
    cfgs: &[NetworkConfig],
    m: Modulation,
    opts: &SimulationOptions,
    stream: RngStream,
) -> Vec<[SerEstimate; 2]> {
    let chunks = opts.trials.div_ceil(opts.chunk_size);
    let parts: Vec<Vec<[Acc; 2]>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = opts.chunk_size.min(opts.trials - c * opts.chunk_size);
            run_chunk(cfgs, m, opts, stream, c, len)
        })
        .collect();
    // merge in chunk order so the result does not depend on scheduling
    let mut total = vec![[Acc::default(); 2]; cfgs.len()];
    for part in &parts {
        for (t, p) in total.iter_mut().zip(part) {
            for s in 0..2 {
                t[s].sum += p[s].sum;
                t[s].sum_sq += p[s].sum_sq;
                t[s].errors += p[s].errors;
            }
        }
    }
    total
        .iter()
        .map(|t| {
            [
                finish(&t[0], opts.trials, opts.estimator),
                finish(&t[1], opts.trials, opts.estimator),
            ]
        })
        .collect()
}

/// Estimates the SER at both sources, indexed by [`Source::index`].
pub fn simulate_ser(
    cfg: &NetworkConfig,
    modulation: Modulation,
    opts: &SimulationOptions,
    stream: RngStream,
) -> Result<[SerEstimate; 2]> {
    validate(cfg, modulation, opts)?;
    Ok(run(std::slice::from_ref(cfg), modulation, opts, stream)[0])
}

/// Estimates the SER over a grid of `ψ_s = ψ_r` values in dB, reusing the
/// same channel draws at every grid point.
pub fn simulate_ser_grid(
    cfg: &NetworkConfig,
    modulation: Modulation,
    opts: &SimulationOptions,
    stream: RngStream,
    snr_db: &[f64],
) -> Result<Vec<[SerEstimate; 2]>> {
    validate(cfg, modulation, opts)?;
    if snr_db.is_empty() {
        return Ok(Vec::new());
    }
    let cfgs = snr_db
        .iter()
        .map(|&db| {
            let p = db_to_linear(db);
            cfg.with_powers(p, p)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(run(&cfgs, modulation, opts, stream))
}

fn collect_samples<F>(
    cfg: &NetworkConfig,
    k: usize,
    n: u64,
    stream: RngStream,
    f: F,
) -> Result<Vec<f64>>
where
    F: Fn(&ChannelRealization, &[usize]) -> f64 + Sync,
{
    if k == 0 || k > cfg.n_relays() {
        return Err(Error::invalid(
            "k",
            format!("must lie in [1, {}], got {k}", cfg.n_relays()),
        ));
    }
    let scheme = if k == 1 {
        Scheme::Single
    } else {
        Scheme::Multiple(k)
    };
    let chunks = n.div_ceil(DEFAULT_CHUNK_SIZE);
    let parts: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = DEFAULT_CHUNK_SIZE.min(n - c * DEFAULT_CHUNK_SIZE);
            let mut rng = stream.substream(c).rng();
            let mut r = crate::montecarlo::sample_realization(cfg, &mut rng);
            let mut idx = Vec::with_capacity(k);
            let mut out = Vec::with_capacity(len as usize);
            for t in 0..len {
                if t > 0 {
                    fill_realization(cfg, &mut rng, &mut r);
                }
                select(&r, scheme, &mut idx);
                out.push(f(&r, &idx));
            }
            out
        })
        .collect();
    Ok(parts.concat())
}

/// `n` draws of the SNR at `source` through the relay(s) chosen from
/// outdated estimates, under `policy`.
pub fn sample_selected_snr(
    cfg: &NetworkConfig,
    k: usize,
    policy: SnrPolicy,
    source: Source,
    n: u64,
    stream: RngStream,
) -> Result<Vec<f64>> {
    collect_samples(cfg, k, n, stream, |r, idx| {
        combined_snr(r, idx, cfg, source, policy)
    })
}

/// `n` draws of `Σ ψ_h min(|h_1i|², |h_2i|²)` over the chosen relays,
/// evaluated on the transmission-time channel.
pub fn sample_selected_min_bound(
    cfg: &NetworkConfig,
    k: usize,
    n: u64,
    stream: RngStream,
) -> Result<Vec<f64>> {
    let psi_h = cfg.psi_h();
    collect_samples(cfg, k, n, stream, |r, idx| {
        idx.iter()
            .map(|&i| psi_h * r.h[0][i].norm_sqr().min(r.h[1][i].norm_sqr()))
            .sum()
    })
}

/// Fraction of `sorted` that is `≤ z`.
pub fn empirical_cdf(sorted: &[f64], z: f64) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::invalid("samples", "at least one sample is required"));
    }
    Ok(sorted.partition_point(|&x| x <= z) as f64 / sorted.len() as f64)
}

/// Sample mean of `exp(s·x)` for `s ≤ 0`.
pub fn empirical_mgf(samples: &[f64], s: f64) -> Result<f64> {
    if !(s <= 0.0) {
        return Err(Error::domain(
            "empirical_mgf",
            format!("s must be nonpositive, got {s}"),
        ));
    }
    if samples.is_empty() {
        return Err(Error::invalid("samples", "at least one sample is required"));
    }
    Ok(samples.iter().map(|&x| (s * x).exp()).sum::<f64>() / samples.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_rejected() {
        let cfg = NetworkConfig::symmetric(2, 1.0, 1.0, 1.0, 1.0).unwrap();
        let e = simulate_ser(
            &cfg,
            Modulation::BPSK,
            &SimulationOptions::new(0),
            RngStream::new(1, 0),
        );
        assert!(e.is_err());
    }

    #[test]
    fn symbol_detection_requires_unit_alpha() {
        let cfg = NetworkConfig::symmetric(2, 1.0, 1.0, 1.0, 1.0).unwrap();
        let opts = SimulationOptions::new(10).estimator(Estimator::SymbolDetection);
        let m = Modulation::new(2.0, 1.0).unwrap();
        assert!(simulate_ser(&cfg, m, &opts, RngStream::new(1, 0)).is_err());
    }

    #[test]
    fn empirical_cdf_counts() {
        let s = [1.0, 2.0, 3.0];
        assert_eq!(empirical_cdf(&s, 0.5).unwrap(), 0.0);
        assert!((empirical_cdf(&s, 2.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(empirical_cdf(&s, 3.0).unwrap(), 1.0);
        assert!(empirical_cdf(&[], 1.0).is_err());
    }

    #[test]
    fn empirical_mgf_at_zero() {
        assert_eq!(empirical_mgf(&[0.3, 5.0], 0.0).unwrap(), 1.0);
        assert!(empirical_mgf(&[0.3], 0.1).is_err());
    }

    #[test]
    fn partial_last_chunk() {
        let cfg = NetworkConfig::symmetric(2, 1.0, 0.9, 10.0, 10.0).unwrap();
        let opts = SimulationOptions::new(1000).chunk_size(300);
        let e = simulate_ser(&cfg, Modulation::BPSK, &opts, RngStream::new(5, 0)).unwrap();
        assert_eq!(e[0].trials, 1000);
        assert!(e[0].value > 0.0 && e[0].value < 0.5);
    }
}
