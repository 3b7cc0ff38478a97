//! Subset enumeration behind the selected-gain distribution.

use super::special::{dd, dd_div, dd_powi, dd_recip, Dd};
use crate::error::{Error, Result};
use crate::model::{NetworkConfig, Source};

/// Largest relay count the closed-form engine accepts.
pub const MAX_ANALYTIC_RELAYS: usize = 12;

/// Exponent `ξ` and weight `ζ` of the outdated-CSI correction in the
/// selected-gain density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiZeta {
    pub xi: f64,
    pub zeta: f64,
}

impl XiZeta {
    /// `rho` is the correlation of the own link, `sigma_own = σ_ji²`,
    /// `sigma_other = σ_j̄i²`, `rate_i = 1/σ_i²` and `rate_sum = Σ_{l∈A} 1/σ_l²`.
    pub fn general(rho: f64, sigma_own: f64, sigma_other: f64, rate_i: f64, rate_sum: f64) -> Self {
        let (xi, zeta) = xi_zeta_dd(
            dd(rho),
            dd(sigma_own),
            dd(sigma_other),
            dd(rate_i),
            dd(rate_sum),
        );
        XiZeta {
            xi: xi.hi(),
            zeta: zeta.hi(),
        }
    }

    /// Closed form at `ρ = 1`: `ξ = σ_ji²(1/σ_i² + S)`, `ζ = σ_j̄i² S`.
    pub fn perfect(sigma_own: f64, sigma_other: f64, rate_i: f64, rate_sum: f64) -> Self {
        let (xi, zeta) =
            xi_zeta_perfect_dd(dd(sigma_own), dd(sigma_other), dd(rate_i), dd(rate_sum));
        XiZeta {
            xi: xi.hi(),
            zeta: zeta.hi(),
        }
    }
}

fn xi_zeta_dd(rho: Dd, sigma_own: Dd, sigma_other: Dd, rate_i: Dd, rate_sum: Dd) -> (Dd, Dd) {
    let r2 = rho * rho;
    let den = dd_div(r2, sigma_own) + (1.0 - r2) * (rate_i + rate_sum);
    let xi = dd_div(rate_i + rate_sum, den);
    let zeta = dd_div(sigma_other * rate_sum, sigma_own * den);
    (xi, zeta)
}

fn xi_zeta_perfect_dd(sigma_own: Dd, sigma_other: Dd, rate_i: Dd, rate_sum: Dd) -> (Dd, Dd) {
    (sigma_own * (rate_i + rate_sum), sigma_other * rate_sum)
}

/// How `ξ` and `ζ` are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XiZetaForm {
    /// Valid for every `ρ ∈ [0, 1]`.
    General,
    /// Simplified expressions that hold only when `ρ = 1` on every link.
    PerfectCollapse,
}

/// One `(i, A_t)` summand of the selected-gain density of a source.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetTerm {
    /// Relay `i` (zero-based).
    pub relay: usize,
    /// The subset `A_t ⊆ {0..N}∖{i}`. Under the symmetric path this is a
    /// representative subset of size `t`.
    pub subset: Vec<usize>,
    /// Number of identical summands this entry stands for (1 unless symmetric).
    pub multiplicity: u64,
    /// `(−1)^t`.
    pub sign: i8,
    /// `S = Σ_{l∈A} 1/σ_l²`.
    pub rate_sum: f64,
    /// `c = (1 + σ_j̄i² S)⁻¹`.
    pub normalization: f64,
    pub xi_zeta: XiZeta,
    /// `σ_ji²`.
    pub sigma_own: f64,
    /// `σ_j̄i²`.
    pub sigma_other: f64,
}

impl SubsetTerm {
    pub fn size(&self) -> usize {
        self.subset.len()
    }
}

/// Term data kept in double-double for the alternating sums.
#[derive(Debug, Clone, Copy)]
pub(crate) struct DdTerm {
    /// sign · multiplicity · c
    pub weight: Dd,
    /// sign · multiplicity
    pub signed_count: Dd,
    /// S = Σ_{l∈A} 1/σ_l²
    pub rate_sum: Dd,
    pub xi: Dd,
    pub zeta: Dd,
    pub sigma_own: Dd,
    pub sigma_other: Dd,
}

/// All summands of the selected-gain density for one source.
#[derive(Debug, Clone)]
pub struct TermSet {
    source: Source,
    terms: Vec<SubsetTerm>,
    pub(crate) dd: Vec<DdTerm>,
    symmetric: bool,
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ANALYTIC_RELAYS {
        return Err(Error::invalid(
            "n_relays",
            format!(
                "the closed-form engine supports at most {MAX_ANALYTIC_RELAYS} relays, got {n}"
            ),
        ));
    }
    Ok(())
}

fn check_form(cfg: &NetworkConfig, form: XiZetaForm) -> Result<()> {
    if form == XiZetaForm::PerfectCollapse && !cfg.all_perfect() {
        return Err(Error::invalid(
            "rho",
            "the perfect-CSI collapse requires rho = 1 on every link",
        ));
    }
    Ok(())
}

impl TermSet {
    /// Enumerates every `(i, t, A_t)`: `N·2^{N−1}` terms.
    pub fn general(cfg: &NetworkConfig, source: Source, form: XiZetaForm) -> Result<Self> {
        let n = cfg.n_relays();
        check_size(n)?;
        check_form(cfg, form)?;
        let other = source.other();
        let rates: Vec<Dd> = (0..n).map(|l| dd(cfg.min_rate(l))).collect();
        let mut terms = Vec::with_capacity(n << (n - 1));
        let mut dds = Vec::with_capacity(n << (n - 1));
        for i in 0..n {
            let others: Vec<usize> = (0..n).filter(|&l| l != i).collect();
            // subsets ordered by size, then lexicographically by bitmask
            let mut masks: Vec<u32> = (0..1u32 << others.len()).collect();
            masks.sort_by_key(|m| (m.count_ones(), *m));
            for mask in masks {
                let subset: Vec<usize> = others
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &l)| l)
                    .collect();
                let s = subset.iter().fold(dd(0.0), |acc, &l| acc + rates[l]);
                let sign = if subset.len().is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                let (term, dterm) =
                    build_term(cfg, source, other, i, subset, 1, sign, rates[i], s, form);
                terms.push(term);
                dds.push(dterm);
            }
        }
        Ok(TermSet {
            source,
            terms,
            dd: dds,
            symmetric: false,
        })
    }

    /// Binomially weighted terms of a symmetric network: `N` entries, one
    /// per subset size.
    pub fn symmetric(cfg: &NetworkConfig, source: Source, form: XiZetaForm) -> Result<Self> {
        if !cfg.is_symmetric() {
            return Err(Error::invalid(
                "sigma2",
                "the simplified path needs equal variances and correlations on every link",
            ));
        }
        let n = cfg.n_relays();
        check_size(n)?;
        check_form(cfg, form)?;
        let other = source.other();
        let rate = dd(cfg.min_rate(0));
        let mut terms = Vec::with_capacity(n);
        let mut dds = Vec::with_capacity(n);
        for t in 0..n {
            let multiplicity = n as u64 * binomial(n as u64 - 1, t as u64);
            let sign = if t % 2 == 0 { 1 } else { -1 };
            let s = rate * t as f64;
            let (term, dterm) = build_term(
                cfg,
                source,
                other,
                0,
                (1..=t).collect(),
                multiplicity,
                sign,
                rate,
                s,
                form,
            );
            terms.push(term);
            dds.push(dterm);
        }
        Ok(TermSet {
            source,
            terms,
            dd: dds,
            symmetric: true,
        })
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn terms(&self) -> &[SubsetTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }
}

#[allow(clippy::too_many_arguments)]
fn build_term(
    cfg: &NetworkConfig,
    source: Source,
    other: Source,
    i: usize,
    subset: Vec<usize>,
    multiplicity: u64,
    sign: i8,
    rate_i: Dd,
    s: Dd,
    form: XiZetaForm,
) -> (SubsetTerm, DdTerm) {
    let sigma_own = dd(cfg.sigma2(source, i));
    let sigma_other = dd(cfg.sigma2(other, i));
    let c = dd_recip(1.0 + sigma_other * s);
    let (xi, zeta) = match form {
        XiZetaForm::General => {
            xi_zeta_dd(dd(cfg.rho(source, i)), sigma_own, sigma_other, rate_i, s)
        }
        XiZetaForm::PerfectCollapse => xi_zeta_perfect_dd(sigma_own, sigma_other, rate_i, s),
    };
    let term = SubsetTerm {
        relay: i,
        subset,
        multiplicity,
        sign,
        rate_sum: s.hi(),
        normalization: c.hi(),
        xi_zeta: XiZeta {
            xi: xi.hi(),
            zeta: zeta.hi(),
        },
        sigma_own: sigma_own.hi(),
        sigma_other: sigma_other.hi(),
    };
    let signed_count = dd(sign as f64 * multiplicity as f64);
    let dterm = DdTerm {
        weight: c * signed_count,
        signed_count,
        rate_sum: s,
        xi,
        zeta,
        sigma_own,
        sigma_other,
    };
    (term, dterm)
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Residuals of the two subset identities the closed forms rely on.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetIdentityResiduals {
    /// `|Σ_i Σ_t Σ_{A_t} (−1)^t (Σ_{l∈A_t} σ_i²/σ_l² + 1)⁻¹ − 1|`.
    pub r1: f64,
    /// `r2[k] = max_i |Σ_{A ⊆ {1..N}∖{i}} (−1)^{|A|} (Σ_{l∈A} 1/σ_l²)^k|`,
    /// `k = 0..N−2`, with `0⁰ = 1`.
    pub r2: Vec<f64>,
}

impl SubsetIdentityResiduals {
    pub fn max(&self) -> f64 {
        self.r2.iter().copied().fold(self.r1, f64::max)
    }
}

/// Evaluates both identities by direct enumeration in double-double.
pub fn subset_identity_residuals(sigma_i2: &[f64]) -> Result<SubsetIdentityResiduals> {
    let n = sigma_i2.len();
    if n == 0 {
        return Err(Error::invalid(
            "sigma_i2",
            "at least one variance is required",
        ));
    }
    check_size(n)?;
    if let Some(v) = sigma_i2.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::invalid(
            "sigma_i2",
            format!("variances must be positive, got {v}"),
        ));
    }
    let rates: Vec<Dd> = sigma_i2.iter().map(|&v| dd_recip(dd(v))).collect();
    let mut first = dd(0.0);
    let mut second = vec![0.0f64; n.saturating_sub(1)];
    for i in 0..n {
        let others: Vec<usize> = (0..n).filter(|&l| l != i).collect();
        let mut per_k = vec![dd(0.0); n.saturating_sub(1)];
        for mask in 0..1u32 << others.len() {
            let s = others
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .fold(dd(0.0), |acc, (_, &l)| acc + rates[l]);
            let sign = if mask.count_ones() % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            first += dd_recip(dd(sigma_i2[i]) * s + 1.0) * sign;
            for (k, acc) in per_k.iter_mut().enumerate() {
                *acc += dd_powi(s, k as u32) * sign;
            }
        }
        for (slot, v) in second.iter_mut().zip(&per_k) {
            *slot = slot.max(v.hi().abs());
        }
    }
    Ok(SubsetIdentityResiduals {
        r1: (first - 1.0).hi().abs(),
        r2: second,
    })
}
