//! Special functions: `K₁`, `₂F₁`, the Gaussian `Q` function and the
//! double-double kernel behind the closed-form SER.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use twofloat::TwoFloat;

use crate::error::{Error, Result};

/// Double-double number (about 32 significant digits).
pub(crate) type Dd = TwoFloat;

#[inline]
pub(crate) fn dd(x: f64) -> Dd {
    TwoFloat::from(x)
}

/// `x^n` with `0^0 = 1`.
pub(crate) fn dd_powi(x: Dd, n: u32) -> Dd {
    let mut acc = dd(1.0);
    let mut base = x;
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    acc
}

/// `a / b` to full double-double precision.
///
/// The `Div` impls in `twofloat` 0.8 drop the low word (`1/3` comes back with
/// a zero tail), so quotients are refined here with two correction steps.
pub(crate) fn dd_div(a: Dd, b: Dd) -> Dd {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    TwoFloat::new_add(q1, q2) + q3
}

#[inline]
pub(crate) fn dd_recip(b: Dd) -> Dd {
    dd_div(dd(1.0), b)
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Modified Bessel function of the second kind of order one.
///
/// Underflows to zero for `x` beyond about 705.
pub fn bessel_k1(x: f64) -> Result<f64> {
    check_k1_arg(x)?;
    if x <= 2.0 {
        Ok(k1_series(x))
    } else {
        Ok(k1_scaled_cf(x) * (-x).exp())
    }
}

/// `eˣ K₁(x)`, finite for every positive `x`.
pub fn bessel_k1_scaled(x: f64) -> Result<f64> {
    check_k1_arg(x)?;
    if x <= 2.0 {
        Ok(k1_series(x) * x.exp())
    } else {
        Ok(k1_scaled_cf(x))
    }
}

fn check_k1_arg(x: f64) -> Result<()> {
    if x > 0.0 && !x.is_nan() {
        Ok(())
    } else {
        Err(Error::domain(
            "bessel_k1",
            format!("x must be positive, got {x}"),
        ))
    }
}

/// Ascending series, accurate for `0 < x ≤ 2`.
fn k1_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    // I₁(x) = (x/2) Σ qᵏ / (k! (k+1)!)
    let mut term = 1.0;
    let mut i1 = 1.0;
    // ψ(k+1) + ψ(k+2)
    let mut psi_k1 = -EULER_GAMMA;
    let mut psi_sum = 2.0 * psi_k1 + 1.0;
    let mut tail = psi_sum;
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        psi_k1 += 1.0 / kf;
        psi_sum = 2.0 * psi_k1 + 1.0 / (kf + 1.0);
        i1 += term;
        tail += psi_sum * term;
        if term < 1e-18 * i1 {
            break;
        }
    }
    1.0 / x + (0.5 * x).ln() * 0.5 * x * i1 - 0.25 * x * tail
}

/// `eˣ K₁(x)` by Steed's continued fraction, for `x > 2`.
fn k1_scaled_cf(x: f64) -> f64 {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    let k0 = (FRAC_PI_2 / x).sqrt() / s;
    k0 * (x + 0.5 - a1 * h) / x
}

const MAX_SERIES_TERMS: usize = 500_000;

/// Gauss hypergeometric function `₂F₁(a, b; c; z)` for `0 ≤ z < 1`.
///
/// Sums the power series directly up to `z = 0.8` and applies Euler's
/// transformation `(1−z)^{c−a−b} ₂F₁(c−a, c−b; c; z)` above.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::domain(
            "gauss_2f1",
            format!("z must lie in [0, 1), got {z}"),
        ));
    }
    if c <= 0.0 && c == c.round() {
        return Err(Error::domain(
            "gauss_2f1",
            format!("c must not be a nonpositive integer, got {c}"),
        ));
    }
    if z <= 0.8 {
        hyp_series(a, b, c, z)
    } else {
        Ok((1.0 - z).powf(c - a - b) * hyp_series(c - a, c - b, c, z)?)
    }
}

fn hyp_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut comp = 0.0;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        if term == 0.0 {
            return Ok(sum);
        }
        // Kahan summation keeps long tails near z = 1 accurate
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() < 1e-17 * sum.abs() && kf > (a.abs() + b.abs()) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        function: "gauss_2f1",
        detail: format!("series did not converge in {MAX_SERIES_TERMS} terms at z = {z}"),
    })
}

/// Gaussian tail probability `Q(x) = P(Z > x)`.
pub fn gaussian_q(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Complete elliptic integrals `(K(m), E(m))` with parameter `m ∈ [0, 1)`,
/// given `m` and `1 − m` separately so that `1 − m` keeps full precision.
fn elliptic_ke(m: Dd, one_minus_m: Dd) -> (Dd, Dd) {
    let mut a = dd(1.0);
    let mut b = one_minus_m.sqrt();
    let mut c2 = m;
    let mut pow2 = dd(0.5);
    let mut sum = pow2 * c2;
    for _ in 0..40 {
        let an = (a + b) * 0.5;
        let bn = (a * b).sqrt();
        let cn = (a - b) * 0.5;
        a = an;
        b = bn;
        c2 = cn * cn;
        pow2 *= 2.0;
        sum += pow2 * c2;
        if c2.hi() < 1e-34 * a.hi() {
            break;
        }
    }
    let k = dd_div(twofloat::consts::PI, a * 2.0);
    (k, k * (1.0 - sum))
}

/// `(3√2π/2)·AB·P^{−5/2}·₂F₁(5/2, 3/2; 2; w)` with
/// `P = (√A+√B)² + β/2`, `M = (√A−√B)² + β/2` and `w = M/P`.
///
/// Evaluated in double-double: the closed-form SER is a small difference of
/// many such values.
pub(crate) fn ser_kernel(a: Dd, b: Dd, beta: Dd) -> Dd {
    let ra = a.sqrt();
    let rb = b.sqrt();
    let half_beta = beta * 0.5;
    let p = (ra + rb) * (ra + rb) + half_beta;
    let m = (ra - rb) * (ra - rb) + half_beta;
    let w = dd_div(m, p);
    if w.hi() < 0.5 {
        let mut term = dd(1.0);
        let mut sum = dd(1.0);
        for k in 0..400 {
            let kf = k as f64;
            // numerator and denominator are exact in f64
            term = dd_div(
                term * ((2.5 + kf) * (1.5 + kf)),
                dd((2.0 + kf) * (kf + 1.0)),
            ) * w;
            sum += term;
            if term.hi() < 1e-34 * sum.hi() {
                break;
            }
        }
        let pref = dd(3.0) * twofloat::consts::SQRT_2 * twofloat::consts::PI * 0.5;
        let sp = p.sqrt();
        dd_div(pref * a * b * sum, p * p * sp)
    } else {
        let one_minus_w = dd_div(dd(4.0) * ra * rb, p);
        let (k, e) = elliptic_ke(w, one_minus_w);
        let bracket = (1.0 + w) * e - one_minus_w * k;
        dd_div(twofloat::consts::SQRT_2 / 8.0 * p.sqrt() * bracket, m)
    }
}
