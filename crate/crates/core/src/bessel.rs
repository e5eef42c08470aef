//! Bessel functions of the first kind, J_ν(z), for real ν > −1.
//!
//! Complex arguments are evaluated from the defining power series
//!
//! ```text
//! J_ν(z) = Σ (−1)ⁿ / (n! Γ(n+ν+1)) · (z/2)^(2n+ν)
//! ```
//!
//! with derivatives obtained by differentiating term by term. Each result
//! carries a rigorous bound on the discarded tail. The series loses accuracy
//! to cancellation once |z| grows past ~10, so real arguments beyond
//! [`SERIES_LIMIT`] go through Miller's backward recurrence instead.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Maximum number of series terms before giving up with `NonConvergent`.
pub const MAX_TERMS: usize = 200;

/// Default absolute tolerance on the truncated tail.
pub const DEFAULT_TOL: f64 = 1e-16;

/// Real arguments above this switch from the power series to backward recurrence.
pub const SERIES_LIMIT: f64 = 8.0;

/// Highest derivative order the series engine produces.
pub const MAX_ORDER: usize = 4;

/// Result of a truncated series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEval {
    pub value: Complex64,
    pub terms_used: usize,
    /// Absolute bound on the discarded tail.
    pub truncation_bound: f64,
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for real arguments (Lanczos, g = 7, with reflection below 1/2).
pub fn gamma(x: f64) -> f64 {
    if x == x.floor() && (1.0..=171.0).contains(&x) {
        return (2..x as u32).fold(1.0, |acc, k| acc * k as f64);
    }
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEF[0];
        for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Falling factorial p(p−1)…(p−k+1).
#[inline]
fn falling(p: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (p - j as f64))
}

/// Term-wise differentiated series `Σ_n w(p) (−1)ⁿ/(n!Γ(n+ν+1)) (z/2)^p`, `p = 2n+ν`,
/// for derivative orders `0..=max_order`.
///
/// `majorant` must bound `|weight|` from above and have a non-increasing ratio
/// `majorant(p+2)/majorant(p)` for `p > 0`; it drives the tail bound.
pub(crate) fn weighted_series(
    nu: f64,
    z: Complex64,
    max_order: usize,
    tol: f64,
    weight: impl Fn(f64) -> f64,
    majorant: impl Fn(f64) -> f64,
) -> Result<Vec<SeriesEval>> {
    if !(nu > -1.0) || !nu.is_finite() {
        return Err(Error::InvalidInput(format!("order nu = {nu} must exceed -1")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance {tol} must be positive")));
    }
    if max_order > MAX_ORDER {
        return Err(Error::InvalidInput(format!(
            "derivative order {max_order} exceeds {MAX_ORDER}"
        )));
    }
    if z == Complex64::new(0.0, 0.0) {
        return series_at_origin(nu, max_order, weight);
    }

    let half = z / 2.0;
    let half_sq = half * half;
    let half_sq_abs = half_sq.norm();
    let zabs = z.norm();

    let mut term = if nu == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        half.powf(nu)
    } / gamma(nu + 1.0);
    let mut acc = vec![Complex64::new(0.0, 0.0); max_order + 1];

    for n in 0..MAX_TERMS {
        let p = 2.0 * n as f64 + nu;
        let w = weight(p);
        for (k, slot) in acc.iter_mut().enumerate() {
            *slot += term * (w * falling(p, k));
        }
        let nf = n as f64;
        term = -term * half_sq / ((nf + 1.0) * (nf + nu + 1.0));

        // Tail bound for the terms n+1, n+2, ...: once every falling factor is
        // positive the term ratio is decreasing, so a geometric bound applies.
        let p_next = p + 2.0;
        if p_next - max_order as f64 + 1.0 <= 0.0 {
            continue;
        }
        let mut bounds = Vec::with_capacity(max_order + 1);
        let mut ok = true;
        for k in 0..=max_order {
            let next = term.norm() * majorant(p_next) * falling(p_next, k).abs();
            let ratio = half_sq_abs / ((nf + 2.0) * (nf + nu + 2.0))
                * (majorant(p_next + 2.0) / majorant(p_next).max(f64::MIN_POSITIVE))
                * (falling(p_next + 2.0, k) / falling(p_next, k)).abs();
            if !(ratio < 1.0) {
                ok = false;
                break;
            }
            let bound = next / (1.0 - ratio) / zabs.powi(k as i32);
            if !(bound <= tol) {
                ok = false;
                break;
            }
            bounds.push(bound);
        }
        if ok {
            return Ok(acc
                .iter()
                .zip(bounds)
                .enumerate()
                .map(|(k, (s, bound))| SeriesEval {
                    value: s / z.powi(k as i32),
                    terms_used: n + 1,
                    truncation_bound: bound,
                })
                .collect());
        }
    }
    Err(Error::NonConvergent {
        terms: MAX_TERMS,
        modulus: zabs,
    })
}

fn series_at_origin(
    nu: f64,
    max_order: usize,
    weight: impl Fn(f64) -> f64,
) -> Result<Vec<SeriesEval>> {
    let mut out = Vec::with_capacity(max_order + 1);
    for k in 0..=max_order {
        let mut value = 0.0;
        let mut coeff = 1.0 / gamma(nu + 1.0);
        let mut n = 0usize;
        loop {
            let p = 2.0 * n as f64 + nu;
            if p > k as f64 + 1e-12 {
                break;
            }
            let f = falling(p, k) * weight(p);
            if (p - k as f64).abs() <= 1e-12 {
                value += coeff * f * 0.5f64.powf(p);
            } else if f != 0.0 {
                return Err(Error::DomainError { nu, order: k });
            }
            let nf = n as f64;
            coeff = -coeff / ((nf + 1.0) * (nf + nu + 1.0));
            n += 1;
        }
        out.push(SeriesEval {
            value: Complex64::new(value, 0.0),
            terms_used: 1,
            truncation_bound: 0.0,
        });
    }
    Ok(out)
}

/// J_ν(z) from the power series.
pub fn bessel_j(nu: f64, z: Complex64, tol: f64) -> Result<SeriesEval> {
    Ok(bessel_j_derivs(nu, z, 0, tol)?[0])
}

/// The `order`-th derivative of J_ν at z, `order ∈ {1, 2, 3}`.
pub fn bessel_j_deriv(nu: f64, z: Complex64, order: usize, tol: f64) -> Result<SeriesEval> {
    if !(1..=3).contains(&order) {
        return Err(Error::InvalidInput(format!(
            "derivative order {order} not in 1..=3"
        )));
    }
    Ok(bessel_j_derivs(nu, z, order, tol)?[order])
}

/// J_ν and its derivatives up to `max_order` (at most 4) in a single pass.
pub fn bessel_j_derivs(nu: f64, z: Complex64, max_order: usize, tol: f64) -> Result<Vec<SeriesEval>> {
    weighted_series(nu, z, max_order, tol, |_| 1.0, |_| 1.0)
}

/// `(J_ν(x), J_ν′(x))` for real `x > 0`, `ν ≥ 0`.
///
/// Uses the series for `x ≤ SERIES_LIMIT` and Miller's backward recurrence
/// normalized by `(x/2)^μ = Σ_k (μ+2k) Γ(μ+k)/k! · J_{μ+2k}(x)` above it.
pub fn bessel_j_real(nu: f64, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidInput(format!("argument {x} must be positive")));
    }
    if x <= SERIES_LIMIT || nu < 0.0 {
        let d = bessel_j_derivs(nu, Complex64::new(x, 0.0), 1, DEFAULT_TOL)?;
        return Ok((d[0].value.re, d[1].value.re));
    }
    let (j, j_next) = miller_pair(nu, x);
    Ok((j, nu / x * j - j_next))
}

/// `(J_ν(x), J_{ν+1}(x))` by backward recurrence from a start order well above `x`.
fn miller_pair(nu: f64, x: f64) -> (f64, f64) {
    let base = nu.floor();
    let mu = nu - base;
    let m0 = base as usize;
    let top = (x.max(nu) + 30.0 + 8.0 * x.cbrt()).ceil() as usize + 2;

    // Normalization weights for even offsets m = 2k.
    let half = top / 2 + 1;
    let mut weights = Vec::with_capacity(half + 1);
    weights.push(gamma(mu + 1.0));
    let mut g = gamma(mu + 1.0);
    for k in 1..=half {
        if k > 1 {
            g *= (mu + k as f64 - 1.0) / k as f64;
        }
        weights.push((mu + 2.0 * k as f64) * g);
    }

    const BIG: f64 = 1e200;
    let mut upper = 0.0; // J_{μ+m+1}
    let mut current = 1e-300; // J_{μ+m}
    let mut sum = 0.0;
    let mut at_nu = 0.0;
    let mut at_nu1 = 0.0;
    let mut m = top;
    loop {
        if m.is_multiple_of(2) {
            sum += weights[m / 2] * current;
        }
        if m == m0 + 1 {
            at_nu1 = current;
        }
        if m == m0 {
            at_nu = current;
        }
        if m == 0 {
            break;
        }
        let lower = 2.0 * (mu + m as f64) / x * current - upper;
        upper = current;
        current = lower;
        m -= 1;
        if current.abs() > BIG {
            let s = 1.0 / BIG;
            current *= s;
            upper *= s;
            sum *= s;
            at_nu *= s;
            at_nu1 *= s;
        }
    }
    let scale = (x / 2.0).powf(mu) / sum;
    (at_nu * scale, at_nu1 * scale)
}
