//! Positive zeros of `N_ν`, `N_ν′`, `g_ν′` and `h_ν′`, interlacing checks and
//! truncated Weierstrass products.
//!
//! Zeros are located on scaled entire forms so the origin never shows up as a
//! listed zero:
//!
//! | table    | scanned function (x > 0)                | stored |
//! |----------|-----------------------------------------|--------|
//! | `N`      | `x^{−ν} N(x)`                           | λ      |
//! | `NPrime` | `x^{1−ν} N′(x)`                         | λ′     |
//! | `GPrime` | `x^{−ν} (x N′(x) + (1−ν) N(x))`         | δ      |
//! | `HPrime` | `s^{−ν} (s N′(s) + (2−ν) N(s))`, `x=s²` | γ = s² |
//!
//! A sign-change scan brackets each zero, then bisection runs down to
//! machine precision.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bessel::DEFAULT_TOL;
use crate::error::{Error, Result};
use crate::mercer::{n_values, MercerParams};

/// Which entire function a [`ZeroTable`] holds zeros of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroKind {
    N,
    NPrime,
    GPrime,
    HPrime,
}

impl ZeroKind {
    pub fn label(self) -> &'static str {
        match self {
            ZeroKind::N => "n",
            ZeroKind::NPrime => "nprime",
            ZeroKind::GPrime => "gprime",
            ZeroKind::HPrime => "hprime",
        }
    }

    /// Products over `1 − z/γ` instead of `1 − z²/ζ²`.
    fn is_linear(self) -> bool {
        self == ZeroKind::HPrime
    }
}

impl std::str::FromStr for ZeroKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "n" => Ok(ZeroKind::N),
            "nprime" | "n'" => Ok(ZeroKind::NPrime),
            "gprime" | "g'" => Ok(ZeroKind::GPrime),
            "hprime" | "h'" => Ok(ZeroKind::HPrime),
            other => Err(Error::InvalidInput(format!("unknown zero table `{other}`"))),
        }
    }
}

/// Scan and refinement settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroOptions {
    /// Required absolute accuracy of each zero (in the stored domain).
    pub accuracy: f64,
    /// Give up beyond this point of the scan variable.
    pub x_max: f64,
    /// Largest scan step; zero spacing of Bessel-type functions tends to π.
    pub max_step: f64,
}

impl Default for ZeroOptions {
    fn default() -> Self {
        ZeroOptions {
            accuracy: 1e-12,
            x_max: 50.0 * PI,
            max_step: PI / 16.0,
        }
    }
}

impl ZeroOptions {
    pub fn with_accuracy(mut self, accuracy: f64) -> Self {
        self.accuracy = accuracy;
        self
    }

    pub fn with_x_max(mut self, x_max: f64) -> Self {
        self.x_max = x_max;
        self
    }

    /// An `x_max` generous enough for the first `count` zeros of a
    /// Bessel-type function of order ν.
    pub fn for_count(count: usize, nu: f64) -> Self {
        let needed = (count as f64 + nu / 2.0 + 4.0) * PI * 1.05;
        Self::default().with_x_max(needed.max(50.0 * PI))
    }
}

/// Ordered positive zeros, immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    which: ZeroKind,
    zeros: Vec<f64>,
    residuals: Vec<f64>,
    scales: Vec<f64>,
    accuracy: f64,
    params: MercerParams,
}

impl ZeroTable {
    pub fn which(&self) -> ZeroKind {
        self.which
    }
    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }
    /// `|target(zero)|` of the scaled scan function.
    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }
    /// Largest `|target|` at the two scan points bracketing each zero.
    pub fn scales(&self) -> &[f64] {
        &self.scales
    }
    /// Per-zero absolute error bound.
    pub fn accuracy(&self) -> f64 {
        self.accuracy
    }
    pub fn params(&self) -> &MercerParams {
        &self.params
    }
    pub fn len(&self) -> usize {
        self.zeros.len()
    }
    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
    pub fn first(&self) -> f64 {
        self.zeros[0]
    }

    /// CSV with columns `index,zero,residual`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,zero,residual\n");
        for (i, (z, r)) in self.zeros.iter().zip(&self.residuals).enumerate() {
            let _ = writeln!(out, "{},{:.15},{:.3e}", i + 1, z, r);
        }
        out
    }
}

/// Scaled target in its scan variable (`s = √x` for `HPrime`).
pub fn target_value(p: &MercerParams, which: ZeroKind, x: f64) -> Result<f64> {
    let n = n_values(p, Complex64::new(x, 0.0), DEFAULT_TOL)?;
    let (v, d) = (n.value.re, n.first.re);
    let nu = p.nu();
    let scale = x.powf(-nu);
    Ok(match which {
        ZeroKind::N => v * scale,
        ZeroKind::NPrime => d * scale * x,
        ZeroKind::GPrime => (x * d + (1.0 - nu) * v) * scale,
        ZeroKind::HPrime => (x * d + (2.0 - nu) * v) * scale,
    })
}

/// First `count` positive zeros with the default scan range.
pub fn find_zeros(p: &MercerParams, which: ZeroKind, count: usize, accuracy: f64) -> Result<ZeroTable> {
    find_zeros_with(p, which, count, &ZeroOptions::default().with_accuracy(accuracy))
}

/// First `count` positive zeros with explicit options.
pub fn find_zeros_with(
    p: &MercerParams,
    which: ZeroKind,
    count: usize,
    opts: &ZeroOptions,
) -> Result<ZeroTable> {
    if !(opts.accuracy > 0.0) || !(opts.max_step > 0.0) || opts.max_step > PI / 4.0 {
        return Err(Error::InvalidInput(
            "zero search needs accuracy > 0 and 0 < max_step <= pi/4".into(),
        ));
    }
    let f = |x: f64| target_value(p, which, x);
    let mut zeros = Vec::with_capacity(count);
    let mut residuals = Vec::with_capacity(count);
    let mut scales = Vec::with_capacity(count);

    let mut x = 1e-4;
    let mut fx = f(x)?;
    while zeros.len() < count {
        if x > opts.x_max {
            return Err(Error::ScanExhausted {
                found: zeros.len(),
                requested: count,
                x_max: opts.x_max,
            });
        }
        let step = opts.max_step.min(x);
        let next = x + step;
        let fnext = f(next)?;
        if fnext == 0.0 {
            zeros.push(next);
            residuals.push(0.0);
            scales.push(fx.abs());
            // step past the exact zero so the sign flip is seen once
            x = next + 1e-9 * next;
            fx = f(x)?;
            continue;
        }
        if fx * fnext < 0.0 {
            let root = bisect(&f, x, next, fx)?;
            zeros.push(root);
            residuals.push(f(root)?.abs());
            scales.push(fx.abs().max(fnext.abs()));
        }
        x = next;
        fx = fnext;
    }

    // bisection stops at adjacent doubles, well inside `opts.accuracy`
    let mut accuracy = zeros
        .iter()
        .map(|z| 4.0 * f64::EPSILON * z)
        .fold(0.0, f64::max)
        .max(f64::EPSILON);
    if which == ZeroKind::HPrime {
        let s_max = zeros.last().copied().unwrap_or(0.0);
        accuracy = 2.0 * s_max * accuracy + accuracy * accuracy;
        for z in zeros.iter_mut() {
            *z *= *z;
        }
    }
    Ok(ZeroTable {
        which,
        zeros,
        residuals,
        scales,
        accuracy,
        params: *p,
    })
}

/// Bisection down to adjacent floating-point numbers.
fn bisect(f: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut flo: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// True iff `primes[0] < zeros[0] < primes[1] < zeros[1] < …` over the common length.
pub fn check_interlacing(zeros: &ZeroTable, primes: &ZeroTable) -> bool {
    let (z, d) = (zeros.zeros(), primes.zeros());
    let n = z.len().min(d.len());
    if n < 2 {
        return false;
    }
    (0..n).all(|i| d[i] < z[i] && (i + 1 >= d.len() || z[i] < d[i + 1]))
}

/// `Σ 1/ζ²` over all zeros (or `Σ 1/γ` for `HPrime`), read off the second
/// Maclaurin coefficient of the normalized product.
pub fn rayleigh_sum(p: &MercerParams, which: ZeroKind) -> f64 {
    let nu = p.nu();
    let ratio = p.q(nu + 2.0) / ((nu + 1.0) * p.q(nu));
    match which {
        ZeroKind::N => ratio / 4.0,
        ZeroKind::NPrime => ratio * (nu + 2.0) / (4.0 * nu),
        ZeroKind::GPrime => 3.0 * ratio / 4.0,
        ZeroKind::HPrime => ratio / 2.0,
    }
}

fn check_terms(table: &ZeroTable, n_terms: usize) -> Result<()> {
    if n_terms > table.len() {
        return Err(Error::InvalidInput(format!(
            "{n_terms} product terms requested but the table holds {}",
            table.len()
        )));
    }
    Ok(())
}

fn prefactor(table: &ZeroTable, z: Complex64) -> Result<Complex64> {
    let p = table.params();
    let nu = p.nu();
    let zero = Complex64::new(0.0, 0.0);
    let pow = |e: f64| {
        if e == 0.0 {
            Complex64::new(1.0, 0.0)
        } else if z == zero {
            zero
        } else {
            z.powf(e)
        }
    };
    match table.which() {
        ZeroKind::N => Ok(p.leading_coefficient() * pow(nu)),
        ZeroKind::NPrime => {
            if nu == 0.0 {
                return Err(Error::InvalidInput(
                    "the N' product needs nu > 0 (its leading power is z^(nu-1))".into(),
                ));
            }
            Ok(p.leading_coefficient() * nu * pow(nu - 1.0))
        }
        ZeroKind::GPrime | ZeroKind::HPrime => Ok(Complex64::new(1.0, 0.0)),
    }
}

fn factor_arg(table: &ZeroTable, z: Complex64, zero: f64) -> Complex64 {
    if table.which().is_linear() {
        z / zero
    } else {
        z * z / (zero * zero)
    }
}

/// Prefactor times the first `n_terms` factors of the Weierstrass product.
pub fn weierstrass_partial(table: &ZeroTable, z: Complex64, n_terms: usize) -> Result<Complex64> {
    check_terms(table, n_terms)?;
    let product = table.zeros()[..n_terms]
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, &zero| {
            acc * (1.0 - factor_arg(table, z, zero))
        });
    Ok(prefactor(table, z)? * product)
}

/// Sum of the discarded `1/ζ²` (or `1/γ`) beyond the first `n_terms` zeros.
pub fn rayleigh_tail(table: &ZeroTable, n_terms: usize) -> Result<f64> {
    check_terms(table, n_terms)?;
    let linear = table.which().is_linear();
    let head: f64 = table.zeros()[..n_terms]
        .iter()
        .map(|&zero| if linear { 1.0 / zero } else { 1.0 / (zero * zero) })
        .sum();
    Ok(rayleigh_sum(table.params(), table.which()) - head)
}

/// [`weierstrass_partial`] times `exp(−w · tail)`, `w = z²` (or `z`), which
/// accounts for the discarded factors to first order.
pub fn weierstrass_tail_corrected(
    table: &ZeroTable,
    z: Complex64,
    n_terms: usize,
) -> Result<Complex64> {
    let partial = weierstrass_partial(table, z, n_terms)?;
    let w = if table.which().is_linear() { z } else { z * z };
    Ok(partial * (-w * rayleigh_tail(table, n_terms)?).exp())
}

/// Partial Mittag-Leffler sum `Σ_{n≤N} 2z²/(ζ²−z²)` (or `Σ z/(γ−z)` for `HPrime`).
pub fn mittag_leffler_partial(table: &ZeroTable, z: Complex64, n_terms: usize) -> Result<Complex64> {
    check_terms(table, n_terms)?;
    let linear = table.which().is_linear();
    Ok(table.zeros()[..n_terms]
        .iter()
        .map(|&zero| {
            if linear {
                z / (zero - z)
            } else {
                2.0 * z * z / (zero * zero - z * z)
            }
        })
        .sum())
}

/// Leading-order size of the discarded Mittag-Leffler terms: `2z²·tail`
/// (or `z·tail`). For `|z|` well inside the first zero the remainder is
/// smaller than this by a factor `|z|²/ζ_{N+1}²`.
pub fn mittag_leffler_tail(table: &ZeroTable, z: Complex64, n_terms: usize) -> Result<Complex64> {
    let tail = rayleigh_tail(table, n_terms)?;
    Ok(if table.which().is_linear() {
        z * tail
    } else {
        2.0 * z * z * tail
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::bessel_j_deriv;

    fn params(a: f64, b: f64, c: f64, nu: f64) -> MercerParams {
        MercerParams::new(a, b, c, nu).unwrap()
    }

    fn bisect_oracle(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(lo) * f(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo
    }

    #[test]
    fn first_zero_of_x_j1_prime() {
        // independent route: bisection on the series of J_1'
        let oracle = bisect_oracle(
            |x| bessel_j_deriv(1.0, Complex64::new(x, 0.0), 1, 1e-16).unwrap().value.re,
            1.0,
            3.0,
        );
        assert!((oracle - 1.841_183_781_340_659).abs() < 1e-12);
        let t = find_zeros(&params(0.0, 1.0, 0.0, 1.0), ZeroKind::N, 1, 1e-12).unwrap();
        assert!((t.first() - oracle).abs() < 1e-12, "{}", t.first());
    }

    #[test]
    fn first_zero_half_order_closed_form() {
        let oracle = bisect_oracle(
            |x| (4.0 * x * x + 1.0) * x.sin() - 4.0 * x * x.cos(),
            0.1,
            PI / 2.0,
        );
        let t = find_zeros(&params(1.0, 2.0, 0.0, 0.5), ZeroKind::N, 3, 1e-12).unwrap();
        assert!((t.first() - oracle).abs() < 1e-12);
        // the later zeros solve the same trigonometric equation
        let f = |x: f64| (4.0 * x * x + 1.0) * x.sin() - 4.0 * x * x.cos();
        for &z in &t.zeros()[1..] {
            assert!(f(z).abs() < 1e-10 * (1.0 + 4.0 * z * z));
        }
    }

    #[test]
    fn interlacing_examples() {
        for &(a, b, c, nu) in &[(1.0, 2.0, 0.0, 0.5), (1.0, 3.0, 0.0, 2.0)] {
            let p = params(a, b, c, nu);
            let n = find_zeros(&p, ZeroKind::N, 10, 1e-10).unwrap();
            let d = find_zeros(&p, ZeroKind::NPrime, 10, 1e-10).unwrap();
            assert!(check_interlacing(&n, &d));
            assert!(!check_interlacing(&d, &n));
        }
    }

    #[test]
    fn zeros_are_increasing_and_refined() {
        let p = params(2.0, 3.0, 1.0, 1.3);
        for which in [ZeroKind::N, ZeroKind::NPrime, ZeroKind::GPrime, ZeroKind::HPrime] {
            let t = find_zeros_with(&p, which, 30, &ZeroOptions::for_count(30, 1.3)).unwrap();
            assert!(t.zeros().windows(2).all(|w| w[0] < w[1]), "{which:?}");
            assert!(t.zeros()[0] > 0.0);
            for (r, s) in t.residuals().iter().zip(t.scales()) {
                assert!(*r < 1e-10 * s, "{which:?}: residual {r} vs scale {s}");
            }
        }
    }

    #[test]
    fn scan_exhausted() {
        let p = params(1.0, 2.0, 0.0, 0.5);
        let opts = ZeroOptions::default().with_x_max(10.0);
        assert!(matches!(
            find_zeros_with(&p, ZeroKind::N, 10, &opts),
            Err(Error::ScanExhausted { .. })
        ));
    }

    #[test]
    fn product_vanishes_where_expected() {
        let p = params(1.0, 2.0, 0.0, 0.5);
        let t = find_zeros(&p, ZeroKind::N, 20, 1e-12).unwrap();
        let at_origin = weierstrass_partial(&t, Complex64::new(0.0, 0.0), 20).unwrap();
        assert_eq!(at_origin.norm(), 0.0);
        let at_zero = weierstrass_partial(&t, Complex64::new(t.first(), 0.0), 20).unwrap();
        assert!(at_zero.norm() < 1e-14);
        assert!(weierstrass_partial(&t, Complex64::new(0.3, 0.0), 21).is_err());
    }

    #[test]
    fn csv_layout() {
        let t = find_zeros(&params(0.0, 1.0, 0.0, 1.0), ZeroKind::N, 2, 1e-12).unwrap();
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("index,zero,residual"));
        assert!(lines.next().unwrap().starts_with("1,1.84118378134"));
        assert_eq!(csv.lines().count(), 3);
    }
}
