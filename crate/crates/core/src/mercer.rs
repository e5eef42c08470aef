//! Mercer's combination `N_ν(z) = a z² J_ν″(z) + b z J_ν′(z) + c J_ν(z)` and the
//! three normalizations built from it:
//!
//! ```text
//! f_ν(z) = [2^ν Γ(ν+1) N_ν(z) / Q(ν)]^(1/ν)
//! g_ν(z) = 2^ν Γ(ν+1) z^(1−ν) N_ν(z) / Q(ν)
//! h_ν(z) = 2^ν Γ(ν+1) z^(1−ν/2) N_ν(√z) / Q(ν)
//! ```
//!
//! with `Q(t) = a t(t−1) + b t + c`. Everything downstream is expressed through
//! `N`, `N′` and `N″`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bessel::{self, gamma, SeriesEval, DEFAULT_TOL, SERIES_LIMIT};
use crate::error::{Error, Result};

/// A denominator below this fraction of its numerator is treated as a zero.
pub const SINGULAR_THRESHOLD: f64 = 1e-13;

/// The tuple (a, b, c, ν), validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MercerParams {
    a: f64,
    b: f64,
    c: f64,
    nu: f64,
}

/// Admissibility gate on (a, b, c) alone: `c = 0, a ≠ b` or `c > 0, a < b`.
pub fn coefficients_admissible(a: f64, b: f64, c: f64) -> bool {
    (c == 0.0 && a != b) || (c > 0.0 && a < b)
}

/// Largest real root of `Q(t) = a t² + (b−a) t + c`, if any.
pub fn largest_q_root(a: f64, b: f64, c: f64) -> Option<f64> {
    let lin = b - a;
    if a == 0.0 {
        return if lin == 0.0 { None } else { Some(-c / lin) };
    }
    let disc = lin * lin - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    let q = -0.5 * (lin + lin.signum() * disc.sqrt());
    if q == 0.0 {
        // lin = 0 and disc = 0, double root at 0
        return Some(0.0);
    }
    Some((q / a).max(c / q))
}

impl MercerParams {
    pub fn new(a: f64, b: f64, c: f64, nu: f64) -> Result<Self> {
        Self::build(a, b, c, nu, false)
    }

    /// Like [`MercerParams::new`], but also accepts the boundary case
    /// `c = 0, a = b ≠ 0`, where `N_ν(z) = a(ν² − z²) J_ν(z)` and `Q(t) = a t²`.
    pub fn new_extended(a: f64, b: f64, c: f64, nu: f64) -> Result<Self> {
        Self::build(a, b, c, nu, true)
    }

    fn build(a: f64, b: f64, c: f64, nu: f64, allow_equal_ab: bool) -> Result<Self> {
        if ![a, b, c, nu].iter().all(|v| v.is_finite()) {
            return Err(Error::Inadmissible("parameters must be finite".into()));
        }
        let boundary = allow_equal_ab && c == 0.0 && a == b && a != 0.0;
        if !coefficients_admissible(a, b, c) && !boundary {
            return Err(Error::Inadmissible(format!(
                "(a, b, c) = ({a}, {b}, {c}) needs c = 0 with a != b, or c > 0 with a < b"
            )));
        }
        let floor = largest_q_root(a, b, c).map_or(0.0, |r| r.max(0.0));
        if nu < floor {
            return Err(Error::Inadmissible(format!(
                "nu = {nu} is below max(0, nu0) = {floor}"
            )));
        }
        let p = MercerParams { a, b, c, nu };
        let q = p.q(nu);
        if q.abs() <= 1e-12 * (1.0 + a.abs() + b.abs() + c.abs()) {
            return Err(Error::Inadmissible(format!("Q(nu) = {q} vanishes at nu = {nu}")));
        }
        Ok(p)
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// `Q(t) = a t (t−1) + b t + c`.
    pub fn q(&self, t: f64) -> f64 {
        self.a * t * (t - 1.0) + self.b * t + self.c
    }

    pub fn nu0(&self) -> Option<f64> {
        largest_q_root(self.a, self.b, self.c)
    }

    /// Leading coefficient of `N_ν(z) ~ Q(ν) z^ν / (2^ν Γ(ν+1))`.
    pub fn leading_coefficient(&self) -> f64 {
        self.q(self.nu) / (2f64.powf(self.nu) * gamma(self.nu + 1.0))
    }

    /// Upper bound for `|Q(t)|` on `t ≥ 0` with non-increasing ratio `M(t+2)/M(t)`.
    fn q_majorant(&self, t: f64) -> f64 {
        self.a.abs() * t * t + (self.b - self.a).abs() * t + self.c.abs()
    }
}

/// `Q(t)` for the given parameters.
pub fn q_poly(p: &MercerParams, t: f64) -> f64 {
    p.q(t)
}

/// Largest real root ν₀ of `Q`.
pub fn nu0(p: &MercerParams) -> Option<f64> {
    p.nu0()
}

/// Which normalization of `N_ν` is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalizationKind {
    F,
    G,
    H,
}

impl NormalizationKind {
    pub const ALL: [NormalizationKind; 3] = [Self::F, Self::G, Self::H];

    /// Rejects kind F at ν = 0, where `f_ν` is undefined.
    pub fn check(self, p: &MercerParams) -> Result<()> {
        if self == Self::F && p.nu() == 0.0 {
            return Err(Error::Inadmissible("kind f requires nu != 0".into()));
        }
        Ok(())
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::F => "f",
            Self::G => "g",
            Self::H => "h",
        }
    }
}

impl fmt::Display for NormalizationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for NormalizationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "f" => Ok(Self::F),
            "g" => Ok(Self::G),
            "h" => Ok(Self::H),
            other => Err(Error::InvalidInput(format!("unknown kind `{other}`"))),
        }
    }
}

/// `N`, `N′`, `N″` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NValues {
    pub value: Complex64,
    pub first: Complex64,
    pub second: Complex64,
}

/// `N_ν(z)` and its first two derivatives.
///
/// Complex arguments are assembled from `J_ν … J_ν⁗`; real arguments past the
/// series range use `(J_ν, J_ν′)` from backward recurrence and Bessel's equation.
pub fn n_values(p: &MercerParams, z: Complex64, tol: f64) -> Result<NValues> {
    if z.im == 0.0 && z.re > SERIES_LIMIT {
        return n_values_real(p, z.re);
    }
    if z == Complex64::new(0.0, 0.0) {
        let s = n_direct_series(p, z, 2, tol)?;
        return Ok(NValues {
            value: s[0].value,
            first: s[1].value,
            second: s[2].value,
        });
    }
    let j = bessel::bessel_j_derivs(p.nu, z, 4, tol)?;
    let (a, b, c) = (p.a, p.b, p.c);
    let (j0, j1, j2, j3, j4) = (j[0].value, j[1].value, j[2].value, j[3].value, j[4].value);
    let z2 = z * z;
    Ok(NValues {
        value: a * z2 * j2 + b * z * j1 + c * j0,
        first: a * z2 * j3 + (2.0 * a + b) * z * j2 + (b + c) * j1,
        second: a * z2 * j4 + (4.0 * a + b) * z * j3 + (2.0 * a + 2.0 * b + c) * j2,
    })
}

/// Real-axis evaluation through `J_ν`, `J_ν′` and Bessel's equation.
pub(crate) fn n_values_real(p: &MercerParams, x: f64) -> Result<NValues> {
    let (j, dj) = bessel::bessel_j_real(p.nu, x)?;
    let (a, b, c, nu) = (p.a, p.b, p.c, p.nu);
    let nu2 = nu * nu;
    let d2j = -dj / x - (1.0 - nu2 / (x * x)) * j;
    let q = b - a;
    let big_b = a * nu2 + c - a * x * x;
    let big_a = -q * (x - nu2 / x) - 2.0 * a * x;
    let big_a1 = -q * (1.0 + nu2 / (x * x)) - 2.0 * a;
    let big_b1 = -2.0 * a * x;
    Ok(NValues {
        value: Complex64::new(q * x * dj + big_b * j, 0.0),
        first: Complex64::new(big_a * j + big_b * dj, 0.0),
        second: Complex64::new(big_a1 * j + (big_a + big_b1) * dj + big_b * d2j, 0.0),
    })
}

/// `N_ν^{(k)}(z)` for `k ∈ {0, 1, 2}`.
pub fn n_nu(p: &MercerParams, z: Complex64, deriv_order: usize, tol: f64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) && deriv_order <= 2 {
        return Ok(n_direct_series(p, z, deriv_order, tol)?[deriv_order].value);
    }
    let v = n_values(p, z, tol)?;
    match deriv_order {
        0 => Ok(v.value),
        1 => Ok(v.first),
        2 => Ok(v.second),
        k => Err(Error::InvalidInput(format!("derivative order {k} not in 0..=2"))),
    }
}

/// Direct summation of `Σ Q(2n+ν)(−1)ⁿ/(n!Γ(n+ν+1)) (z/2)^(2n+ν)` and its
/// term-wise derivatives up to `max_order`; an independent route to `N_ν`.
pub fn n_direct_series(
    p: &MercerParams,
    z: Complex64,
    max_order: usize,
    tol: f64,
) -> Result<Vec<SeriesEval>> {
    bessel::weighted_series(p.nu, z, max_order, tol, |t| p.q(t), |t| p.q_majorant(t))
}

fn ratio(num: Complex64, den: Complex64, at: Complex64) -> Result<Complex64> {
    // relative test: near the origin both sides scale like a power of z
    if den.norm() == 0.0 || den.norm() < SINGULAR_THRESHOLD * num.norm() {
        return Err(Error::SingularPoint {
            re: at.re,
            im: at.im,
            denominator: den.norm(),
        });
    }
    Ok(num / den)
}

/// Evaluation point of `N` for the given kind: `z` itself, or `√z` for `h`.
fn n_argument(kind: NormalizationKind, z: Complex64) -> Complex64 {
    match kind {
        NormalizationKind::H => z.sqrt(),
        _ => z,
    }
}

/// `z w′(z) / w(z)` for `w ∈ {f_ν, g_ν, h_ν}`.
pub fn log_deriv(p: &MercerParams, kind: NormalizationKind, z: Complex64) -> Result<Complex64> {
    kind.check(p)?;
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let s = n_argument(kind, z);
    let n = n_values(p, s, DEFAULT_TOL)?;
    let q = ratio(s * n.first, n.value, z)?;
    let nu = p.nu;
    Ok(match kind {
        NormalizationKind::F => q / nu,
        NormalizationKind::G => (1.0 - nu) + q,
        NormalizationKind::H => (1.0 - nu / 2.0) + q / 2.0,
    })
}

/// `1 + z w″(z) / w′(z)` for `w ∈ {f_ν, g_ν, h_ν}`.
pub fn convexity_expr(
    p: &MercerParams,
    kind: NormalizationKind,
    z: Complex64,
) -> Result<Complex64> {
    kind.check(p)?;
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let s = n_argument(kind, z);
    let n = n_values(p, s, DEFAULT_TOL)?;
    let nu = p.nu;
    let rest = match kind {
        NormalizationKind::F => {
            ratio(s * n.second, n.first, z)? + (1.0 / nu - 1.0) * ratio(s * n.first, n.value, z)?
        }
        NormalizationKind::G => {
            let num = s * s * n.second + (2.0 - 2.0 * nu) * s * n.first + (nu * nu - nu) * n.value;
            let den = s * n.first + (1.0 - nu) * n.value;
            ratio(num, den, z)?
        }
        NormalizationKind::H => {
            let num =
                s * s * n.second + (3.0 - 2.0 * nu) * s * n.first + (nu * nu - 2.0 * nu) * n.value;
            let den = 2.0 * s * n.first + 2.0 * (2.0 - nu) * n.value;
            ratio(num, den, z)?
        }
    };
    Ok(1.0 + rest)
}
