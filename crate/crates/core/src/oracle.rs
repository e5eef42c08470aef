//! Brute-force class membership on a circle `|z| = r` by dense boundary
//! sampling.
//!
//! Two criteria are available:
//! * half-plane: `Re(e^{−iγ} w) > α cos γ`, margin `min Re(e^{−iγ} w) − α cos γ`;
//! * disk: `|w − 1| < β`, margin `β − max |w − 1|`.
//!
//! `w` is `z f′/f` for starlike-type classes and `1 + z f″/f′` for
//! convex-type classes. The disk criterion is sharp exactly at the roots of
//! the radius equations, so it drives the two-sided checks.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mercer::{convexity_expr, log_deriv, MercerParams, NormalizationKind};
use crate::radii::{solve, Problem, RadiusQuery, RadiusResult};
use crate::targets::TargetFunction;

/// Minimum number of boundary samples.
pub const MIN_SAMPLES: usize = 256;
/// Rows in an exported curve.
pub const CURVE_ROWS: usize = 1024;

/// Which expression is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Star,
    Convex,
}

/// Membership test applied to each sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Criterion {
    HalfPlane { alpha: f64, gamma: f64 },
    Disk { beta: f64 },
}

impl Criterion {
    fn margin(&self, w: Complex64) -> f64 {
        match *self {
            Criterion::HalfPlane { alpha, gamma } => {
                (Complex64::from_polar(1.0, -gamma) * w).re - alpha * gamma.cos()
            }
            Criterion::Disk { beta } => beta - (w - 1.0).norm(),
        }
    }
}

/// Samples of the class expression on `|z| = r`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryScan {
    pub r: f64,
    pub n_samples: usize,
    /// Positive iff every sample satisfies the criterion.
    pub min_margin: f64,
    /// Angle in `[0, 2π)` of the worst sample.
    pub argmin_angle: f64,
    /// `w(r e^{iθ_k})` at `θ_k = 2πk/n`.
    pub curve: Vec<Complex64>,
}

impl BoundaryScan {
    pub fn is_member(&self) -> bool {
        self.min_margin > 0.0
    }

    /// CSV `theta,re,im`, downsampled to at most [`CURVE_ROWS`] rows.
    pub fn to_csv(&self) -> String {
        let n = self.curve.len();
        let rows = n.min(CURVE_ROWS);
        let mut out = String::from("theta,re,im\n");
        for j in 0..rows {
            let k = j * n / rows;
            let theta = 2.0 * PI * k as f64 / n as f64;
            let w = self.curve[k];
            let _ = writeln!(out, "{theta:.12},{:.15e},{:.15e}", w.re, w.im);
        }
        out
    }
}

fn expression(p: &MercerParams, kind: NormalizationKind, mode: Mode, z: Complex64) -> Result<Complex64> {
    match mode {
        Mode::Star => log_deriv(p, kind, z),
        Mode::Convex => convexity_expr(p, kind, z),
    }
}

/// Sample `mode`'s expression at `n` equally spaced points of `|z| = r` and
/// score them with `criterion`.
pub fn scan(
    p: &MercerParams,
    kind: NormalizationKind,
    mode: Mode,
    r: f64,
    criterion: Criterion,
    n: usize,
) -> Result<BoundaryScan> {
    if n < MIN_SAMPLES {
        return Err(Error::InvalidInput(format!(
            "boundary scans need at least {MIN_SAMPLES} samples, got {n}"
        )));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidInput(format!("scan radius must be positive, got {r}")));
    }
    kind.check(p)?;
    let curve: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / n as f64;
            expression(p, kind, mode, Complex64::from_polar(r, theta))
        })
        .collect::<Result<_>>()?;
    let (worst, min_margin) = curve
        .iter()
        .map(|&w| criterion.margin(w))
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (k, m)| if m < acc.1 { (k, m) } else { acc });
    Ok(BoundaryScan {
        r,
        n_samples: n,
        min_margin,
        argmin_angle: 2.0 * PI * worst as f64 / n as f64,
        curve,
    })
}

/// `Re(e^{−iγ} z w′/w) > α cos γ` on `|z| = r`.
pub fn scan_spirallike(
    p: &MercerParams,
    kind: NormalizationKind,
    r: f64,
    alpha: f64,
    gamma: f64,
    n: usize,
) -> Result<BoundaryScan> {
    scan(p, kind, Mode::Star, r, Criterion::HalfPlane { alpha, gamma }, n)
}

/// `Re(e^{−iγ}(1 + z w″/w′)) > α cos γ` on `|z| = r`.
pub fn scan_convex_spirallike(
    p: &MercerParams,
    kind: NormalizationKind,
    r: f64,
    alpha: f64,
    gamma: f64,
    n: usize,
) -> Result<BoundaryScan> {
    scan(p, kind, Mode::Convex, r, Criterion::HalfPlane { alpha, gamma }, n)
}

/// `|w − 1| < β(φ)` on `|z| = r`.
pub fn scan_phi_membership(
    p: &MercerParams,
    kind: NormalizationKind,
    r: f64,
    phi: &TargetFunction,
    mode: Mode,
    n: usize,
) -> Result<BoundaryScan> {
    scan(p, kind, mode, r, Criterion::Disk { beta: phi.beta() }, n)
}

/// Disk criterion for any radius query; the disk radius is the constant of
/// its equation, `(1−α) cos γ` or `β`.
pub fn scan_query_disk(q: &RadiusQuery, r: f64, n: usize) -> Result<BoundaryScan> {
    let mode = if q.problem.is_convex() { Mode::Convex } else { Mode::Star };
    scan(&q.params, q.kind, mode, r, Criterion::Disk { beta: q.problem.constant() }, n)
}

/// Result of a two-sided check around a solved radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    /// Disk margin just inside the radius (must be positive).
    pub inner_margin: f64,
    /// Disk margin just outside (must be negative).
    pub outer_margin: f64,
    /// Half-plane margin just inside, for spirallike problems.
    pub inner_half_plane: Option<f64>,
    pub passed: bool,
}

/// Two-sided oracle check: membership at `inner·radius`, failure at
/// `outer·radius`.
pub fn verify_radius(
    q: &RadiusQuery,
    radius: f64,
    inner: f64,
    outer: f64,
    n: usize,
) -> Result<Verdict> {
    let inner_margin = scan_query_disk(q, inner * radius, n)?.min_margin;
    // a pole between the two circles counts as leaving the class
    let outer_margin = match scan_query_disk(q, outer * radius, n) {
        Ok(s) => s.min_margin,
        Err(Error::SingularPoint { .. }) => f64::NEG_INFINITY,
        Err(e) => return Err(e),
    };
    let inner_half_plane = match q.problem {
        Problem::Spirallike { alpha, gamma } => {
            Some(scan_spirallike(&q.params, q.kind, inner * radius, alpha, gamma, n)?.min_margin)
        }
        Problem::ConvexSpirallike { alpha, gamma } => Some(
            scan_convex_spirallike(&q.params, q.kind, inner * radius, alpha, gamma, n)?.min_margin,
        ),
        _ => None,
    };
    let passed =
        inner_margin > 0.0 && outer_margin < 0.0 && inner_half_plane.is_none_or(|m| m > 0.0);
    Ok(Verdict {
        inner_margin,
        outer_margin,
        inner_half_plane,
        passed,
    })
}

/// Default two-sided factors.
pub const INNER_FACTOR: f64 = 0.999;
pub const OUTER_FACTOR: f64 = 1.01;

/// Solve and confirm with the oracle; `oracle_checked` reports the verdict.
pub fn solve_verified(q: &RadiusQuery, n: usize) -> Result<(RadiusResult, Verdict)> {
    let mut result = solve(q)?;
    let verdict = verify_radius(q, result.radius, INNER_FACTOR, OUTER_FACTOR, n)?;
    result.oracle_checked = verdict.passed;
    Ok((result, verdict))
}
