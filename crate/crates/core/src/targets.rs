//! Ma–Minda target functions `φ` and the radius `β` of the largest disk
//! centred at 1 inside `φ(D)`.

use std::f64::consts::{E, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::elliptic::{conic_modulus, incomplete_f};
use crate::error::{Error, Result};

/// Which target function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    /// `(1 + Aζ) / (1 + Bζ)`, `−1 ≤ B < A ≤ 1`.
    Janowski { a: f64, b: f64 },
    /// Lemniscate-type `√2 − (√2−1)·√((1−ζ)/(1+2(√2−1)ζ))`.
    SL,
    /// `√(1 + ζ)`.
    Sqrt1p,
    /// `e^ζ`.
    Exp,
    /// `ζ + √(1 + ζ²)`.
    Crescent,
    /// `2 / (1 + e^{−ζ})`.
    Sigmoid,
    /// `1 + sin ζ`.
    Sine,
    /// `exp(e^ζ − 1)`.
    Bell,
    /// Domain bounded by a conic section with eccentricity-type parameter κ ≥ 0.
    Conic { kappa: f64 },
}

/// Elliptic data cached for `Conic` with κ > 1.
#[derive(Debug, Clone, Copy, PartialEq)]
struct ConicModulus {
    t: f64,
    k: f64,
}

/// A validated target function together with its closed-form `β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetFunction {
    variant: Variant,
    beta: f64,
    modulus: Option<ConicModulus>,
}

impl TargetFunction {
    pub fn new(variant: Variant) -> Result<Self> {
        let modulus = match variant {
            Variant::Janowski { a, b } => {
                if !(a.is_finite() && b.is_finite() && -1.0 <= b && b < a && a <= 1.0) {
                    return Err(Error::InvalidInput(format!(
                        "Janowski target needs -1 <= B < A <= 1, got A = {a}, B = {b}"
                    )));
                }
                None
            }
            Variant::Conic { kappa } => {
                if !(kappa >= 0.0 && kappa.is_finite()) {
                    return Err(Error::InvalidInput(format!(
                        "conic target needs kappa >= 0, got {kappa}"
                    )));
                }
                if kappa > 1.0 {
                    let (t, k) = conic_modulus(kappa)?;
                    Some(ConicModulus { t, k })
                } else {
                    None
                }
            }
            _ => None,
        };
        let mut target = TargetFunction {
            variant,
            beta: 0.0,
            modulus,
        };
        target.beta = beta_closed(&target);
        Ok(target)
    }

    pub fn exp() -> Self {
        Self::new(Variant::Exp).expect("exp target is always valid")
    }

    pub fn crescent() -> Self {
        Self::new(Variant::Crescent).expect("crescent target is always valid")
    }

    pub fn janowski(a: f64, b: f64) -> Result<Self> {
        Self::new(Variant::Janowski { a, b })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Solved modulus `t` for `Conic` with κ > 1.
    pub fn conic_modulus(&self) -> Option<f64> {
        self.modulus.map(|m| m.t)
    }

    /// The nine named variants of the catalog with the conic targets used in
    /// tests.
    pub fn catalog() -> Vec<TargetFunction> {
        let mut v: Vec<Variant> = vec![
            Variant::Janowski { a: 1.0, b: -1.0 },
            Variant::Janowski { a: 0.5, b: -0.5 },
            Variant::Janowski { a: 1.0, b: 0.0 },
            Variant::Janowski { a: 0.6, b: 0.2 },
            Variant::SL,
            Variant::Sqrt1p,
            Variant::Exp,
            Variant::Crescent,
            Variant::Sigmoid,
            Variant::Sine,
            Variant::Bell,
        ];
        v.extend([0.0, 0.5, 1.0, 2.0].map(|kappa| Variant::Conic { kappa }));
        v.into_iter()
            .map(|var| TargetFunction::new(var).expect("catalog entries are valid"))
            .collect()
    }
}

impl fmt::Display for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            Variant::Janowski { a, b } => write!(f, "janowski:{a}:{b}"),
            Variant::SL => f.write_str("sl"),
            Variant::Sqrt1p => f.write_str("sqrt1p"),
            Variant::Exp => f.write_str("exp"),
            Variant::Crescent => f.write_str("crescent"),
            Variant::Sigmoid => f.write_str("sigmoid"),
            Variant::Sine => f.write_str("sine"),
            Variant::Bell => f.write_str("bell"),
            Variant::Conic { kappa } => write!(f, "conic:{kappa}"),
        }
    }
}

impl FromStr for TargetFunction {
    type Err = Error;

    /// Names: `janowski:A:B`, `sl`, `sqrt1p`, `exp`, `crescent`, `sigmoid`,
    /// `sine`, `bell`, `conic:kappa`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let parts: Vec<&str> = lower.split(':').collect();
        let num = |x: &str| {
            x.parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("bad number `{x}` in target `{s}`")))
        };
        let variant = match parts.as_slice() {
            ["janowski", a, b] => Variant::Janowski { a: num(a)?, b: num(b)? },
            ["sl"] => Variant::SL,
            ["sqrt1p"] => Variant::Sqrt1p,
            ["exp"] => Variant::Exp,
            ["crescent"] => Variant::Crescent,
            ["sigmoid"] => Variant::Sigmoid,
            ["sine"] => Variant::Sine,
            ["bell"] => Variant::Bell,
            ["conic", k] => Variant::Conic { kappa: num(k)? },
            _ => return Err(Error::InvalidInput(format!("unknown target `{s}`"))),
        };
        TargetFunction::new(variant)
    }
}

/// Principal square root, refusing arguments on the negative real axis.
fn sqrt_checked(w: Complex64, zeta: Complex64) -> Result<Complex64> {
    if w.re < 0.0 && w.im.abs() <= 1e-14 * w.norm() {
        return Err(Error::BranchCut {
            re: zeta.re,
            im: zeta.im,
        });
    }
    Ok(w.sqrt())
}

fn near_one(zeta: Complex64) -> Result<()> {
    if (zeta - 1.0).norm() < 1e-14 {
        return Err(Error::SingularPoint {
            re: zeta.re,
            im: zeta.im,
            denominator: (1.0 - zeta).norm(),
        });
    }
    Ok(())
}

/// `φ(ζ)` on the principal branch, for `|ζ| ≤ 1`.
pub fn eval(phi: &TargetFunction, zeta: Complex64) -> Result<Complex64> {
    if !(zeta.norm() <= 1.0 + 1e-12) {
        return Err(Error::InvalidInput(format!(
            "target functions are evaluated on the closed unit disk, got |zeta| = {}",
            zeta.norm()
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(match phi.variant {
        Variant::Janowski { a, b } => {
            let den = one + b * zeta;
            if den.norm() < 1e-14 {
                return Err(Error::SingularPoint {
                    re: zeta.re,
                    im: zeta.im,
                    denominator: den.norm(),
                });
            }
            (one + a * zeta) / den
        }
        Variant::SL => {
            let c = 2.0 * (SQRT_2 - 1.0);
            let ratio = (one - zeta) / (one + c * zeta);
            SQRT_2 - (SQRT_2 - 1.0) * sqrt_checked(ratio, zeta)?
        }
        Variant::Sqrt1p => sqrt_checked(one + zeta, zeta)?,
        Variant::Exp => zeta.exp(),
        Variant::Crescent => zeta + sqrt_checked(one + zeta * zeta, zeta)?,
        Variant::Sigmoid => 2.0 / (one + (-zeta).exp()),
        Variant::Sine => one + zeta.sin(),
        Variant::Bell => (zeta.exp() - 1.0).exp(),
        Variant::Conic { kappa } => eval_conic(phi, kappa, zeta)?,
    })
}

fn eval_conic(phi: &TargetFunction, kappa: f64, zeta: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if kappa == 0.0 {
        near_one(zeta)?;
        return Ok((one + zeta) / (one - zeta));
    }
    if let Some(m) = phi.modulus {
        // the path to √(ζ/t) crosses the cut only for real ζ ≥ t
        let w = zeta.sqrt() / m.t.sqrt();
        let arg = incomplete_f(w, m.t).map_err(|_| Error::BranchCut {
            re: zeta.re,
            im: zeta.im,
        })? * (PI / (2.0 * m.k));
        let s = arg.sin();
        return Ok(one + 2.0 / (kappa * kappa - 1.0) * s * s);
    }
    near_one(zeta)?;
    let root = zeta.sqrt();
    if kappa == 1.0 {
        let l = ((one + root) / (one - root)).ln();
        return Ok(one + 2.0 / (PI * PI) * l * l);
    }
    let big_a = 2.0 / PI * kappa.acos();
    let s = (big_a * root.atanh()).sinh();
    Ok(one + 2.0 / (1.0 - kappa * kappa) * s * s)
}

/// Closed-form `β` for each variant.
pub fn beta_closed(phi: &TargetFunction) -> f64 {
    match phi.variant {
        Variant::Janowski { a, b } => (a - b) / (1.0 + b.abs()),
        Variant::SL => (2.0 - 2.0 * SQRT_2 + (2.0 * SQRT_2 - 2.0).sqrt()).sqrt(),
        Variant::Sqrt1p => SQRT_2 - 1.0,
        Variant::Exp => 1.0 - 1.0 / E,
        Variant::Crescent => 2.0 - SQRT_2,
        Variant::Sigmoid => (E - 1.0) / (E + 1.0),
        Variant::Sine => 1f64.sin(),
        Variant::Bell => 1.0 - (1.0 / E - 1.0).exp(),
        Variant::Conic { kappa } => 1.0 / (kappa + 1.0),
    }
}

/// `min_θ |φ(e^{iθ}) − 1|` by a uniform θ grid (offset by half a step so
/// `ζ = 1` is never sampled) and golden-section refinement around the grid
/// minimum.
pub fn beta_oracle(phi: &TargetFunction, n_samples: usize) -> Result<f64> {
    if n_samples < 1000 {
        return Err(Error::InvalidInput(format!(
            "beta oracle needs at least 1000 samples, got {n_samples}"
        )));
    }
    let dist = |theta: f64| -> Result<f64> {
        Ok((eval(phi, Complex64::from_polar(1.0, theta))? - 1.0).norm())
    };
    let h = 2.0 * PI / n_samples as f64;
    let mut best = (f64::INFINITY, 0.0);
    for k in 0..n_samples {
        let theta = (k as f64 + 0.5) * h;
        let d = dist(theta)?;
        if d < best.0 {
            best = (d, theta);
        }
    }
    let (mut lo, mut hi) = (best.1 - h, best.1 + h);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (dist(x1)?, dist(x2)?);
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = dist(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = dist(x2)?;
        }
    }
    Ok(best.0.min(f1).min(f2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn value_at_origin_is_one() {
        for phi in TargetFunction::catalog() {
            let v = eval(&phi, c(0.0, 0.0)).unwrap();
            assert!((v - 1.0).norm() < 1e-12, "{phi}");
        }
    }

    #[test]
    fn worked_values() {
        let cr = TargetFunction::crescent();
        assert!((eval(&cr, c(-1.0, 0.0)).unwrap().re - (SQRT_2 - 1.0)).abs() < 1e-15);
        let hp = TargetFunction::janowski(1.0, -1.0).unwrap();
        for &x in &[-0.9, -0.3, 0.2, 0.7] {
            let v = eval(&hp, c(x, 0.0)).unwrap();
            assert!((v.re - (1.0 + x) / (1.0 - x)).abs() < 1e-15);
        }
        assert!(eval(&hp, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn closed_forms() {
        let b = |s: &str| s.parse::<TargetFunction>().unwrap().beta();
        assert_eq!(b("janowski:1:-1"), 1.0);
        assert!((b("exp") - 0.632_120_558_828_557_7).abs() < 1e-15);
        assert_eq!(b("conic:1"), 0.5);
        assert!((b("sl") - 0.285_924_109_473_588).abs() < 1e-14);
    }

    #[test]
    fn oracle_examples() {
        let check = |name: &str, expected: f64| {
            let phi: TargetFunction = name.parse().unwrap();
            let got = beta_oracle(&phi, 4096).unwrap();
            assert!((got - expected).abs() < 1e-6, "{name}: {got} vs {expected}");
        };
        check("exp", 1.0 - 1.0 / E);
        check("sine", 1f64.sin());
        check("janowski:1:0", 1.0);
    }

    #[test]
    fn closed_form_matches_oracle() {
        for phi in TargetFunction::catalog() {
            let oracle = beta_oracle(&phi, 4096).unwrap();
            assert!((oracle - phi.beta()).abs() < 1e-5, "{phi}: {oracle} vs {}", phi.beta());
        }
    }

    #[test]
    fn beta_is_distance_to_minus_one_where_leftmost() {
        // SL, sqrt1p and Janowski with B > 0 reach the boundary closest to 1
        // away from φ(−1), so they are excluded here
        for phi in TargetFunction::catalog() {
            let leftmost = match phi.variant() {
                Variant::SL | Variant::Sqrt1p => false,
                Variant::Janowski { b, .. } => b <= 0.0,
                _ => true,
            };
            if !leftmost {
                continue;
            }
            let zeta = match phi.variant() {
                Variant::Janowski { b, .. } if b == -1.0 => c(-1.0 + 1e-6, 0.0),
                _ => c(-1.0, 0.0),
            };
            let v = eval(&phi, zeta).unwrap();
            let tol = if zeta.re > -1.0 { 1e-5 } else { 1e-8 };
            assert!((1.0 - v.re - phi.beta()).abs() < tol, "{phi}");
        }
    }

    #[test]
    fn conic_branches_meet_at_minus_one() {
        for &kappa in &[0.0, 0.5, 1.0, 2.0, 5.0] {
            let phi = TargetFunction::new(Variant::Conic { kappa }).unwrap();
            let v = eval(&phi, c(-1.0, 0.0)).unwrap();
            assert!((v.re - kappa / (kappa + 1.0)).abs() < 1e-10, "kappa {kappa}: {v}");
            assert!(v.im.abs() < 1e-10);
        }
    }

    #[test]
    fn parsing() {
        for name in ["janowski:0.5:-0.5", "sl", "sqrt1p", "exp", "crescent", "sigmoid", "sine", "bell", "conic:2"] {
            let phi: TargetFunction = name.parse().unwrap();
            assert_eq!(phi.to_string(), name);
        }
        assert!("janowski:-1:1".parse::<TargetFunction>().is_err());
        assert!("conic:-1".parse::<TargetFunction>().is_err());
        assert!("cardioid".parse::<TargetFunction>().is_err());
        assert!(eval(&TargetFunction::exp(), c(1.5, 0.0)).is_err());
    }
}
