//! Legendre elliptic integrals of the first kind.
//!
//! `K(t)` comes from the arithmetic-geometric mean. The incomplete integral
//! `F(w, t)` for complex `w` is integrated along the straight segment from 0
//! with adaptive Gauss–Kronrod (7/15) quadrature.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 4000;

pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let (an, bn) = (0.5 * (a + b), (a * b).sqrt());
        if (an - bn).abs() <= 1e-16 * an {
            return an;
        }
        a = an;
        b = bn;
    }
    a
}

/// Complete integral `K(t) = F(1, t)` for modulus `0 ≤ t < 1`.
pub fn complete_k(t: f64) -> f64 {
    PI / (2.0 * agm(1.0, (1.0 - t * t).sqrt()))
}

/// `K′(t) = K(√(1−t²))`.
pub fn complete_k_prime(t: f64) -> f64 {
    PI / (2.0 * agm(1.0, t))
}

fn gk15(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).norm())
}

/// Adaptive integral of `f` over `[0, 1]` to absolute tolerance `tol`.
pub fn integrate_unit(f: impl Fn(f64) -> Complex64, tol: f64) -> Complex64 {
    let (v, e) = gk15(&f, 0.0, 1.0);
    let mut parts = vec![(0.0, 1.0, v, e)];
    while parts.len() < MAX_INTERVALS {
        let (total_err, worst) = parts
            .iter()
            .enumerate()
            .fold((0.0, 0), |(s, w), (i, p)| {
                (s + p.3, if p.3 > parts[w].3 { i } else { w })
            });
        if total_err <= tol {
            break;
        }
        let (a, b, _, _) = parts.swap_remove(worst);
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let (v1, e1) = gk15(&f, a, m);
        let (v2, e2) = gk15(&f, m, b);
        parts.push((a, m, v1, e1));
        parts.push((m, b, v2, e2));
    }
    parts.iter().map(|p| p.2).sum()
}

/// `F(w, t) = ∫₀^w dx / √((1−x²)(1−t²x²))` along the segment `[0, w]`.
///
/// Each square root is principal. Fails with `BranchCut` when the path runs
/// through `x² > 1` on the real axis.
pub fn incomplete_f(w: Complex64, t: f64) -> Result<Complex64> {
    let w2 = w * w;
    if w2.re > 1.0 && w2.im.abs() <= 1e-14 * w2.norm() {
        return Err(Error::BranchCut { re: w.re, im: w.im });
    }
    let one = Complex64::new(1.0, 0.0);
    let integrand = |u: f64| {
        let x2 = w2 * (u * u);
        w / ((one - x2).sqrt() * (one - x2 * (t * t)).sqrt())
    };
    Ok(integrate_unit(integrand, 1e-14))
}

/// Modulus `t ∈ (0, 1)` with `cosh(π K′(t) / (2 K(t))) = κ`, for `κ > 1`,
/// returned together with `K(t)`.
///
/// The search runs over `θ` with `t = cos θ`, `t′ = sin θ`, so both `K` and
/// `K′` stay accurate when `t` is within rounding of 0 or 1 (κ near 1).
pub fn conic_modulus(kappa: f64) -> Result<(f64, f64)> {
    if !(kappa > 1.0) || !kappa.is_finite() {
        return Err(Error::InvalidInput(format!(
            "conic modulus needs kappa > 1, got {kappa}"
        )));
    }
    // K′/K = agm(1, t′) / agm(1, t); the map increases with θ
    let map = |theta: f64| (PI / 2.0 * agm(1.0, theta.sin()) / agm(1.0, theta.cos())).cosh();
    let (mut lo, mut hi) = (1e-300_f64, PI / 2.0 - 1e-16);
    if map(lo) > kappa || map(hi) < kappa {
        return Err(Error::BracketFailure {
            lo,
            hi,
            reason: format!("kappa = {kappa} outside the reachable range"),
        });
    }
    for _ in 0..2000 {
        // bisect in log scale while the bracket spans decades
        let mid = if hi / lo > 4.0 { (lo * hi).sqrt() } else { 0.5 * (lo + hi) };
        if mid <= lo || mid >= hi {
            break;
        }
        if map(mid) < kappa {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let theta = 0.5 * (lo + hi);
    Ok((theta.cos(), PI / (2.0 * agm(1.0, theta.sin()))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_integral_values() {
        assert!((complete_k(0.0) - PI / 2.0).abs() < 1e-15);
        // K(1/√2) = Γ(1/4)² / (4√π)
        let g14 = 3.625_609_908_221_908_f64;
        let exact = g14 * g14 / (4.0 * PI.sqrt());
        assert!((complete_k(0.5_f64.sqrt()) - exact).abs() < 1e-14);
    }

    #[test]
    fn incomplete_reference_values() {
        // F(arcsin-argument w, modulus t) from a 30-digit reference
        let cases = [
            (0.1, Complex64::new(0.9, 0.0), Complex64::new(1.121_595_474_677_556_8, 0.0)),
            (0.9, Complex64::new(0.9, 0.0), Complex64::new(1.353_175_426_910_117, 0.0)),
            (0.5, Complex64::new(0.6, 0.7), Complex64::new(0.461_329_685_474_214_8, 0.734_719_116_322_843_7)),
        ];
        for (t, w, expected) in cases {
            let f = incomplete_f(w, t).unwrap();
            assert!((f - expected).norm() < 1e-13, "t = {t}, w = {w}: {f}");
        }
        // t = 0 reduces to arcsin
        let w = Complex64::new(0.3, 0.4);
        let f = incomplete_f(w, 0.0).unwrap();
        assert!((f - w.asin()).norm() < 1e-13);
    }

    #[test]
    fn imaginary_half_period() {
        for &t in &[0.2_f64, 0.6] {
            let w = Complex64::new(0.0, 1.0 / t.sqrt());
            let f = incomplete_f(w, t).unwrap();
            // F(i y) is purely imaginary; at y = 1/√t it equals i K′/2
            assert!(f.re.abs() < 1e-12);
            assert!((f.im - complete_k_prime(t) / 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn branch_cut_detected() {
        assert!(matches!(
            incomplete_f(Complex64::new(1.5, 0.0), 0.3),
            Err(Error::BranchCut { .. })
        ));
    }

    #[test]
    fn modulus_round_trip() {
        for &kappa in &[1.5, 2.0, 10.0] {
            let (t, k) = conic_modulus(kappa).unwrap();
            assert!((k - complete_k(t)).abs() < 1e-13 * k);
            let back = (PI * complete_k_prime(t) / (2.0 * k)).cosh();
            assert!((back - kappa).abs() < 1e-10 * kappa);
        }
        // t rounds to 1 here, K must still be finite and consistent
        let (t, k) = conic_modulus(1.0 + 1e-3).unwrap();
        assert!(t > 0.999_999_999 && k.is_finite());
        assert!(((PI * PI / (4.0 * k)).cosh() - (1.0 + 1e-3)).abs() < 1e-9);
    }
}
