use std::f64::consts::PI;

use mercer_radii::mercer::{n_values, MercerParams, NormalizationKind};
use mercer_radii::oracle::{scan_phi_membership, scan_query_disk, scan_spirallike, Mode};
use mercer_radii::radii::{solve, Problem, RadiusQuery};
use mercer_radii::tables::{figure_preset, table_preset, TABLE_COLUMNS};
use mercer_radii::targets::TargetFunction;
use mercer_radii::zeros::{
    find_zeros_with, mittag_leffler_partial, mittag_leffler_tail, rayleigh_tail,
    weierstrass_partial, weierstrass_tail_corrected, ZeroKind, ZeroOptions,
};
use num_complex::Complex64;

fn half(a: f64, b: f64, c: f64) -> MercerParams {
    MercerParams::new(a, b, c, 0.5).unwrap()
}

#[test]
fn five_hundred_term_product_at_0_3() {
    let p = half(1.0, 2.0, 0.0);
    let t = find_zeros_with(&p, ZeroKind::N, 500, &ZeroOptions::for_count(500, 0.5)).unwrap();
    let z = Complex64::new(0.3, 0.0);
    let direct = n_values(&p, z, 1e-16).unwrap().value;
    let raw = weierstrass_partial(&t, z, 500).unwrap();
    // the truncated product overshoots by the missing factors, about exp(z²·tail)
    let predicted = 0.09 * rayleigh_tail(&t, 500).unwrap();
    let raw_err = ((raw - direct) / direct).norm();
    assert!((raw_err - predicted).abs() < 0.01 * predicted, "{raw_err} vs {predicted}");
    let corrected = weierstrass_tail_corrected(&t, z, 500).unwrap();
    assert!(((corrected - direct) / direct).norm() < 1e-6);
}

#[test]
fn mittag_leffler_within_budget() {
    let p = half(1.0, 2.0, 0.0);
    let t = find_zeros_with(&p, ZeroKind::N, 500, &ZeroOptions::for_count(500, 0.5)).unwrap();
    let z = Complex64::new(0.5 * t.first(), 0.0);
    let n = n_values(&p, z, 1e-16).unwrap();
    let direct = z * n.first / n.value;
    let series = 0.5 - mittag_leffler_partial(&t, z, 500).unwrap();
    let diff = (direct - series).norm();
    assert!(diff < 2e-3, "{diff}");
    let tail = mittag_leffler_tail(&t, z, 500).unwrap().norm();
    assert!((diff - tail).abs() < 1e-3 * tail, "{diff} vs {tail}");
}

#[test]
fn disk_criterion_is_attained_on_real_axis() {
    for name in ["table1", "table2", "table3", "table4"] {
        let cfg = table_preset(name).unwrap();
        let problem = cfg.problem.build().unwrap();
        for kind in NormalizationKind::ALL {
            for &[a, b, c] in &TABLE_COLUMNS {
                let p = MercerParams::new_extended(a, b, c, 0.5).unwrap();
                let q = RadiusQuery::new(p, kind, problem).unwrap();
                let r = solve(&q).unwrap().radius;
                let s = scan_query_disk(&q, r, 4096).unwrap();
                // f and g are even, so ±r tie; for h the extreme is at z = r
                let off_axis = (s.argmin_angle - PI).abs().min(s.argmin_angle.min(2.0 * PI - s.argmin_angle));
                assert!(
                    off_axis < 1e-2,
                    "{name} {kind} ({a},{b},{c}): argmin {}",
                    s.argmin_angle
                );
            }
        }
    }
}

#[test]
fn third_figure_radius_belongs_to_f() {
    let fig = figure_preset("fig3").unwrap();
    let crescent = TargetFunction::crescent();
    let r = fig.radii[0];
    let f = scan_phi_membership(&fig.params, NormalizationKind::F, r * 0.999, &crescent, Mode::Convex, 4096)
        .unwrap();
    assert!(f.is_member());
    // h leaves the class well before 0.1271
    let h = RadiusQuery::new(fig.params, NormalizationKind::H, Problem::ConvexPhi(crescent)).unwrap();
    let rh = solve(&h).unwrap().radius;
    assert!((rh - 0.0759).abs() < 5e-4, "{rh}");
    let outside = scan_phi_membership(&fig.params, NormalizationKind::H, r, &crescent, Mode::Convex, 4096);
    assert!(outside.map_or(true, |s| !s.is_member()));
}

#[test]
fn first_figure_curves() {
    let fig = figure_preset("fig1").unwrap();
    let Problem::Spirallike { alpha, gamma } = fig.problem else {
        panic!("fig1 is a spirallike preset");
    };
    let inside = scan_spirallike(&fig.params, fig.kind, fig.radii[0] * 0.999, alpha, gamma, 4096).unwrap();
    assert!(inside.is_member());
    let outside = scan_spirallike(&fig.params, fig.kind, fig.radii[1], alpha, gamma, 4096).unwrap();
    assert!(outside.min_margin < 0.0);
}
