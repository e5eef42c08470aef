use std::f64::consts::PI;
use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mercer-radii"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn radius_reproduces_table_entry() {
    let o = run(&[
        "radius", "--a", "1", "--b", "2", "--c", "0", "--nu", "0.5", "--kind", "h", "--problem", "spiral",
        "--alpha", "0.5", "--gamma", "1.0471975512",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let r: f64 = out.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((r - 0.1056).abs() < 5e-4, "{out}");
    assert!(out.trim_end().ends_with("oracle pass"));
}

#[test]
fn zero_order_is_rejected() {
    let o = run(&[
        "radius", "--a", "1", "--b", "2", "--c", "0", "--nu", "0", "--kind", "f", "--problem", "spiral",
        "--alpha", "0.5",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn equal_a_b_without_c_is_rejected() {
    let o = run(&[
        "radius", "--a", "1", "--b", "1", "--c", "0", "--nu", "0.5", "--kind", "g", "--problem", "star-phi",
        "--phi", "exp",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_target_is_an_input_error() {
    let o = run(&[
        "radius", "--a", "1", "--b", "2", "--c", "0", "--nu", "0.5", "--kind", "g", "--problem", "star-phi",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

fn radii_of(csv: &str) -> Vec<(f64, f64)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let cols: Vec<&str> = l.split(',').collect();
            (cols[6].parse().unwrap(), cols[9].parse().unwrap())
        })
        .collect()
}

#[test]
fn table_presets_match_references() {
    for (preset, format) in [("table3", "csv"), ("table2", "csv")] {
        let o = run(&["table", "--preset", preset, "--format", format]);
        assert_eq!(o.status.code(), Some(0), "{preset}");
        let cells = radii_of(&stdout(&o));
        assert_eq!(cells.len(), 27);
        for (radius, reference) in cells {
            assert!((radius - reference).abs() < 5e-4, "{preset}: {radius} vs {reference}");
        }
    }
}

#[test]
fn table_json_output_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t4.json");
    let o = run(&["table", "--preset", "table4", "--format", "json", "--no-verify", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with('{') && text.contains("\"cells\""));
}

#[test]
fn empty_sweep_is_rejected() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"a": [], "b": [], "c": [], "nu": 0.5, "problem": {{"type": "star-phi", "phi": "exp"}}}}"#).unwrap();
    let o = run(&["table", "--config", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_sweep_reports_skipped_cells() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"a": [1], "b": [1, 2], "c": [0], "nu": 0.5, "kinds": ["g"],
            "problem": {{"type": "convex-phi", "phi": "sine"}}}}"#
    )
    .unwrap();
    let o = run(&["table", "--config", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains(",skipped,"), "{out}");
    assert!(out.contains(",ok,"), "{out}");
}

#[test]
fn zeros_first_entry() {
    let o = run(&["zeros", "--a", "0", "--b", "1", "--c", "0", "--nu", "1", "--count", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let first: f64 = out.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((first - 1.841184).abs() < 1e-6);
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn curve_leaves_half_plane() {
    let (alpha, gamma) = (0.5, PI / 3.0);
    let o = run(&["curve", "--preset", "fig1", "--r", "0.3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("theta,re,im\n"));
    let min = out
        .lines()
        .skip(1)
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            v[1] * gamma.cos() + v[2] * gamma.sin()
        })
        .fold(f64::INFINITY, f64::min);
    assert!(min < alpha * gamma.cos(), "{min}");
}

#[test]
fn verify_quick_passes() {
    let o = run(&["verify", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table", "--preset", "table1"][..],
        &["curve", "--preset", "fig2", "--r", "0.3571"][..],
        &["zeros", "--a", "1", "--b", "2", "--c", "0", "--nu", "0.5", "--count", "20", "--which", "hprime"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
