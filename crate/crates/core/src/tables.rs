//! Radius sweeps over parameter grids, with built-in presets for the four
//! reference tables and the three boundary-curve figures.
//!
//! A sweep is described by a [`SweepConfig`] (JSON). Cells are solved in
//! parallel; output rows always follow the configured kind order, then the
//! column order.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mercer::{MercerParams, NormalizationKind};
use crate::oracle::{verify_radius, Mode};
use crate::radii::{solve, Problem, RadiusQuery};
use crate::targets::TargetFunction;

/// γ = π/3 to 12 digits, as used by the presets.
#[allow(clippy::approx_constant)]
pub const GAMMA_PI_3: f64 = 1.047_197_551_197;

/// The nine `(a, b, c)` columns of the reference tables.
pub const TABLE_COLUMNS: [[f64; 3]; 9] = [
    [2.0, 3.0, 0.0],
    [3.0, 3.0, 0.0],
    [4.0, 3.0, 0.0],
    [1.0, 2.0, 0.0],
    [1.0, 3.0, 0.0],
    [1.0, 4.0, 0.0],
    [1.0, 2.0, 2.0],
    [1.0, 2.0, 3.0],
    [1.0, 2.0, 4.0],
];

/// Radius problem as written in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ProblemSpec {
    Spiral { alpha: f64, gamma: f64 },
    ConvexSpiral { alpha: f64, gamma: f64 },
    StarPhi { phi: String },
    ConvexPhi { phi: String },
}

impl ProblemSpec {
    pub fn build(&self) -> Result<Problem> {
        Ok(match self {
            ProblemSpec::Spiral { alpha, gamma } => Problem::Spirallike {
                alpha: *alpha,
                gamma: *gamma,
            },
            ProblemSpec::ConvexSpiral { alpha, gamma } => Problem::ConvexSpirallike {
                alpha: *alpha,
                gamma: *gamma,
            },
            ProblemSpec::StarPhi { phi } => Problem::StarPhi(phi.parse::<TargetFunction>()?),
            ProblemSpec::ConvexPhi { phi } => Problem::ConvexPhi(phi.parse::<TargetFunction>()?),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Oracle settings for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Run the two-sided oracle check on every solved cell.
    pub verify: bool,
    pub oracle_samples: usize,
    pub inner_factor: f64,
    pub outer_factor: f64,
    /// Allowed `|radius − reference|` when a reference is given.
    pub reference_tolerance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            verify: true,
            oracle_samples: 4096,
            inner_factor: 0.999,
            outer_factor: 1.01,
            reference_tolerance: 5e-4,
        }
    }
}

/// A parameter sweep.
///
/// Columns are either listed explicitly in `columns` or formed as the
/// Cartesian product of `a`, `b` and `c` (in that nesting order).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub a: Vec<f64>,
    #[serde(default)]
    pub b: Vec<f64>,
    #[serde(default)]
    pub c: Vec<f64>,
    #[serde(default)]
    pub columns: Vec<[f64; 3]>,
    pub nu: f64,
    /// Accept the boundary columns `c = 0, a = b` (see [`MercerParams::new_extended`]).
    #[serde(default)]
    pub allow_equal_ab: bool,
    #[serde(default = "all_kinds")]
    pub kinds: Vec<NormalizationKind>,
    pub problem: ProblemSpec,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Expected radii, one row per kind and one entry per column.
    #[serde(default)]
    pub reference: Option<Vec<Vec<f64>>>,
}

fn all_kinds() -> Vec<NormalizationKind> {
    NormalizationKind::ALL.to_vec()
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("bad sweep config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Columns in output order.
    pub fn resolved_columns(&self) -> Vec<[f64; 3]> {
        if !self.columns.is_empty() {
            return self.columns.clone();
        }
        let mut out = Vec::new();
        for &a in &self.a {
            for &b in &self.b {
                for &c in &self.c {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }
}

/// Outcome of one `(kind, column)` cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellResult {
    pub kind: NormalizationKind,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub nu: f64,
    pub status: CellStatus,
    pub radius: Option<f64>,
    pub residual: Option<f64>,
    pub iterations: Option<usize>,
    pub oracle: Option<bool>,
    pub flagged: bool,
    pub alt_residual: Option<f64>,
    pub reference: Option<f64>,
    pub delta: Option<f64>,
    pub message: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellStatus {
    Ok,
    Skipped,
    Failed,
}

impl CellStatus {
    fn label(self) -> &'static str {
        match self {
            CellStatus::Ok => "ok",
            CellStatus::Skipped => "skipped",
            CellStatus::Failed => "failed",
        }
    }
}

impl CellResult {
    /// Solved, oracle-confirmed (if checked) and within the reference tolerance.
    pub fn passes(&self, reference_tolerance: f64) -> bool {
        self.status == CellStatus::Ok
            && self.oracle != Some(false)
            && self.delta.is_none_or(|d| d.abs() <= reference_tolerance)
    }
}

/// All cells of a sweep, in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub name: Option<String>,
    pub problem: ProblemSpec,
    pub cells: Vec<CellResult>,
    #[serde(skip)]
    pub reference_tolerance: f64,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.cells.iter().all(|c| c.passes(self.reference_tolerance))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "kind,a,b,c,nu,status,radius,residual,oracle,reference,delta,message\n",
        );
        let opt = |v: Option<f64>, prec: usize| v.map_or(String::new(), |x| format!("{x:.prec$}"));
        let sci = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x:.3e}"));
        for cell in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                cell.kind,
                cell.a,
                cell.b,
                cell.c,
                cell.nu,
                cell.status.label(),
                opt(cell.radius, 10),
                sci(cell.residual),
                cell.oracle.map_or(String::new(), |o| if o { "pass".into() } else { "fail".into() }),
                opt(cell.reference, 4),
                sci(cell.delta),
                cell.message.as_deref().unwrap_or("").replace(',', ";"),
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// Solve every cell of `config`.
///
/// Inadmissible combinations are reported as skipped; numerical failures as
/// failed. Only an unusable config (empty sweep, bad problem, malformed
/// reference) is an error.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    let columns = config.resolved_columns();
    if columns.is_empty() || config.kinds.is_empty() {
        return Err(Error::InvalidInput("sweep has no columns or no kinds".into()));
    }
    let problem = config.problem.build()?;
    if let Some(reference) = &config.reference {
        if reference.len() != config.kinds.len() || reference.iter().any(|r| r.len() != columns.len())
        {
            return Err(Error::InvalidInput(format!(
                "reference must be {} rows of {} values",
                config.kinds.len(),
                columns.len()
            )));
        }
    }
    let tasks: Vec<(usize, usize)> = (0..config.kinds.len())
        .flat_map(|row| (0..columns.len()).map(move |col| (row, col)))
        .collect();
    let cells = tasks
        .par_iter()
        .map(|&(row, col)| {
            let reference = config.reference.as_ref().map(|r| r[row][col]);
            solve_cell(config, problem, config.kinds[row], columns[col], reference)
        })
        .collect();
    Ok(SweepReport {
        name: config.name.clone(),
        problem: config.problem.clone(),
        cells,
        reference_tolerance: config.tolerances.reference_tolerance,
    })
}

fn solve_cell(
    config: &SweepConfig,
    problem: Problem,
    kind: NormalizationKind,
    [a, b, c]: [f64; 3],
    reference: Option<f64>,
) -> CellResult {
    let mut cell = CellResult {
        kind,
        a,
        b,
        c,
        nu: config.nu,
        status: CellStatus::Ok,
        radius: None,
        residual: None,
        iterations: None,
        oracle: None,
        flagged: false,
        alt_residual: None,
        reference,
        delta: None,
        message: None,
    };
    let params = if config.allow_equal_ab {
        MercerParams::new_extended(a, b, c, config.nu)
    } else {
        MercerParams::new(a, b, c, config.nu)
    };
    let query = match params
        .and_then(|p| RadiusQuery::new(p, kind, problem))
    {
        Ok(q) => q,
        Err(e) => {
            cell.status = CellStatus::Skipped;
            cell.message = Some(e.to_string());
            return cell;
        }
    };
    let tol = &config.tolerances;
    let outcome = solve(&query).and_then(|res| {
        let verdict = if tol.verify {
            Some(verify_radius(
                &query,
                res.radius,
                tol.inner_factor,
                tol.outer_factor,
                tol.oracle_samples,
            )?)
        } else {
            None
        };
        Ok((res, verdict))
    });
    match outcome {
        Ok((res, verdict)) => {
            cell.radius = Some(res.radius);
            cell.residual = Some(res.residual);
            cell.iterations = Some(res.iterations);
            cell.flagged = res.flagged;
            cell.alt_residual = res.alt_residual;
            cell.oracle = verdict.map(|v| v.passed);
            cell.delta = reference.map(|r| res.radius - r);
        }
        Err(e) => {
            cell.status = CellStatus::Failed;
            cell.message = Some(e.to_string());
        }
    }
    cell
}

const TABLE1: [[f64; 9]; 3] = [
    [0.1539, 0.1190, 0.0886, 0.1746, 0.1990, 0.2130, 0.3038, 0.3401, 0.3680],
    [0.2121, 0.1639, 0.1220, 0.2409, 0.2747, 0.2942, 0.4217, 0.4730, 0.5126],
    [0.0817, 0.0486, 0.0268, 0.1056, 0.1377, 0.1582, 0.3309, 0.4193, 0.4953],
];
const TABLE2: [[f64; 9]; 3] = [
    [0.0875, 0.0677, 0.0504, 0.0993, 0.1131, 0.1210, 0.1722, 0.1925, 0.2082],
    [0.1221, 0.0944, 0.0703, 0.1386, 0.1579, 0.1691, 0.2411, 0.2699, 0.2921],
    [0.0406, 0.0242, 0.0134, 0.0524, 0.0682, 0.0783, 0.1622, 0.2046, 0.2408],
];
const TABLE3: [[f64; 9]; 3] = [
    [0.2354, 0.1818, 0.1352, 0.2674, 0.3050, 0.3268, 0.4696, 0.5272, 0.5718],
    [0.3140, 0.2421, 0.1798, 0.3571, 0.4078, 0.4372, 0.6350, 0.7160, 0.7792],
    [0.1611, 0.0953, 0.0523, 0.2090, 0.2736, 0.3150, 0.6845, 0.8819, 1.0559],
];
const TABLE4: [[f64; 9]; 3] = [
    [0.1271, 0.0983, 0.0732, 0.1443, 0.1644, 0.1761, 0.2512, 0.2812, 0.3044],
    [0.1749, 0.1352, 0.1005, 0.1987, 0.2266, 0.2427, 0.3482, 0.3906, 0.4234],
    [0.0759, 0.0451, 0.0248, 0.0983, 0.1283, 0.1474, 0.3124, 0.3979, 0.4719],
];

/// Names accepted by [`table_preset`].
pub const TABLE_PRESETS: [&str; 4] = ["table1", "table2", "table3", "table4"];

/// One of the four reference tables (ν = 1/2, rows f, g, h) with its
/// published four-decimal values as reference. The column (3, 3, 0) is the
/// boundary case `c = 0, a = b`, so the presets enable `allow_equal_ab`.
pub fn table_preset(name: &str) -> Result<SweepConfig> {
    let (title, problem, values) = match name {
        "table1" => (
            "pi/3-spirallike radii of order 1/2",
            ProblemSpec::Spiral { alpha: 0.5, gamma: GAMMA_PI_3 },
            TABLE1,
        ),
        "table2" => (
            "convex pi/3-spirallike radii of order 1/2",
            ProblemSpec::ConvexSpiral { alpha: 0.5, gamma: GAMMA_PI_3 },
            TABLE2,
        ),
        "table3" => (
            "S*(exp) radii",
            ProblemSpec::StarPhi { phi: "exp".into() },
            TABLE3,
        ),
        "table4" => (
            "C(crescent) radii",
            ProblemSpec::ConvexPhi { phi: "crescent".into() },
            TABLE4,
        ),
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown table preset `{other}` (expected one of {})",
                TABLE_PRESETS.join(", ")
            )))
        }
    };
    Ok(SweepConfig {
        name: Some(format!("{name}: {title}")),
        a: Vec::new(),
        b: Vec::new(),
        c: Vec::new(),
        columns: TABLE_COLUMNS.to_vec(),
        nu: 0.5,
        allow_equal_ab: true,
        kinds: all_kinds(),
        problem,
        format: OutputFormat::Csv,
        tolerances: Tolerances::default(),
        reference: Some(values.iter().map(|row| row.to_vec()).collect()),
    })
}

/// Boundary-curve setup behind one of the figures.
#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub name: &'static str,
    pub params: MercerParams,
    pub kind: NormalizationKind,
    pub mode: Mode,
    pub problem: Problem,
    /// The two circle radii shown (inside and outside the class).
    pub radii: [f64; 2],
}

/// Names accepted by [`figure_preset`].
pub const FIGURE_PRESETS: [&str; 3] = ["fig1", "fig2", "fig3"];

/// * `fig1`: `h`, (1,2,0), π/3-spirallike of order 1/2, r ∈ {0.1056, 0.3}.
/// * `fig2`: `g`, (1,2,0), `S*(e^z)`, r ∈ {0.3571, 0.48}.
/// * `fig3`: `f`, (2,3,0), `C(z + √(1+z²))`, r ∈ {0.1271, 0.3}. The radius
///   0.1271 belongs to `f` (for `h` the same column gives 0.0759).
pub fn figure_preset(name: &str) -> Result<FigurePreset> {
    use NormalizationKind::*;
    let p = |a, b, c| MercerParams::new(a, b, c, 0.5).expect("preset parameters are admissible");
    Ok(match name {
        "fig1" => FigurePreset {
            name: "fig1",
            params: p(1.0, 2.0, 0.0),
            kind: H,
            mode: Mode::Star,
            problem: Problem::Spirallike { alpha: 0.5, gamma: GAMMA_PI_3 },
            radii: [0.1056, 0.3],
        },
        "fig2" => FigurePreset {
            name: "fig2",
            params: p(1.0, 2.0, 0.0),
            kind: G,
            mode: Mode::Star,
            problem: Problem::StarPhi(TargetFunction::exp()),
            radii: [0.3571, 0.48],
        },
        "fig3" => FigurePreset {
            name: "fig3",
            params: p(2.0, 3.0, 0.0),
            kind: F,
            mode: Mode::Convex,
            problem: Problem::ConvexPhi(TargetFunction::crescent()),
            radii: [0.1271, 0.3],
        },
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown figure preset `{other}` (expected one of {})",
                FIGURE_PRESETS.join(", ")
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let cfg = table_preset("table3").unwrap();
        let back = SweepConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn minimal_config_parses() {
        let cfg = SweepConfig::from_json(
            r#"{"a": [1], "b": [2, 3], "c": [0], "nu": 0.5,
                "problem": {"type": "star-phi", "phi": "exp"}}"#,
        )
        .unwrap();
        assert_eq!(cfg.resolved_columns(), vec![[1.0, 2.0, 0.0], [1.0, 3.0, 0.0]]);
        assert_eq!(cfg.kinds, NormalizationKind::ALL.to_vec());
        assert_eq!(cfg.format, OutputFormat::Csv);
    }

    #[test]
    fn empty_sweep_is_rejected() {
        let cfg = SweepConfig::from_json(
            r#"{"a": [], "b": [2], "c": [0], "nu": 0.5,
                "problem": {"type": "spiral", "alpha": 0.5, "gamma": 0.3}}"#,
        )
        .unwrap();
        assert!(matches!(run_sweep(&cfg), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn inadmissible_cells_are_skipped() {
        let cfg = SweepConfig::from_json(
            r#"{"columns": [[1, 1, 0], [1, 2, 0]], "nu": 0.5, "kinds": ["g"],
                "problem": {"type": "star-phi", "phi": "exp"},
                "tolerances": {"verify": false}}"#,
        )
        .unwrap();
        let report = run_sweep(&cfg).unwrap();
        assert_eq!(report.cells[0].status, CellStatus::Skipped);
        assert_eq!(report.cells[1].status, CellStatus::Ok);
        assert!((report.cells[1].radius.unwrap() - 0.3571).abs() < 5e-4);
    }

    #[test]
    fn presets_exist() {
        for name in TABLE_PRESETS {
            let cfg = table_preset(name).unwrap();
            assert_eq!(cfg.resolved_columns().len(), 9);
        }
        for name in FIGURE_PRESETS {
            figure_preset(name).unwrap();
        }
        assert!(table_preset("table5").is_err());
    }
}
