use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mercer_radii::error::{Error, Result};
use mercer_radii::mercer::{n_values, MercerParams, NormalizationKind};
use mercer_radii::oracle::{
    scan_convex_spirallike, scan_phi_membership, scan_spirallike, solve_verified, verify_radius,
    BoundaryScan, INNER_FACTOR, OUTER_FACTOR,
};
use mercer_radii::radii::{solve, Problem, RadiusQuery};
use mercer_radii::tables::{
    figure_preset, run_sweep, table_preset, CellStatus, OutputFormat, SweepConfig, TABLE_PRESETS,
};
use mercer_radii::targets::{beta_oracle, TargetFunction};
use mercer_radii::zeros::{check_interlacing, find_zeros, find_zeros_with, ZeroKind, ZeroOptions};
use num_complex::Complex64;

#[derive(Parser)]
#[command(name = "mercer-radii", version, about = "Radii of spirallikeness and Ma-Minda classes for normalized Mercer functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one radius problem and check it with the boundary oracle.
    Radius(RadiusArgs),
    /// Run a parameter sweep from a preset or a JSON config.
    Table(TableArgs),
    /// Export the boundary curve of a figure preset as CSV.
    Curve(CurveArgs),
    /// Dump positive zeros as CSV.
    Zeros(ZerosArgs),
    /// Run the built-in consistency checks.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, allow_hyphen_values = true)]
    c: f64,
    #[arg(long)]
    nu: f64,
    /// Accept the boundary case c = 0, a = b.
    #[arg(long)]
    allow_equal_ab: bool,
}

impl ParamArgs {
    fn build(&self) -> Result<MercerParams> {
        if self.allow_equal_ab {
            MercerParams::new_extended(self.a, self.b, self.c, self.nu)
        } else {
            MercerParams::new(self.a, self.b, self.c, self.nu)
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemKind {
    Spiral,
    ConvexSpiral,
    StarPhi,
    ConvexPhi,
}

#[derive(Args)]
struct RadiusArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Normalization: f, g or h.
    #[arg(long)]
    kind: String,
    #[arg(long, value_enum)]
    problem: ProblemKind,
    /// Order, for spiral problems.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    /// Spiral angle in radians, for spiral problems.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    gamma: f64,
    /// Target function, for star-phi and convex-phi (e.g. exp, crescent, janowski:1:-1, conic:0.5).
    #[arg(long)]
    phi: Option<String>,
    /// Boundary samples for the oracle check.
    #[arg(long, default_value_t = 4096)]
    samples: usize,
}

#[derive(Args)]
struct TableArgs {
    /// Built-in table: table1, table2, table3 or table4.
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<String>,
    /// JSON sweep config.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override the output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Skip the oracle check on each cell.
    #[arg(long)]
    no_verify: bool,
    /// Write to a file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CurveArgs {
    /// Figure preset: fig1, fig2 or fig3.
    #[arg(long)]
    preset: String,
    /// Circle radius.
    #[arg(long)]
    r: f64,
    #[arg(long, default_value_t = 4096)]
    samples: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ZerosArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Zero table: n, nprime, gprime or hprime.
    #[arg(long, default_value = "n")]
    which: String,
    #[arg(long, default_value_t = 1e-12)]
    accuracy: f64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Fewer draws and no per-cell oracle on the tables.
    #[arg(long)]
    quick: bool,
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_radius(args: &RadiusArgs) -> Result<ExitCode> {
    let params = args.params.build()?;
    let kind: NormalizationKind = args.kind.parse()?;
    let phi = || -> Result<TargetFunction> {
        args.phi
            .as_deref()
            .ok_or_else(|| Error::InvalidInput("--phi is required for star-phi and convex-phi".into()))?
            .parse()
    };
    let problem = match args.problem {
        ProblemKind::Spiral => Problem::Spirallike { alpha: args.alpha, gamma: args.gamma },
        ProblemKind::ConvexSpiral => Problem::ConvexSpirallike { alpha: args.alpha, gamma: args.gamma },
        ProblemKind::StarPhi => Problem::StarPhi(phi()?),
        ProblemKind::ConvexPhi => Problem::ConvexPhi(phi()?),
    };
    let q = RadiusQuery::new(params, kind, problem)?;
    let (res, verdict) = solve_verified(&q, args.samples)?;
    println!(
        "radius {:.10} bracket [{:.12}, {:.12}] residual {:.3e} oracle {}",
        res.radius,
        res.bracket.0,
        res.bracket.1,
        res.residual,
        if verdict.passed { "pass" } else { "fail" }
    );
    if res.flagged {
        eprintln!("warning: the bracket is close to the pole of the expression");
    }
    if let Some(alt) = res.alt_residual {
        eprintln!("note: residual of the alternative constant form {alt:.3e}");
    }
    Ok(if verdict.passed { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn cmd_table(args: &TableArgs) -> Result<ExitCode> {
    let mut config = match (&args.preset, &args.config) {
        (Some(name), _) => table_preset(name)?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            SweepConfig::from_json(&text)?
        }
        (None, None) => unreachable!("clap requires one of --preset and --config"),
    };
    if let Some(f) = args.format {
        config.format = match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        };
    }
    if args.no_verify {
        config.tolerances.verify = false;
    }
    let report = run_sweep(&config)?;
    emit(&report.render(config.format), args.output.as_ref())?;
    let tol = config.tolerances.reference_tolerance;
    let bad = report
        .cells
        .iter()
        .filter(|c| c.status != CellStatus::Skipped && !c.passes(tol))
        .count();
    if bad > 0 {
        eprintln!("{bad} of {} cells failed", report.cells.len());
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_curve(args: &CurveArgs) -> Result<ExitCode> {
    let fig = figure_preset(&args.preset)?;
    let scan: BoundaryScan = match fig.problem {
        Problem::Spirallike { alpha, gamma } => {
            scan_spirallike(&fig.params, fig.kind, args.r, alpha, gamma, args.samples)?
        }
        Problem::ConvexSpirallike { alpha, gamma } => {
            scan_convex_spirallike(&fig.params, fig.kind, args.r, alpha, gamma, args.samples)?
        }
        Problem::StarPhi(phi) | Problem::ConvexPhi(phi) => {
            scan_phi_membership(&fig.params, fig.kind, args.r, &phi, fig.mode, args.samples)?
        }
    };
    emit(&scan.to_csv(), args.output.as_ref())?;
    eprintln!(
        "{} r = {}: margin {:.6e}, {}",
        fig.name,
        args.r,
        scan.min_margin,
        if scan.is_member() { "inside the class" } else { "outside the class" }
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_zeros(args: &ZerosArgs) -> Result<ExitCode> {
    let params = args.params.build()?;
    let which: ZeroKind = args.which.parse()?;
    let options = ZeroOptions::for_count(args.count, params.nu()).with_accuracy(args.accuracy);
    let table = find_zeros_with(&params, which, args.count, &options)?;
    emit(&table.to_csv(), args.output.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check_interlacing_grid(quick: bool) -> Result<Check> {
    let mut draws = vec![(1.0, 2.0, 0.0, 0.5), (1.0, 3.0, 0.0, 2.0), (0.0, 1.0, 0.0, 1.0), (1.0, 2.0, 4.0, 0.5)];
    if !quick {
        draws.extend([(-1.0, 1.5, 0.0, 3.0), (2.0, 0.5, 0.0, 3.0), (-2.0, -1.0, 2.0, 1.7), (0.5, 2.5, 1.0, 4.5)]);
    }
    let mut ok = 0;
    for &(a, b, c, nu) in &draws {
        let p = MercerParams::new(a, b, c, nu)?;
        let n = find_zeros(&p, ZeroKind::N, 10, 1e-10)?;
        let d = find_zeros(&p, ZeroKind::NPrime, 10, 1e-10)?;
        if check_interlacing(&n, &d) {
            ok += 1;
        }
    }
    Ok(Check {
        name: "interlacing",
        pass: ok == draws.len(),
        detail: format!("{ok}/{} parameter sets", draws.len()),
    })
}

fn check_closed_form() -> Result<Check> {
    let (a, b, c) = (1.0, 2.0, 0.0);
    let p = MercerParams::new(a, b, c, 0.5)?;
    let mut worst: f64 = 0.0;
    for k in 1..=100 {
        let x = 0.1 * k as f64;
        let series = n_values(&p, Complex64::new(x, 0.0), 1e-16)?.value.re;
        let closed = (4.0 * (b - a) * x * x.cos() + (a * (3.0 - 4.0 * x * x) - 2.0 * b + 4.0 * c) * x.sin())
            / (2.0 * (2.0 * PI).sqrt() * x.sqrt());
        worst = worst.max((series - closed).abs());
    }
    Ok(Check {
        name: "closed form at order 1/2",
        pass: worst < 1e-10,
        detail: format!("max deviation {worst:.2e}"),
    })
}

fn check_reduction() -> Result<Check> {
    let p = MercerParams::new(1.0, 2.0, 0.0, 0.5)?;
    let mut worst: f64 = 0.0;
    for kind in NormalizationKind::ALL {
        for alpha in [0.0, 0.5] {
            let spiral = solve(&RadiusQuery::new(p, kind, Problem::Spirallike { alpha, gamma: 0.0 })?)?;
            let phi = TargetFunction::janowski(1.0 - 2.0 * alpha, -1.0)?;
            let star = solve(&RadiusQuery::new(p, kind, Problem::StarPhi(phi))?)?;
            worst = worst.max((spiral.radius - star.radius).abs());
        }
    }
    Ok(Check {
        name: "spirallike vs Janowski reduction",
        pass: worst < 1e-7,
        detail: format!("max difference {worst:.2e}"),
    })
}

fn check_betas() -> Result<Check> {
    let mut worst: f64 = 0.0;
    let catalog = TargetFunction::catalog();
    for phi in &catalog {
        worst = worst.max((beta_oracle(phi, 4096)? - phi.beta()).abs());
    }
    Ok(Check {
        name: "target disk radii",
        pass: worst < 1e-5,
        detail: format!("{} targets, max deviation {worst:.2e}", catalog.len()),
    })
}

fn check_tables(quick: bool) -> Result<Vec<Check>> {
    TABLE_PRESETS
        .iter()
        .map(|&name| {
            let mut config = table_preset(name)?;
            config.tolerances.verify = !quick;
            let report = run_sweep(&config)?;
            let worst = report
                .cells
                .iter()
                .map(|c| c.delta.map_or(f64::INFINITY, f64::abs))
                .fold(0.0, f64::max);
            Ok(Check {
                name,
                pass: report.all_pass(),
                detail: format!("max deviation from reference {worst:.2e}"),
            })
        })
        .collect()
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let mut checks = vec![
        check_interlacing_grid(args.quick)?,
        check_closed_form()?,
        check_reduction()?,
        check_betas()?,
    ];
    checks.extend(check_tables(args.quick)?);
    if !args.quick {
        // one spot check of the oracle factors on a hard cell
        let p = MercerParams::new(1.0, 2.0, 0.0, 0.5)?;
        let q = RadiusQuery::new(p, NormalizationKind::F, Problem::ConvexSpirallike { alpha: 0.5, gamma: PI / 3.0 })?;
        let r = solve(&q)?.radius;
        let v = verify_radius(&q, r, INNER_FACTOR, OUTER_FACTOR, 4096)?;
        checks.push(Check {
            name: "two-sided oracle",
            pass: v.passed,
            detail: format!("margins {:.2e} / {:.2e}", v.inner_margin, v.outer_margin),
        });
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    for c in &checks {
        println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Radius(a) => cmd_radius(a),
        Command::Table(a) => cmd_table(a),
        Command::Curve(a) => cmd_curve(a),
        Command::Zeros(a) => cmd_zeros(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
