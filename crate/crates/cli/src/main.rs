//! `qmeas` — error tradeoffs for approximate joint qubit measurements.
//!
//! Machine-readable output only: JSON or CSV on stdout (or `--out`),
//! diagnostics on stderr. Exit codes: 0 success (for `compat`: compatible),
//! 1 negative verdict (incompatible / failed report / no convergence),
//! 2 usage or parse errors.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qmeas::bloch::BlochVector;
use qmeas::bounds::{
    branciard_family, branciard_lhs, branciard_metric_errors, branciard_noise_errors,
    region_min_margin, yu_oh_optimal_vectors, yu_oh_point, yu_oh_point_branch,
};
use qmeas::compat::{compat_boundary_residual, compat_violation, joint_observable};
use qmeas::measures::{
    local_uniform_error, metric_error_general, noise_general, noise_symmetric,
};
use qmeas::operator::DensityOperator;
use qmeas::optimize::{
    alternate_minimize, sample_admissible_region, targets_at_angle, OptimizerConfig,
};
use qmeas::povm::Sign;
use qmeas::serial::{parse_state, PovmSpec};
use qmeas::Measure;

#[derive(Parser)]
#[command(name = "qmeas", version, about = "Error tradeoffs for approximate joint qubit measurements")]
struct Cli {
    /// Write primary output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format; each subcommand has a native one (csv or json).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    Metric,
    Noise,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Measure {
        match m {
            MeasureArg::Metric => Measure::MetricD,
            MeasureArg::Noise => Measure::NoiseEps,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ErrorKind {
    Metric,
    Noise,
    NoiseBar,
}

#[derive(Subcommand)]
enum Command {
    /// Joint-measurability verdict for two unbiased dichotomic observables.
    Compat {
        /// First observable: inline JSON or a path to a JSON file.
        #[arg(long)]
        povm_c: String,
        /// Second observable: inline JSON or a path to a JSON file.
        #[arg(long)]
        povm_d: String,
    },
    /// Error of an approximating observable against a target.
    Error {
        #[arg(long, value_enum)]
        measure: ErrorKind,
        /// Target observable (sharp for noise measures).
        #[arg(long)]
        target: String,
        /// Approximating observable.
        #[arg(long)]
        approx: String,
        /// State as `[x, y, z]`; defaults to the maximally mixed state.
        #[arg(long)]
        state: Option<String>,
    },
    /// Lower boundary curve of the admissible error region as CSV.
    Bound {
        #[arg(long, value_enum)]
        measure: MeasureArg,
        /// Angle between the targets, in radians within [0, pi/2].
        #[arg(long)]
        theta: f64,
        /// Number of parameter samples along the curve.
        #[arg(long, default_value_t = 201)]
        grid: usize,
    },
    /// Random admissible error pairs against targets at angle theta, as CSV.
    Region {
        #[arg(long, value_enum)]
        measure: MeasureArg,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        samples: usize,
    },
    /// Alternating conditional minimization of the chosen error measure.
    Optimize {
        #[arg(long, value_enum)]
        measure: MeasureArg,
        #[arg(long)]
        theta: f64,
        /// Starting direction as `[x, y, z]`; defaults to half the first target.
        #[arg(long)]
        c0: Option<String>,
        #[arg(long, default_value_t = 200_000)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-10)]
        conv_tol: f64,
        /// Include the full iteration trace in the output.
        #[arg(long)]
        trace: bool,
    },
    /// Emit the data behind a figure or a counterexample report.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ReproduceTarget {
    /// Figure id: 1 (extremum branches), 2 (unsharpness tradeoff),
    /// 4 (lambda family), 5 (metric-error comparison), 6 (noise cross-evaluation).
    #[arg(long, value_parser = ["1", "2", "4", "5", "6"])]
    figure: Option<String>,
    /// Counterexample id.
    #[arg(long, value_parser = ["three-outcome", "biased", "n-outcome", "ebar"])]
    example: Option<String>,
}

#[derive(Args)]
struct ReproduceArgs {
    #[command(flatten)]
    target: ReproduceTarget,
    /// Angle between the targets for figure 1.
    #[arg(long, default_value_t = FRAC_PI_3)]
    theta: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let sink = Sink::new(cli.out.as_deref());
    match cli.command {
        Command::Compat { povm_c, povm_d } => {
            require_format(cli.format, Format::Json)?;
            cmd_compat(&povm_c, &povm_d, sink)
        }
        Command::Error { measure, target, approx, state } => {
            require_format(cli.format, Format::Json)?;
            cmd_error(measure, &target, &approx, state.as_deref(), sink)
        }
        Command::Bound { measure, theta, grid } => {
            require_format(cli.format, Format::Csv)?;
            cmd_bound(measure.into(), theta, grid, sink)
        }
        Command::Region { measure, theta, samples } => {
            require_format(cli.format, Format::Csv)?;
            cmd_region(measure.into(), theta, samples, cli.seed, sink)
        }
        Command::Optimize { measure, theta, c0, max_iter, conv_tol, trace } => {
            require_format(cli.format, Format::Json)?;
            cmd_optimize(measure.into(), theta, c0.as_deref(), max_iter, conv_tol, trace, sink)
        }
        Command::Reproduce(args) => cmd_reproduce(args, cli.format, sink),
    }
}

fn require_format(requested: Option<Format>, native: Format) -> Result<(), String> {
    match requested {
        None => Ok(()),
        Some(f) if f == native => Ok(()),
        Some(_) => Err("this subcommand has a fixed output format".into()),
    }
}

/// Output destination for the primary payload.
struct Sink<'a> {
    path: Option<&'a std::path::Path>,
}

impl<'a> Sink<'a> {
    fn new(path: Option<&'a std::path::Path>) -> Self {
        Sink { path }
    }

    fn write(&self, payload: &str) -> Result<(), String> {
        match self.path {
            Some(p) => std::fs::write(p, payload).map_err(|e| format!("writing {}: {e}", p.display())),
            None => {
                std::io::stdout()
                    .write_all(payload.as_bytes())
                    .map_err(|e| e.to_string())
            }
        }
    }
}

/// 17 significant digits: round-trip exact for f64 and byte-stable.
fn num(x: f64) -> String {
    format!("{:.16e}", x)
}

fn parse_povm_arg(arg: &str) -> Result<PovmSpec, String> {
    if let Ok(spec) = PovmSpec::parse(arg) {
        return Ok(spec);
    }
    let text = std::fs::read_to_string(arg)
        .map_err(|e| format!("`{arg}` is neither inline POVM JSON nor a readable file: {e}"))?;
    PovmSpec::parse(&text).map_err(|e| format!("parsing {arg}: {e}"))
}

fn parse_state_arg(arg: Option<&str>) -> Result<DensityOperator, String> {
    match arg {
        None => Ok(DensityOperator::maximally_mixed()),
        Some(text) => parse_state(text).map_err(|e| e.to_string()),
    }
}

fn symmetric_direction(spec: &PovmSpec, what: &str) -> Result<BlochVector, String> {
    let povm = spec.to_dichotomic().map_err(|e| format!("{what}: {e}"))?;
    if povm.gamma().abs() > 1e-12 {
        return Err(format!("{what}: compatibility test expects an unbiased observable"));
    }
    Ok(povm.direction())
}

fn cmd_compat(povm_c: &str, povm_d: &str, sink: Sink) -> Result<ExitCode, String> {
    let c = symmetric_direction(&parse_povm_arg(povm_c)?, "povm-c")?;
    let d = symmetric_direction(&parse_povm_arg(povm_d)?, "povm-d")?;
    let verdict = qmeas::compat::compatible(&c, &d);
    let joint = if verdict {
        let j = joint_observable(&c, &d).map_err(|e| e.to_string())?;
        let eff = |k, l| {
            let e = j.effect(k, l);
            json!({"alpha": e.alpha(), "vec": e.vec()})
        };
        json!({
            "m": j.mixing(),
            "effects": {
                "++": eff(Sign::Plus, Sign::Plus),
                "+-": eff(Sign::Plus, Sign::Minus),
                "-+": eff(Sign::Minus, Sign::Plus),
                "--": eff(Sign::Minus, Sign::Minus),
            },
        })
    } else {
        serde_json::Value::Null
    };
    let payload = json!({
        "compatible": verdict,
        "boundary_residual": compat_boundary_residual(&c, &d),
        "violation": compat_violation(&c, &d).max(0.0),
        "joint": joint,
    });
    sink.write(&format!("{payload}\n"))?;
    Ok(if verdict { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_error(
    kind: ErrorKind,
    target: &str,
    approx: &str,
    state: Option<&str>,
    sink: Sink,
) -> Result<ExitCode, String> {
    let target_spec = parse_povm_arg(target)?;
    let approx_spec = parse_povm_arg(approx)?;
    let state = parse_state_arg(state)?;
    let value = match kind {
        ErrorKind::Metric => {
            let a = target_spec.to_discrete().map_err(|e| e.to_string())?;
            let c = approx_spec.to_discrete().map_err(|e| e.to_string())?;
            metric_error_general(&a, &c).map_err(|e| e.to_string())?
        }
        ErrorKind::Noise => {
            let a = target_spec.to_discrete().map_err(|e| e.to_string())?;
            let c = approx_spec.to_discrete().map_err(|e| e.to_string())?;
            noise_general(&a, &c, &state)
        }
        ErrorKind::NoiseBar => {
            let a = target_spec.to_dichotomic().map_err(|e| e.to_string())?;
            if a.gamma().abs() > 1e-12 || !a.direction().is_unit(1e-9) {
                return Err("noise-bar expects a sharp unbiased target".into());
            }
            let c = approx_spec.to_dichotomic().map_err(|e| e.to_string())?;
            local_uniform_error(&a.direction(), &c, &state)
        }
    };
    let label = match kind {
        ErrorKind::Metric => "metric",
        ErrorKind::Noise => "noise",
        ErrorKind::NoiseBar => "noise-bar",
    };
    let payload = json!({"measure": label, "value": value, "value_sq": value * value});
    sink.write(&format!("{payload}\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn check_theta(theta: f64) -> Result<f64, String> {
    if !theta.is_finite() || !(0.0..=FRAC_PI_2 + 1e-12).contains(&theta) {
        return Err("theta must lie in [0, pi/2]".into());
    }
    Ok(theta.min(FRAC_PI_2))
}

fn cmd_bound(measure: Measure, theta: f64, grid: usize, sink: Sink) -> Result<ExitCode, String> {
    let theta = check_theta(theta)?;
    if grid < 2 {
        return Err("grid must be at least 2".into());
    }
    let mut out = String::new();
    match measure {
        Measure::MetricD => {
            out.push_str("theta,phi,M2,d_a,d_b,u_c,u_d\n");
            for i in 0..grid {
                let phi = FRAC_PI_2 * i as f64 / (grid - 1) as f64;
                let p = yu_oh_point(theta, phi).map_err(|e| e.to_string())?;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    num(theta),
                    num(phi),
                    num(p.m * p.m),
                    num(p.d_a),
                    num(p.d_b),
                    num(p.u_c),
                    num(p.u_d)
                );
            }
        }
        Measure::NoiseEps => {
            out.push_str("theta,phi,eps_a,eps_b,lhs,rhs\n");
            for i in 0..grid {
                let offset = theta * i as f64 / (grid - 1) as f64;
                let (ea, eb) = branciard_noise_errors(theta, offset).map_err(|e| e.to_string())?;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    num(theta),
                    num(offset),
                    num(ea),
                    num(eb),
                    num(branciard_lhs(ea, eb, theta)),
                    num(theta.sin().powi(2))
                );
            }
        }
    }
    sink.write(&out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_region(
    measure: Measure,
    theta: f64,
    samples: usize,
    seed: u64,
    sink: Sink,
) -> Result<ExitCode, String> {
    let theta = check_theta(theta)?;
    if samples == 0 {
        return Err("samples must be at least 1".into());
    }
    let cfg = OptimizerConfig { seed, ..Default::default() };
    let points = sample_admissible_region(measure, theta, samples, &cfg).map_err(|e| e.to_string())?;
    let mut out = String::with_capacity(points.len() * 64);
    out.push_str("seed,theta,measure,e_a,e_b\n");
    for p in &points {
        let _ = writeln!(
            out,
            "{seed},{},{},{},{}",
            num(theta),
            p.measure.label(),
            num(p.e_a),
            num(p.e_b)
        );
    }
    let margin = region_min_margin(measure, theta, &points).map_err(|e| e.to_string())?;
    eprintln!("min boundary margin over {samples} samples: {margin:.6e}");
    sink.write(&out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_optimize(
    measure: Measure,
    theta: f64,
    c0: Option<&str>,
    max_iter: usize,
    conv_tol: f64,
    trace: bool,
    sink: Sink,
) -> Result<ExitCode, String> {
    let theta = check_theta(theta)?;
    let (a, b) = targets_at_angle(theta);
    let c0 = match c0 {
        Some(text) => serde_json::from_str::<BlochVector>(text).map_err(|e| e.to_string())?,
        None => a * 0.5,
    };
    let cfg = OptimizerConfig { max_iter, conv_tol, ..Default::default() };
    match alternate_minimize(measure, &a, &b, &c0, &cfg) {
        Ok(result) => {
            let (c, d) = result.last_pair();
            let errors = match measure {
                Measure::MetricD => ((a - c).norm(), (b - d).norm()),
                Measure::NoiseEps => (noise_symmetric(&a, &c), noise_symmetric(&b, &d)),
            };
            let mut payload = json!({
                "converged": result.converged,
                "iterations": result.iterations(),
                "limit": result.limit,
                "final_pair": {"c": c, "d": d},
                "errors": [errors.0, errors.1],
            });
            if trace {
                payload["trace"] = serde_json::to_value(&result.steps).map_err(|e| e.to_string())?;
            }
            sink.write(&format!("{payload}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Err(e @ qmeas::Error::NoConvergence { .. }) => {
            eprintln!("error: {e}");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.to_string()),
    }
}

const THETA_PANEL: [f64; 6] = [PI / 12.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, PI * 5.0 / 12.0, FRAC_PI_2];

fn cmd_reproduce(args: ReproduceArgs, format: Option<Format>, sink: Sink) -> Result<ExitCode, String> {
    if let Some(figure) = args.target.figure.as_deref() {
        require_format(format, Format::Csv)?;
        let out = match figure {
            "1" => figure_branches(check_theta(args.theta)?),
            "2" => figure_unsharpness_tradeoff(),
            "4" => figure_lambda_family(),
            "5" => figure_metric_comparison(),
            "6" => figure_noise_cross_evaluation(),
            _ => unreachable!("clap restricts the figure ids"),
        }?;
        sink.write(&out)?;
        return Ok(ExitCode::SUCCESS);
    }
    require_format(format, Format::Json)?;
    let example = args.target.example.as_deref().expect("clap enforces one target");
    let report = match example {
        "three-outcome" => qmeas::counterexamples::run_three_outcome_example(),
        "biased" => qmeas::counterexamples::run_biased_zero_noise(),
        "n-outcome" => qmeas::counterexamples::run_n_outcome_commuting(),
        "ebar" => qmeas::counterexamples::run_ebar_discontinuity(),
        _ => unreachable!("clap restricts the example ids"),
    };
    let passed = report.passed();
    let payload = serde_json::to_string(&report).map_err(|e| e.to_string())?;
    sink.write(&format!("{payload}\n"))?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// All four extremum branches of the metric boundary at one angle.
fn figure_branches(theta: f64) -> Result<String, String> {
    let mut out = String::from("theta,phi,mu,nu,d_a,d_b\n");
    for (mu, nu) in [
        (Sign::Plus, Sign::Plus),
        (Sign::Minus, Sign::Minus),
        (Sign::Plus, Sign::Minus),
        (Sign::Minus, Sign::Plus),
    ] {
        for i in 0..=200 {
            let phi = FRAC_PI_2 * i as f64 / 200.0;
            let p = yu_oh_point_branch(theta, phi, mu, nu).map_err(|e| e.to_string())?;
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                num(theta),
                num(phi),
                mu.value() as i8,
                nu.value() as i8,
                num(p.d_a),
                num(p.d_b)
            );
        }
    }
    Ok(out)
}

/// The unsharpness pairs (U(C), U(D)) along the optimal boundary, per angle.
fn figure_unsharpness_tradeoff() -> Result<String, String> {
    let mut out = String::from("theta,phi,M2,u_c,u_d\n");
    for theta in THETA_PANEL {
        for i in 0..=200 {
            let phi = FRAC_PI_2 * i as f64 / 200.0;
            let p = yu_oh_point(theta, phi).map_err(|e| e.to_string())?;
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                num(theta),
                num(phi),
                num(p.m * p.m),
                num(p.u_c),
                num(p.u_d)
            );
        }
    }
    Ok(out)
}

/// The λ-family of noise-optimal pairs for orthogonal targets.
fn figure_lambda_family() -> Result<String, String> {
    let (a, b) = targets_at_angle(FRAC_PI_2);
    let beta = FRAC_PI_3;
    let m = a * beta.cos() + b * beta.sin();
    let mut out = String::from("lambda,c_x,c_y,c_z,d_x,d_y,d_z,eps_a,eps_b,boundary_residual\n");
    for i in 0..=100 {
        let lambda = i as f64 / 100.0;
        let (c, d) = branciard_family(&a, &b, &m, lambda).map_err(|e| e.to_string())?;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            num(lambda),
            num(c.x),
            num(c.y),
            num(c.z),
            num(d.x),
            num(d.y),
            num(d.z),
            num(noise_symmetric(&a, &c)),
            num(noise_symmetric(&b, &d)),
            num(compat_boundary_residual(&c, &d))
        );
    }
    Ok(out)
}

/// Metric errors of the sharp noise-optimal scheme against the optimal
/// boundary, per angle.
fn figure_metric_comparison() -> Result<String, String> {
    let mut out = String::from("theta,scheme,param,e_a,e_b\n");
    for theta in THETA_PANEL {
        for i in 0..=200 {
            let offset = theta * i as f64 / 200.0;
            let (ea, eb) = branciard_metric_errors(theta, offset).map_err(|e| e.to_string())?;
            let _ = writeln!(out, "{},sharp,{},{},{}", num(theta), num(offset), num(ea), num(eb));
        }
        for i in 0..=200 {
            let phi = FRAC_PI_2 * i as f64 / 200.0;
            let p = yu_oh_point(theta, phi).map_err(|e| e.to_string())?;
            let _ = writeln!(out, "{},optimal,{},{},{}", num(theta), num(phi), num(p.d_a), num(p.d_b));
        }
    }
    Ok(out)
}

/// The noise bound evaluated on the metric-optimal approximators, per angle.
fn figure_noise_cross_evaluation() -> Result<String, String> {
    let mut out = String::from("theta,phi,eps_a,eps_b,lhs,rhs\n");
    for theta in THETA_PANEL {
        let (a, b) = targets_at_angle(theta);
        for i in 0..=200 {
            let phi = FRAC_PI_2 * i as f64 / 200.0;
            let (c, d) = yu_oh_optimal_vectors(&a, &b, phi).map_err(|e| e.to_string())?;
            let ea = noise_symmetric(&a, &c);
            let eb = noise_symmetric(&b, &d);
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                num(theta),
                num(phi),
                num(ea),
                num(eb),
                num(branciard_lhs(ea, eb, theta)),
                num(theta.sin().powi(2))
            );
        }
    }
    Ok(out)
}
