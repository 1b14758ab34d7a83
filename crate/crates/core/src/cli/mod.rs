//! Command-line surface. [`run`] parses argv, runs one subcommand and prints
//! an [`OutputRecord`] to stdout. Exit codes: 0 success, 2 usage, 3 numeric failure.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::asymptotics::{self, AsymptoticError, Expansion};
use crate::domain::{ParamError, Params};
use crate::evaluator::{self, EvalError};
use crate::quad::QuadConfig;
use crate::tauberian::{self, TauberianCase, TauberianError};
use crate::verification::{self, VerifyError};

pub mod record;

pub use record::{Field, OutputRecord, Row};
use record::row;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Sector1,
    Sector2,
    RealAxis,
    LowerRay,
}

#[derive(Debug, Parser)]
#[command(name = "fourier-laplace", version, about = "Fourier-Laplace transforms of t^beta exp(i t^alpha)")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Omit the tool/version header so output is byte-comparable across builds.
    #[arg(long, global = true)]
    no_header: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    /// RE or RE,IM
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, default_value = "0")]
    beta: Complex64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate F at one point.
    Eval {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print expansion coefficients.
    Expand {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        #[arg(long)]
        terms: usize,
    },
    /// Oracle against truncated expansion along a ray.
    Compare {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, value_parser = parse_list)]
        radii: RealList,
        #[arg(long)]
        terms: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Scan |F| along the hourglass edge and the real axis.
    Bounds {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: f64,
        #[arg(long, value_parser = parse_list)]
        xs: RealList,
    },
    /// Remainder of the extremal Tauberian example.
    DemoTauberian {
        #[arg(long)]
        kappa: f64,
        #[arg(long)]
        smoothed: bool,
        #[arg(long, value_parser = parse_list)]
        xs: RealList,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Mellin transform of S against its closed form.
    DemoMueger {
        #[arg(long)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        s: Complex64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Debug, Clone)]
struct RealList(Vec<f64>);

/// `RE` or `RE,IM`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("not a number: {t:?}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected RE or RE,IM, got {s:?}")),
    }
}

fn parse_list(s: &str) -> Result<RealList, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("not a number: {t:?}")))
        .collect::<Result<Vec<_>, _>>()
        .map(RealList)
}

/// Failure classes that map onto exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<ParamError> for Failure {
    fn from(e: ParamError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::Numeric(e.to_string())
    }
}

impl From<AsymptoticError> for Failure {
    fn from(e: AsymptoticError) -> Self {
        match e {
            AsymptoticError::ThetaOutsideSector { .. } | AsymptoticError::TooFewTerms { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Asymptotic(a) => a.into(),
            other => Failure::Numeric(other.to_string()),
        }
    }
}

impl From<TauberianError> for Failure {
    fn from(e: TauberianError) -> Self {
        match e {
            TauberianError::BadKappa(_)
            | TauberianError::BelowStart { .. }
            | TauberianError::BadMellinArgument(_)
            | TauberianError::Param(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

fn params_of(a: &ParamArgs) -> Result<Params, Failure> {
    Ok(Params::new(a.alpha, a.beta)?)
}

fn param_row(a: &ParamArgs) -> Row {
    row([("alpha", a.alpha.into()), ("beta", a.beta.into())])
}

fn check_positive(name: &str, x: f64) -> Result<(), Failure> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--{name} must be positive, got {x}")))
    }
}

fn check_increasing(name: &str, xs: &[f64]) -> Result<(), Failure> {
    if xs.is_empty() || xs.iter().any(|x| !(*x > 0.0) || !x.is_finite()) || xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Failure::Usage(format!("--{name} must be positive and increasing")));
    }
    Ok(())
}

fn list_field(xs: &[f64]) -> Field {
    Field::text(xs.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(","))
}

fn opt_real(x: Option<f64>) -> Field {
    x.map(Field::real).unwrap_or_else(|| Field::text("none"))
}

fn cmd_eval(p: &ParamArgs, z: Complex64, tol: Option<f64>, out: &mut OutputRecord) -> Result<(), Failure> {
    let params = params_of(p)?;
    let mut cfg = QuadConfig::default();
    if let Some(t) = tol {
        check_positive("tol", t)?;
        cfg = cfg.with_abs_tol(t);
    }
    out.params.append(&mut param_row(p));
    out.params.insert("z".into(), z.into());
    out.params.insert("tol".into(), cfg.abs_tol.into());
    let (rep, ln_env) = evaluator::choose_representation(&params, z);
    let v = evaluator::evaluate_cfg(&params, z, &cfg)?;
    let tag = serde_json::to_value(rep.tag).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
    out.rows.push(row([
        ("value", v.value.into()),
        ("abs_err", v.abs_err.into()),
        ("n_evals", (v.n_evals as i64).into()),
        ("representation", Field::Text(tag)),
        ("ln_envelope", ln_env.into()),
    ]));
    Ok(())
}

fn case_name(e: &Expansion) -> &'static str {
    match e.case_tag {
        asymptotics::CaseTag::Sector1 => "sector1",
        asymptotics::CaseTag::Sector2 => "sector2",
        asymptotics::CaseTag::RayPosReal => "real_axis",
        asymptotics::CaseTag::RayLower => "lower_ray",
    }
}

fn cmd_expand(
    case: CaseArg,
    p: &ParamArgs,
    theta: Option<f64>,
    terms: usize,
    out: &mut OutputRecord,
) -> Result<(), Failure> {
    let params = params_of(p)?;
    if terms == 0 {
        return Err(Failure::Usage("--terms must be at least 1".into()));
    }
    out.params.append(&mut param_row(p));
    out.params.insert("terms".into(), terms.into());
    let need_theta = || theta.ok_or_else(|| Failure::Usage("--theta is required for this case".into()));
    let e = match case {
        CaseArg::Sector1 => asymptotics::case1_terms(&params, need_theta()?, terms)?,
        CaseArg::Sector2 => asymptotics::case2_terms(&params, need_theta()?, terms)?,
        CaseArg::RealAxis => asymptotics::real_axis_terms(&params, terms)?,
        CaseArg::LowerRay => asymptotics::lower_ray_terms(&params, terms)?,
    };
    out.params.insert("case".into(), case_name(&e).into());
    out.params.insert("theta".into(), e.theta.into());
    if e.near_boundary {
        eprintln!("warning: theta is within 1e-3 of a sector boundary; the expansion is not uniform there");
    }
    let mut meta = row([("kind", "meta".into()), ("near_boundary", e.near_boundary.into())]);
    if let Some(x) = &e.exp_part {
        meta.insert("growth_coeff".into(), x.growth_coeff.into());
        meta.insert("growth_power".into(), x.growth_power.into());
        meta.insert("power_exponent".into(), x.power_exponent.into());
        meta.insert("phase_const".into(), x.phase_const.into());
    }
    out.rows.push(meta);
    for n in 0..terms {
        let a = e.algebraic_terms[n];
        let mut r = row([("kind", "term".into()), ("n", n.into()), ("c", a.c.into()), ("exponent", a.exponent.into())]);
        if let Some(x) = &e.exp_part {
            r.insert("d".into(), x.d_terms[n].into());
        }
        out.rows.push(r);
    }
    for l in &e.log_terms {
        out.rows.push(row([
            ("kind", "log".into()),
            ("coefficient", l.coefficient.into()),
            ("power_m", (l.power_m as i64).into()),
            ("shift", l.shift.into()),
        ]));
    }
    Ok(())
}

fn cmd_compare(p: &ParamArgs, theta: f64, radii: &[f64], terms: usize, tol: f64, out: &mut OutputRecord) -> Result<(), Failure> {
    let params = params_of(p)?;
    check_increasing("radii", radii)?;
    check_positive("tol", tol)?;
    out.params.append(&mut param_row(p));
    out.params.insert("theta".into(), theta.into());
    out.params.insert("radii".into(), list_field(radii));
    out.params.insert("terms".into(), terms.into());
    out.params.insert("tol".into(), tol.into());
    let rep = verification::convergence_report(&params, theta, radii, terms, tol)?;
    for r in &rep.rows {
        out.rows.push(row([
            ("kind", "sample".into()),
            ("radius", r.radius.into()),
            ("oracle", r.oracle.into()),
            ("expansion", r.expansion.into()),
            ("abs_error", r.abs_error.into()),
            ("normalized_error", r.normalized_error.into()),
        ]));
    }
    out.rows.push(row([
        ("kind", "fit".into()),
        ("fitted_slope", opt_real(rep.fitted_slope)),
        ("predicted_slope", opt_real(rep.predicted_slope)),
    ]));
    Ok(())
}

fn cmd_bounds(p: &ParamArgs, c: f64, xs: &[f64], out: &mut OutputRecord) -> Result<(), Failure> {
    let params = params_of(p)?;
    check_positive("C", c)?;
    check_increasing("xs", xs)?;
    out.params.append(&mut param_row(p));
    out.params.insert("C".into(), c.into());
    out.params.insert("xs".into(), list_field(xs));
    let rep = verification::bound_scan(&params, c, xs)?;
    for (side, samples) in [("positive", &rep.samples), ("negative", &rep.negative_samples)] {
        for s in samples {
            out.rows.push(row([
                ("kind", "sample".into()),
                ("side", side.into()),
                ("x", s.x.into()),
                ("y", s.y.into()),
                ("abs_f", s.abs_f.into()),
            ]));
        }
    }
    out.rows.push(row([
        ("kind", "fit".into()),
        ("a", rep.a.into()),
        ("fitted_exponent", rep.fitted_exponent.into()),
        ("predicted_exponent", rep.predicted_exponent.into()),
        ("log_factor", rep.log_factor_flag.into()),
        ("negative_fitted_exponent", rep.negative_fitted_exponent.into()),
    ]));
    Ok(())
}

fn cmd_tauberian(kappa: f64, smoothed: bool, xs: &[f64], tol: f64, out: &mut OutputRecord) -> Result<(), Failure> {
    let case = TauberianCase::new(kappa, smoothed)?;
    check_increasing("xs", xs)?;
    check_positive("tol", tol)?;
    out.params = row([
        ("kappa", kappa.into()),
        ("smoothed", smoothed.into()),
        ("xs", list_field(xs)),
        ("tol", tol.into()),
    ]);
    let t = tauberian::extremal_remainder(&case, xs, tol)?;
    for r in &t.rows {
        out.rows.push(row([
            ("kind", "sample".into()),
            ("x", r.x.into()),
            ("partial", r.partial.into()),
            ("main_term", r.main_term.into()),
            ("residual", r.residual.into()),
            ("abs_residual", r.abs_residual.into()),
        ]));
    }
    out.rows.push(row([
        ("kind", "fit".into()),
        ("laplace_at_zero", t.laplace_at_zero.into()),
        ("fitted_slope", opt_real(t.fitted_slope)),
        ("predicted_slope", t.predicted_slope.into()),
    ]));
    Ok(())
}

fn cmd_mueger(alpha: f64, s: Complex64, tol: f64, out: &mut OutputRecord) -> Result<(), Failure> {
    Params::real(alpha, 0.0)?;
    check_positive("tol", tol)?;
    out.params = row([("alpha", alpha.into()), ("s", s.into()), ("tol", tol.into())]);
    let m = tauberian::mueger_mellin(alpha, s, tol)?;
    out.rows.push(row([
        ("numeric", m.numeric.into()),
        ("closed_form", m.closed_form.into()),
        ("numeric_err", m.numeric_err.into()),
        ("difference", (m.numeric - m.closed_form).norm().into()),
    ]));
    Ok(())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Eval { .. } => "eval",
        Command::Expand { .. } => "expand",
        Command::Compare { .. } => "compare",
        Command::Bounds { .. } => "bounds",
        Command::DemoTauberian { .. } => "demo-tauberian",
        Command::DemoMueger { .. } => "demo-mueger",
    }
}

fn dispatch(cli: &Cli) -> Result<OutputRecord, Failure> {
    let mut out = OutputRecord::new(command_name(&cli.command), Row::new(), !cli.no_header);
    match &cli.command {
        Command::Eval { p, z, tol } => cmd_eval(p, *z, *tol, &mut out)?,
        Command::Expand { case, p, theta, terms } => cmd_expand(*case, p, *theta, *terms, &mut out)?,
        Command::Compare { p, theta, radii, terms, tol } => cmd_compare(p, *theta, &radii.0, *terms, *tol, &mut out)?,
        Command::Bounds { p, c, xs } => cmd_bounds(p, *c, &xs.0, &mut out)?,
        Command::DemoTauberian { kappa, smoothed, xs, tol } => cmd_tauberian(*kappa, *smoothed, &xs.0, *tol, &mut out)?,
        Command::DemoMueger { alpha, s, tol } => cmd_mueger(*alpha, *s, *tol, &mut out)?,
    }
    Ok(out)
}

/// Like [`run`] with explicit output streams.
pub fn run_with<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (code, msg) = match dispatch(&cli) {
        Ok(rec) => {
            let text = match cli.format {
                Format::Json => rec.to_json(),
                Format::Csv => rec.to_csv(),
            };
            match text {
                Ok(t) => {
                    let _ = stdout.write_all(t.as_bytes());
                    return EXIT_OK;
                }
                Err(e) => (EXIT_NUMERIC, e.to_string()),
            }
        }
        Err(Failure::Usage(m)) => (EXIT_USAGE, m),
        Err(Failure::Numeric(m)) => (EXIT_NUMERIC, m),
    };
    let _ = writeln!(stderr, "error: {msg}");
    code
}

/// Parse `argv` (program name first), run, write to stdout/stderr, return the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
