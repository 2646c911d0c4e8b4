//! Scenario files, CSV output and the `multislope` subcommands.
//!
//! Exit codes: 0 on success, 1 when a validation property fails, 2 on
//! usage, file or domain errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::analytic::{self, ccdf, coverage_by_method, Method, Metric, NetworkScenario};
use crate::error::{Error, Result};
use crate::montecarlo::{estimate_ccdf, Fading, SimConfig, WindowRadius};
use crate::pathloss::{PathLossModel, PathLossSpec};
use crate::scaling::{self, FitWindow};
use crate::{db_to_linear, linear_to_db};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdGrid {
    pub min_db: f64,
    pub max_db: f64,
    pub steps: usize,
}

/// A dB grid, or an explicit list of dB values.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ThresholdSpec {
    ListDb(Vec<f64>),
    Grid(ThresholdGrid),
}

impl ThresholdSpec {
    pub fn to_db(&self) -> Vec<f64> {
        match self {
            ThresholdSpec::ListDb(v) => v.clone(),
            ThresholdSpec::Grid(g) => grid_db(g.min_db, g.max_db, g.steps),
        }
    }
}

/// Shortest round-trip form, switching to exponent notation for very
/// small or large magnitudes.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn grid_db(min_db: f64, max_db: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![min_db],
        n => (0..n)
            .map(|i| min_db + (max_db - min_db) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityGridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub fit_min: Option<f64>,
    pub fit_max: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum WindowSpec {
    Radius(f64),
    Keyword(String),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSection {
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub fading: Option<String>,
    pub window_radius: Option<WindowSpec>,
    pub confidence: Option<f64>,
    pub tail_compensation: Option<bool>,
}

impl SimSection {
    pub fn to_config(&self) -> Result<SimConfig> {
        let mut cfg = SimConfig::default();
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(f) = &self.fading {
            cfg.fading = f.parse::<Fading>()?;
        }
        if let Some(w) = &self.window_radius {
            cfg.window_radius = match w {
                WindowSpec::Radius(r) => WindowRadius::Fixed(*r),
                WindowSpec::Keyword(k) if k == "auto" => WindowRadius::Auto,
                WindowSpec::Keyword(k) => {
                    return Err(Error::Config(format!(
                        "window_radius must be a number or \"auto\", got \"{k}\""
                    )))
                }
            };
        }
        if let Some(c) = self.confidence {
            cfg.confidence = c;
        }
        if let Some(t) = self.tail_compensation {
            cfg.tail_compensation = t;
        }
        Ok(cfg)
    }
}

/// Contents of a `.toml` or `.json` scenario file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default)]
    pub description: Option<String>,
    pub density: f64,
    #[serde(default)]
    pub noise: f64,
    pub pathloss: PathLossSpec,
    #[serde(default)]
    pub thresholds: Option<ThresholdSpec>,
    #[serde(default)]
    pub sweep: Option<DensityGridSpec>,
    #[serde(default)]
    pub sim: Option<SimSection>,
}

impl ScenarioFile {
    pub fn parse(text: &str, json: bool) -> Result<Self> {
        if json {
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
        } else {
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
        }
    }

    /// Reads JSON when the extension is `.json`, TOML otherwise.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        Self::parse(&text, json).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn scenario(&self) -> Result<NetworkScenario> {
        let model = PathLossModel::try_from(self.pathloss.clone())?;
        NetworkScenario::new(self.density, self.noise, model)
    }

    pub fn sim_config(&self) -> Result<SimConfig> {
        self.sim.clone().unwrap_or_default().to_config()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Sir,
    Snr,
    Sinr,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Sir => Metric::Sir,
            MetricArg::Snr => Metric::Snr,
            MetricArg::Sinr => Metric::Sinr,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    General,
    Dual,
    TwoRay,
    SnrIntegral,
    SnrClosed,
    LowerBound,
    Multislope,
    #[value(name = "mc")]
    MonteCarlo,
}

impl MethodArg {
    fn method(self) -> Option<Method> {
        Some(match self {
            MethodArg::Auto => return None,
            MethodArg::General => Method::GeneralIntegral,
            MethodArg::Dual => Method::DualSlope,
            MethodArg::TwoRay => Method::TwoRayClosed,
            MethodArg::SnrIntegral => Method::SnrIntegral,
            MethodArg::SnrClosed => Method::SnrClosed,
            MethodArg::LowerBound => Method::LowerBound,
            MethodArg::Multislope => Method::Multislope,
            MethodArg::MonteCarlo => Method::MonteCarlo,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    #[value(name = "theorem2")]
    Ordering,
    #[value(name = "fact1")]
    NearField,
    #[value(name = "prop2-bound")]
    LowerBound,
    Equivalence,
    StandardAnchor,
    PhaseTransition,
    SinrPeak,
    McOracle,
    All,
}

#[derive(Debug, Parser)]
#[command(
    name = "multislope",
    version,
    about = "Coverage and throughput of Poisson cellular networks with multi-slope path loss"
)]
pub struct Cli {
    /// Scenario file (.toml or .json).
    #[arg(long, global = true)]
    pub scenario: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte Carlo trials per point.
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Threshold in dB.
    #[arg(
        long = "T-db",
        global = true,
        allow_hyphen_values = true,
        conflicts_with = "t_linear"
    )]
    pub t_db: Option<f64>,
    /// Threshold as a linear ratio.
    #[arg(long = "T-linear", global = true)]
    pub t_linear: Option<f64>,
    /// Override the scenario density.
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coverage probability at one threshold.
    Coverage {
        #[arg(long, value_enum, default_value = "sinr")]
        metric: MetricArg,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Coverage ccdf over a dB threshold grid.
    Ccdf {
        #[arg(long, value_enum, default_value = "sinr")]
        metric: MetricArg,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long, allow_hyphen_values = true)]
        min_db: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        max_db: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        /// Add Monte Carlo estimate and confidence half-width columns.
        #[arg(long)]
        with_mc: bool,
    },
    /// Coverage, coverage density and potential throughput over a density grid.
    Sweep {
        #[arg(long)]
        lambda_min: Option<f64>,
        #[arg(long)]
        lambda_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        /// Replace the near-field exponent of the scenario model.
        #[arg(long)]
        alpha0: Option<f64>,
        #[arg(long)]
        fit_min: Option<f64>,
        #[arg(long)]
        fit_max: Option<f64>,
    },
    /// Run a property suite and print a summary table.
    Validate {
        #[arg(value_enum)]
        suite: Suite,
    },
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
                None => stdout.write_all(text.as_bytes()).map_err(Error::from),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Entry point of the `multislope` binary.
pub fn main_from_env() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    match &cli.command {
        Command::Coverage { metric, method } => cmd_coverage(cli, (*metric).into(), *method).map(|s| (s, EXIT_OK)),
        Command::Ccdf {
            metric,
            method,
            min_db,
            max_db,
            steps,
            with_mc,
        } => {
            let grid = match (min_db, max_db, steps) {
                (None, None, None) => None,
                (Some(a), Some(b), Some(n)) => Some(grid_db(*a, *b, *n)),
                _ => return Err(Error::Config("--min-db, --max-db and --steps go together".into())),
            };
            cmd_ccdf(cli, (*metric).into(), *method, grid, *with_mc).map(|s| (s, EXIT_OK))
        }
        Command::Sweep {
            lambda_min,
            lambda_max,
            points,
            alpha0,
            fit_min,
            fit_max,
        } => cmd_sweep(cli, (*lambda_min, *lambda_max, *points), *alpha0, (*fit_min, *fit_max)).map(|s| (s, EXIT_OK)),
        Command::Validate { suite } => cmd_validate(*suite, cli.seed.unwrap_or(0), cli.trials),
    }
}

fn load(cli: &Cli) -> Result<ScenarioFile> {
    let path = cli
        .scenario
        .as_ref()
        .ok_or_else(|| Error::Config("--scenario <path> is required".into()))?;
    let mut file = ScenarioFile::load(path)?;
    if let Some(l) = cli.lambda {
        file.density = l;
    }
    Ok(file)
}

fn threshold_from_flags(cli: &Cli) -> Result<Option<f64>> {
    let t = match (cli.t_db, cli.t_linear) {
        (Some(db), None) => Some(db_to_linear(db)),
        (None, Some(lin)) => Some(lin),
        (None, None) => None,
        (Some(_), Some(_)) => return Err(Error::Config("give either --T-db or --T-linear".into())),
    };
    if let Some(t) = t {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("threshold {t} must be positive and finite")));
        }
    }
    Ok(t)
}

fn sim_config(cli: &Cli, file: &ScenarioFile) -> Result<SimConfig> {
    let mut cfg = file.sim_config()?;
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(t) = cli.trials {
        cfg.trials = t;
    }
    Ok(cfg)
}

/// Scenario matching the metric (noise dropped for SIR) and the method to use.
fn resolve_method(
    scenario: &NetworkScenario,
    metric: Metric,
    method: MethodArg,
) -> Result<(NetworkScenario, Option<Method>)> {
    let method = method.method();
    let snr_method = matches!(method, Some(Method::SnrIntegral | Method::SnrClosed));
    match metric {
        Metric::Snr if method.is_some() && !snr_method && method != Some(Method::MonteCarlo) => Err(Error::Config(
            "SNR coverage uses --method snr-integral, snr-closed, mc or auto".into(),
        )),
        Metric::Sir | Metric::Sinr if snr_method => Err(Error::Config(format!(
            "--method {} computes SNR coverage",
            method.unwrap()
        ))),
        Metric::Sir => Ok((scenario.with_noise(0.0)?, method)),
        _ => Ok((scenario.clone(), method)),
    }
}

fn cmd_coverage(cli: &Cli, metric: Metric, method: MethodArg) -> Result<String> {
    let file = load(cli)?;
    let scenario = file.scenario()?;
    let t = threshold_from_flags(cli)?.unwrap_or(1.0);
    let (scenario, method) = resolve_method(&scenario, metric, method)?;
    let mut out = String::from("metric,method,threshold_db,threshold_linear,value,error_estimate\n");
    let (value, method_name, error) = match method {
        Some(Method::MonteCarlo) => {
            let cfg = sim_config(cli, &file)?;
            let e = estimate_ccdf(&scenario, &cfg, &[t], metric)?;
            (e.estimates[0], Method::MonteCarlo, e.ci_halfwidths[0])
        }
        Some(m) => {
            let r = coverage_by_method(&scenario, t, m)?;
            (r.value, r.method, r.error_estimate)
        }
        None => {
            let r = analytic::coverage(&scenario, t, metric)?;
            (r.value, r.method, r.error_estimate)
        }
    };
    writeln!(
        out,
        "{metric},{method_name},{},{},{},{}",
        fmt_num(linear_to_db(t)),
        fmt_num(t),
        fmt_num(value),
        fmt_num(error)
    )
    .unwrap();
    Ok(out)
}

fn is_two_ray(model: &PathLossModel) -> bool {
    model.exponents() == [2.0, 4.0]
}

fn cmd_ccdf(cli: &Cli, metric: Metric, method: MethodArg, grid: Option<Vec<f64>>, with_mc: bool) -> Result<String> {
    let file = load(cli)?;
    let base = file.scenario()?;
    let db =
        match grid {
            Some(g) => g,
            None => file.thresholds.as_ref().map(ThresholdSpec::to_db).ok_or_else(|| {
                Error::Config("no threshold grid: set [thresholds] or --min-db/--max-db/--steps".into())
            })?,
        };
    if db.is_empty() {
        return Err(Error::Domain("threshold grid is empty".into()));
    }
    let linear: Vec<f64> = db.iter().map(|&d| db_to_linear(d)).collect();
    let (scenario, method) = resolve_method(&base, metric, method)?;
    if method == Some(Method::MonteCarlo) {
        return Err(Error::Config(
            "use --with-mc to add Monte Carlo columns to a ccdf".into(),
        ));
    }
    let curve = ccdf(&scenario, &linear, metric, method)?;
    let bound = if metric == Metric::Sinr && scenario.noise() > 0.0 && is_two_ray(scenario.pathloss()) {
        Some(ccdf(&scenario, &linear, metric, Some(Method::LowerBound))?)
    } else {
        None
    };
    let mc = if with_mc {
        let cfg = sim_config(cli, &file)?;
        Some((estimate_ccdf(&scenario, &cfg, &linear, metric)?, cfg))
    } else {
        None
    };

    let mut out = String::from("threshold_db,analytic");
    if bound.is_some() {
        out.push_str(",lower_bound");
    }
    if mc.is_some() {
        out.push_str(",mc_estimate,mc_ci");
    }
    out.push('\n');
    for (i, d) in db.iter().enumerate() {
        write!(out, "{},{}", fmt_num(*d), fmt_num(curve.points[i].value)).unwrap();
        if let Some(b) = &bound {
            write!(out, ",{}", fmt_num(b.points[i].value)).unwrap();
        }
        if let Some((e, _)) = &mc {
            write!(out, ",{},{}", fmt_num(e.estimates[i]), fmt_num(e.ci_halfwidths[i])).unwrap();
        }
        out.push('\n');
    }
    let model = scenario.pathloss();
    writeln!(
        out,
        "# metric={metric} method={} density={} noise={} exponents={:?} breakpoints={:?}",
        curve.points[0].method,
        fmt_num(scenario.density()),
        fmt_num(scenario.noise()),
        model.exponents(),
        model.breakpoints()
    )
    .unwrap();
    if let Some((e, cfg)) = &mc {
        writeln!(
            out,
            "# mc trials={} seed={} fading={} confidence={} window_radius={}",
            e.trials_used,
            cfg.seed,
            cfg.fading,
            cfg.confidence,
            fmt_num(e.window_radius)
        )
        .unwrap();
    }
    Ok(out)
}

type GridFlags = (Option<f64>, Option<f64>, Option<usize>);

fn cmd_sweep(cli: &Cli, flags: GridFlags, alpha0: Option<f64>, fit: (Option<f64>, Option<f64>)) -> Result<String> {
    let file = load(cli)?;
    let mut spec = file.pathloss.clone();
    if let Some(a) = alpha0 {
        match spec.exponents.first_mut() {
            Some(e) => *e = a,
            None => return Err(Error::Config("model has no exponents".into())),
        }
    }
    let model = PathLossModel::try_from(spec)?;
    let t = threshold_from_flags(cli)?.unwrap_or(1.0);
    let defaults = file.sweep.clone().unwrap_or(DensityGridSpec {
        min: 1e-3,
        max: 1e3,
        points: 25,
        fit_min: None,
        fit_max: None,
    });
    let grid = scaling::log_grid(
        flags.0.unwrap_or(defaults.min),
        flags.1.unwrap_or(defaults.max),
        flags.2.unwrap_or(defaults.points),
    )?;
    let window = match (fit.0.or(defaults.fit_min), fit.1.or(defaults.fit_max)) {
        (None, None) => FitWindow::default(),
        (lo, hi) => FitWindow::Range(lo.unwrap_or(0.0), hi.unwrap_or(f64::INFINITY)),
    };
    let sweep = scaling::sweep_density_with(&model, t, file.noise, &grid, window)?;
    let mut out = String::from("lambda,coverage_sir,coverage_snr,coverage_sinr,mu,tau\n");
    for r in &sweep.rows {
        let cells = [r.lambda, r.coverage_sir, r.coverage_snr, r.coverage_sinr, r.mu, r.tau].map(fmt_num);
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
    let (a, b) = sweep.fit_window;
    writeln!(
        out,
        "# fitted_exponent={} fit_window=[{},{}] fit_points={} fit_residual={} threshold_db={} exponents={:?} breakpoints={:?} noise={}",
        fmt_num(sweep.fitted_exponent),
        fmt_num(sweep.densities[a]),
        fmt_num(sweep.densities[b - 1]),
        b - a,
        fmt_num(sweep.fit_residual),
        fmt_num(linear_to_db(t)),
        model.exponents(),
        model.breakpoints(),
        fmt_num(file.noise)
    )
    .unwrap();
    Ok(out)
}

/// One line of a validation summary. `margin >= 0` means the property holds.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyCheck {
    pub property: String,
    pub grid_size: usize,
    pub worst_margin: f64,
    /// Reported for information only; never fails the suite.
    pub informational: bool,
}

impl PropertyCheck {
    fn new(property: impl Into<String>, grid_size: usize, worst_margin: f64) -> Self {
        PropertyCheck {
            property: property.into(),
            grid_size,
            worst_margin,
            informational: false,
        }
    }

    pub fn passed(&self) -> bool {
        self.informational || self.worst_margin >= 0.0
    }
}

fn cmd_validate(suite: Suite, seed: u64, trials: Option<u64>) -> Result<(String, i32)> {
    let checks = run_suite(suite, seed, trials)?;
    let mut out = String::from("property,grid_size,worst_margin,status\n");
    let mut ok = true;
    for c in &checks {
        let status = if c.informational {
            "info"
        } else if c.passed() {
            "pass"
        } else {
            ok = false;
            "fail"
        };
        writeln!(out, "{},{},{:.6e},{status}", c.property, c.grid_size, c.worst_margin).unwrap();
    }
    writeln!(out, "# seed={seed} result={}", if ok { "pass" } else { "fail" }).unwrap();
    Ok((out, if ok { EXIT_OK } else { EXIT_PROPERTY }))
}

/// Run the named property suite.
pub fn run_suite(suite: Suite, seed: u64, trials: Option<u64>) -> Result<Vec<PropertyCheck>> {
    match suite {
        Suite::Ordering => suite_ordering(seed),
        Suite::NearField => suite_near_field(seed),
        Suite::LowerBound => suite_lower_bound(),
        Suite::Equivalence => suite_equivalence(seed),
        Suite::StandardAnchor => suite_standard_anchor(),
        Suite::PhaseTransition => suite_phase_transition(),
        Suite::SinrPeak => suite_sinr_peak(),
        Suite::McOracle => suite_mc_oracle(seed, trials.unwrap_or(20_000)),
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::StandardAnchor,
                Suite::Ordering,
                Suite::NearField,
                Suite::Equivalence,
                Suite::LowerBound,
                Suite::SinrPeak,
                Suite::PhaseTransition,
                Suite::McOracle,
            ] {
                all.extend(run_suite(s, seed, trials)?);
            }
            Ok(all)
        }
    }
}

/// Slack for comparisons between quadrature results.
const NUMERIC_SLACK: f64 = 1e-8;

fn dual(a0: f64, a1: f64, rc: f64, lambda: f64, noise: f64) -> Result<NetworkScenario> {
    NetworkScenario::new(lambda, noise, PathLossModel::make_dual(a0, a1, rc)?)
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

/// SIR ordering between the two standard models bracketing a dual-slope
/// model, and monotonicity of dual-slope SIR coverage in density.
pub fn ordering_checks(a0: f64, a1: f64, rc: f64, lambdas: &[f64], thresholds: &[f64]) -> Result<[f64; 3]> {
    let mut upper = f64::INFINITY;
    let mut lower = f64::INFINITY;
    let mut mono = f64::INFINITY;
    for &t in thresholds {
        let hi = analytic::standard_sir_coverage(a1, t)?;
        let lo = analytic::standard_sir_coverage(a0, t)?;
        let mut prev: Option<f64> = None;
        for &l in lambdas {
            let p = analytic::coverage_dual(&dual(a0, a1, rc, l, 0.0)?, t)?.value;
            upper = upper.min(hi - p + NUMERIC_SLACK);
            lower = lower.min(p - lo + NUMERIC_SLACK);
            if let Some(q) = prev {
                mono = mono.min(q - p + NUMERIC_SLACK);
            }
            prev = Some(p);
        }
    }
    Ok([upper, lower, mono])
}

fn suite_ordering(seed: u64) -> Result<Vec<PropertyCheck>> {
    let lambdas = scaling::log_grid(1e-2, 1e3, 20)?;
    let ts: Vec<f64> = grid_db(-20.0, 20.0, 20).into_iter().map(db_to_linear).collect();
    let [u, l, m] = ordering_checks(3.0, 4.0, 1.0, &lambdas, &ts)?;
    let n = lambdas.len() * ts.len();
    let mut checks = vec![
        PropertyCheck::new("sir ordering standard(4) >= dual(3,4,1)", n, u),
        PropertyCheck::new("sir ordering dual(3,4,1) >= standard(3)", n, l),
        PropertyCheck::new("sir non-increasing in density dual(3,4,1)", n, m),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambdas = scaling::log_grid(1e-2, 1e2, 6)?;
    let ts: Vec<f64> = grid_db(-10.0, 10.0, 6).into_iter().map(db_to_linear).collect();
    let mut worst = [f64::INFINITY; 3];
    let models = 5;
    for _ in 0..models {
        let a1 = rng.random_range(2.5..5.0);
        let a0 = rng.random_range(2.1..a1);
        let rc = log_uniform(&mut rng, 0.2, 5.0);
        let w = ordering_checks(a0, a1, rc, &lambdas, &ts)?;
        for k in 0..3 {
            worst[k] = worst[k].min(w[k]);
        }
    }
    let n = models * lambdas.len() * ts.len();
    checks.push(PropertyCheck::new("sir ordering random models (upper)", n, worst[0]));
    checks.push(PropertyCheck::new("sir ordering random models (lower)", n, worst[1]));
    checks.push(PropertyCheck::new("sir non-increasing random models", n, worst[2]));
    Ok(checks)
}

/// Worst `1e-6 - |P(λ, R_c) - P(λ/a², a R_c)|` over random pairs.
pub fn near_field_margin(seed: u64, pairs: usize) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    for _ in 0..pairs {
        let a1 = rng.random_range(2.2..6.0);
        let a0 = rng.random_range(0.0..a1);
        let rc = log_uniform(&mut rng, 0.2, 5.0);
        let lambda = log_uniform(&mut rng, 1e-2, 1e2);
        let scale = log_uniform(&mut rng, 0.1, 10.0);
        let t = db_to_linear(rng.random_range(-10.0..10.0));
        let p = analytic::coverage_dual(&dual(a0, a1, rc, lambda, 0.0)?, t)?.value;
        let q = analytic::coverage_dual(&dual(a0, a1, rc * scale, lambda / (scale * scale), 0.0)?, t)?.value;
        worst = worst.min(1e-6 - (p - q).abs());
    }
    Ok(worst)
}

fn suite_near_field(seed: u64) -> Result<Vec<PropertyCheck>> {
    Ok(vec![PropertyCheck::new(
        "near-field invariance lambda*rc^2 fixed",
        50,
        near_field_margin(seed, 50)?,
    )])
}

/// Worst `exact - bound` on the two-ray grid and the relative gap at
/// `(λ = 0.1, T = 1e-3)`.
pub fn lower_bound_margins() -> Result<(f64, usize, f64)> {
    let ts: Vec<f64> = grid_db(-20.0, 20.0, 41).into_iter().map(db_to_linear).collect();
    let mut worst = f64::INFINITY;
    let mut n = 0;
    for lambda in [0.1, 1.0, 10.0] {
        let s = dual(2.0, 4.0, 1.0, lambda, 1.0)?;
        for &t in &ts {
            let exact = analytic::coverage_dual(&s, t)?.value;
            let lb = analytic::coverage_sinr_lower_bound_tworay(&s, t)?.value;
            worst = worst.min(exact - lb);
            n += 1;
        }
    }
    let s = dual(2.0, 4.0, 1.0, 0.1, 1.0)?;
    let exact = analytic::coverage_dual(&s, 1e-3)?.value;
    let lb = analytic::coverage_sinr_lower_bound_tworay(&s, 1e-3)?.value;
    Ok((worst, n, (exact - lb) / exact))
}

fn suite_lower_bound() -> Result<Vec<PropertyCheck>> {
    let (worst, n, gap) = lower_bound_margins()?;
    Ok(vec![
        PropertyCheck::new("two-ray lower bound <= exact (slack 1e-9)", n, worst + 1e-9),
        PropertyCheck::new("two-ray lower bound relative gap at T=1e-3 <= 2%", 1, 0.02 - gap),
    ])
}

/// Worst `1e-6 - |dual - multislope|` over random two-slope scenarios.
pub fn equivalence_margin(seed: u64, cases: usize) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    for _ in 0..cases {
        let a1 = rng.random_range(2.2..6.0);
        let a0 = rng.random_range(0.0..a1);
        let rc = log_uniform(&mut rng, 0.1, 10.0);
        let lambda = log_uniform(&mut rng, 1e-3, 1e2);
        let noise = if rng.random_bool(0.3) {
            0.0
        } else {
            log_uniform(&mut rng, 1e-3, 10.0)
        };
        let t = db_to_linear(rng.random_range(-20.0..20.0));
        let s = dual(a0, a1, rc, lambda, noise)?;
        let d = analytic::coverage_dual(&s, t)?.value;
        let m = analytic::coverage_multislope(&s, t)?.value;
        worst = worst.min(1e-6 - (d - m).abs());
    }
    Ok(worst)
}

fn suite_equivalence(seed: u64) -> Result<Vec<PropertyCheck>> {
    Ok(vec![PropertyCheck::new(
        "dual-slope formula equals two-segment multislope formula",
        100,
        equivalence_margin(seed, 100)?,
    )])
}

fn suite_standard_anchor() -> Result<Vec<PropertyCheck>> {
    let s = NetworkScenario::new(1.0, 0.0, PathLossModel::make_standard(4.0)?)?;
    let v = analytic::coverage_general(&s, 1.0)?.value;
    Ok(vec![PropertyCheck::new(
        "general integral alpha=4 T=1 equals 0.56010 +- 1e-4",
        1,
        1e-4 - (v - 0.56010).abs(),
    )])
}

fn suite_phase_transition() -> Result<Vec<PropertyCheck>> {
    let report = scaling::phase_transition_report(&[0.9, 1.0, 1.8, 2.0, 3.0], 4.0, 1.0, 1.0)?;
    let mut checks = Vec::new();
    for row in &report {
        let (a, b) = row.sweep.fit_window;
        let n = b - a;
        let check = match row.alpha0 {
            x if x == 3.0 => PropertyCheck::new(
                format!(
                    "alpha0=3 slope {:.4} ({}) within 1 +- 0.05",
                    row.fitted_exponent, row.tag
                ),
                n,
                0.05 - (row.fitted_exponent - 1.0).abs(),
            ),
            x if x == 1.8 => {
                let target = 2.0 - 2.0 / 1.8;
                PropertyCheck::new(
                    format!(
                        "alpha0=1.8 slope {:.4} ({}) within {target:.3} +- 0.15",
                        row.fitted_exponent, row.tag
                    ),
                    n,
                    0.15 - (row.fitted_exponent - target).abs(),
                )
            }
            x if x == 0.9 => {
                let tau = row.sweep.tau();
                PropertyCheck::new(
                    format!(
                        "alpha0=0.9 slope {:.4} ({}) throughput decreasing over tail",
                        row.fitted_exponent, row.tag
                    ),
                    n,
                    tau[a] - tau[b - 1],
                )
            }
            _ => PropertyCheck {
                informational: true,
                ..PropertyCheck::new(
                    format!("alpha0={} slope {:.4} ({})", row.alpha0, row.fitted_exponent, row.tag),
                    n,
                    row.fitted_exponent,
                )
            },
        };
        checks.push(check);
    }
    Ok(checks)
}

fn suite_sinr_peak() -> Result<Vec<PropertyCheck>> {
    let grid = scaling::log_grid(1e-3, 1e2, 16)?;
    let model = PathLossModel::make_dual(2.0, 4.0, 1.0)?;
    let mut checks = Vec::new();
    for t_db in [-10.0, 0.0, 10.0] {
        let s = scaling::sweep_density(&model, db_to_linear(t_db), 1.0, &grid)?;
        let c = s.coverage_sinr();
        let peak = c.iter().cloned().fold(f64::MIN, f64::max);
        let edge = c[0].max(c[c.len() - 1]);
        checks.push(PropertyCheck::new(
            format!("sinr interior maximum T={t_db} dB"),
            c.len(),
            peak - edge,
        ));
        let bound = s
            .rows
            .iter()
            .map(|r| r.coverage_sir.min(r.coverage_snr) - r.coverage_sinr + NUMERIC_SLACK)
            .fold(f64::INFINITY, f64::min);
        checks.push(PropertyCheck::new(
            format!("min(sir, snr) >= sinr T={t_db} dB"),
            c.len(),
            bound,
        ));
    }
    Ok(checks)
}

/// Analytic SINR ccdf against simulation on the validation scenarios;
/// returns `(inside, total)` CI hits per scenario label.
pub fn mc_oracle_hits(seed: u64, trials: u64) -> Result<Vec<(String, usize, usize)>> {
    let mut cases: Vec<(String, NetworkScenario, Vec<f64>)> = Vec::new();
    let fig3_t: Vec<f64> = [-10.0, 0.0, 10.0].into_iter().map(db_to_linear).collect();
    for lambda in [0.01, 0.1, 1.0, 10.0] {
        cases.push((
            format!("dual(2,4,1) noise=1 lambda={lambda}"),
            dual(2.0, 4.0, 1.0, lambda, 1.0)?,
            fig3_t.clone(),
        ));
    }
    let fig4_t: Vec<f64> = grid_db(-20.0, 20.0, 41).into_iter().map(db_to_linear).collect();
    for lambda in [0.1, 1.0, 10.0] {
        cases.push((
            format!("dual(2,4,1) noise=1 ccdf lambda={lambda}"),
            dual(2.0, 4.0, 1.0, lambda, 1.0)?,
            fig4_t.clone(),
        ));
    }
    let fig6_t: Vec<f64> = grid_db(-20.0, 20.0, 21).into_iter().map(db_to_linear).collect();
    let fig6 = PathLossModel::make_multislope(vec![0.0, 2.0, 4.0], vec![1.0, 267.0])?;
    for lambda in [1e-7, 1e-5, 1e-3] {
        cases.push((
            format!("three-slope(0,2,4) noise=1e-8 lambda={}", fmt_num(lambda)),
            NetworkScenario::new(lambda, 1e-8, fig6.clone())?,
            fig6_t.clone(),
        ));
    }
    let mut out = Vec::new();
    for (k, (label, s, ts)) in cases.into_iter().enumerate() {
        let cfg = SimConfig::new(trials, seed.wrapping_add(k as u64));
        let emp = estimate_ccdf(&s, &cfg, &ts, Metric::Sinr)?;
        let exact = ccdf(&s, &ts, Metric::Sinr, None)?;
        let inside = (0..ts.len())
            .filter(|&i| emp.contains(i, exact.points[i].value))
            .count();
        out.push((label, inside, ts.len()));
    }
    Ok(out)
}

fn suite_mc_oracle(seed: u64, trials: u64) -> Result<Vec<PropertyCheck>> {
    let hits = mc_oracle_hits(seed, trials)?;
    let mut checks: Vec<PropertyCheck> = hits
        .iter()
        .map(|(label, inside, total)| PropertyCheck {
            informational: true,
            ..PropertyCheck::new(
                format!("{label}: {inside}/{total} inside 99% CI"),
                *total,
                *inside as f64 / *total as f64,
            )
        })
        .collect();
    let inside: usize = hits.iter().map(|h| h.1).sum();
    let total: usize = hits.iter().map(|h| h.2).sum();
    checks.push(PropertyCheck::new(
        format!("analytic inside 99% CI at >= 95% of points ({inside}/{total}, {trials} trials)"),
        total,
        inside as f64 / total as f64 - 0.95,
    ));
    Ok(checks)
}
