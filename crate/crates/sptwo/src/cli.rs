//! Argument parsing and subcommand dispatch.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI, SQRT_2};
use std::fmt;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use sptwo_core::envelope::{epsilon, EnvelopeParams};
use sptwo_core::numerics::{gaussian_ridge_ratio, Half, Mat4};
use sptwo_core::operators::{
    fitted_envelope_constant, holder_fit_using, holder_fit_with, s_operator_norm, schatten_s_using,
    schatten_t_pair, HolderFit, NormKind, SOptions, SWeights, SchattenResult, TOptions,
};
use sptwo_core::quasimorphism::{defect, eta, phi, random_base, random_cover};
use sptwo_core::symplectic::{kak, KAKResult, SpMatrix};
use sptwo_core::wigner::{fit_envelope, CplMethod, CplTable};

use crate::io::{Format, Provenance, Report};
use crate::parallel;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "sptwo",
    version,
    about = "Verification runs for SU(2) averaging operators and Sp(2,R)"
)]
pub struct Cli {
    /// Root seed for every random sweep.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Truncation in ell (or degree), as a half-integer.
    #[arg(long, global = true)]
    pub lmax: Option<Half>,
    /// Relative tail target.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads.
    #[arg(long, global = true, env = "SPTWO_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Table of c_p^ell.
    Cpl(CplArgs),
    /// Envelope constant over ell <= fit-lmax and its excess beyond.
    BoundsCpl(BoundsArgs),
    /// One Schatten norm with a certified tail.
    Schatten(SchattenArgs),
    /// Holder ratios over an angle grid.
    HolderFit(HolderArgs),
    /// KAK decomposition of 16 row-major entries or of random matrices.
    Kak(KakArgs),
    /// Random sweeps of the quasi-morphism defect or of the cocycle.
    Quasi(QuasiArgs),
    /// Decay envelope at one point or over a chamber grid.
    Envelope(EnvelopeArgs),
    /// Supremum of the Gaussian-ridge ratio on two squares.
    Ridge(RidgeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Jacobi,
    Integral,
    Group,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "T", alias = "t")]
    T,
}

impl From<Kind> for NormKind {
    fn from(k: Kind) -> NormKind {
        match k {
            Kind::S => NormKind::S,
            Kind::T => NormKind::T,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct CplArgs {
    #[arg(long, value_enum, default_value_t = Method::Jacobi)]
    pub method: Method,
}

#[derive(Args, Debug, Clone)]
pub struct BoundsArgs {
    /// Fit window top; defaults to half of lmax.
    #[arg(long)]
    pub fit_lmax: Option<Half>,
    /// Allowed relative excess beyond the fit window.
    #[arg(long, default_value_t = 0.05)]
    pub slack: f64,
}

#[derive(Args, Debug, Clone)]
pub struct SchattenArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Exponent; `inf` selects the operator norm.
    #[arg(long)]
    pub q: f64,
    #[arg(long, default_value_t = 0.0)]
    pub theta1: f64,
    /// Defaults to pi/2 for S and pi/4 for T.
    #[arg(long)]
    pub theta2: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct HolderArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Exponents; defaults to 11,12,16,20,40 for S and 5,6,8 for T.
    #[arg(long, value_delimiter = ',')]
    pub q: Vec<f64>,
    /// Grid size; defaults to 20 for S and 30 for T.
    #[arg(long)]
    pub points: Option<usize>,
    /// Smallest separation for S.
    #[arg(long, default_value_t = 1e-3)]
    pub dmin: f64,
    /// Largest separation for S.
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub dmax: f64,
    /// Base angle for S.
    #[arg(long, default_value_t = 0.0)]
    pub theta1: f64,
    /// Emit every grid point instead of one row per exponent.
    #[arg(long)]
    pub detail: bool,
}

#[derive(Args, Debug, Clone)]
pub struct KakArgs {
    /// Sixteen row-major entries.
    #[arg(allow_negative_numbers = true, num_args = 0..)]
    pub entries: Vec<String>,
    #[arg(long, conflicts_with = "entries")]
    pub random: bool,
    #[arg(long, default_value_t = 1, requires = "random")]
    pub trials: u64,
    #[arg(long, default_value_t = 3.0)]
    pub beta_max: f64,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("sweep").required(true).args(["defect_sweep", "eta_sweep"])))]
pub struct QuasiArgs {
    /// Random cover pairs `x, y` with `Phi(xy) - Phi(x) - Phi(y)`.
    #[arg(long)]
    pub defect_sweep: Option<u64>,
    /// Random base pairs with `eta(g1, g2)`.
    #[arg(long)]
    pub eta_sweep: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct EnvelopeArgs {
    #[arg(long, required_unless_present = "p")]
    pub s1: Option<f64>,
    #[arg(long, required_unless_present = "p")]
    pub s2: Option<f64>,
    /// Preset exponents from `p` and `q`.
    #[arg(long, conflicts_with_all = ["s1", "s2"], requires = "preset_q")]
    pub p: Option<f64>,
    #[arg(long = "preset-q")]
    pub preset_q: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub s: f64,
    #[arg(long, default_value_t = 0.0)]
    pub kappa: f64,
    #[arg(long, required_unless_present = "sweep")]
    pub beta: Option<f64>,
    #[arg(long, required_unless_present = "sweep")]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub sweep: bool,
    #[arg(long, default_value_t = 10.0)]
    pub beta_max: f64,
    #[arg(long, default_value_t = 20)]
    pub steps: usize,
}

#[derive(Args, Debug, Clone)]
pub struct RidgeArgs {
    #[arg(long, default_value_t = 50.0)]
    pub max: f64,
    #[arg(long, default_value_t = 0.5)]
    pub step: f64,
    /// Allowed relative growth from the half square to the full one.
    #[arg(long, default_value_t = 0.05)]
    pub slack: f64,
}

/// Failure before a report exists; always exit status 2.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(sptwo_core::Error),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Core(e) => write!(f, "input error: {e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<sptwo_core::Error> for CliError {
    fn from(e: sptwo_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Result of a completed run.
#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Passed,
    /// A checked bound was violated; exit status 1.
    Failed(String),
    /// The tail target could not be met; exit status 2.
    Unreachable(String),
}

impl Status {
    pub fn code(&self) -> u8 {
        match self {
            Status::Passed => 0,
            Status::Failed(_) => 1,
            Status::Unreachable(_) => 2,
        }
    }

    fn fail_if(cond: bool, msg: impl FnOnce() -> String) -> Status {
        if cond {
            Status::Failed(msg())
        } else {
            Status::Passed
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub status: Status,
}

fn provenance(cli: &Cli, args: String) -> Provenance {
    let opt = |x: Option<String>| x.unwrap_or_else(|| "default".to_string());
    Provenance::new(
        cli.seed,
        vec![
            ("command".into(), args),
            ("lmax".into(), opt(cli.lmax.map(|h| h.to_string()))),
            ("tol".into(), opt(cli.tol.map(|t| t.to_string()))),
        ],
    )
}

fn check_globals(cli: &Cli) -> Result<(), CliError> {
    if let Some(t) = cli.tol {
        if !(t > 0.0) {
            return Err(CliError::Input(format!("--tol must be positive, got {t}")));
        }
    }
    if let Some(l) = cli.lmax {
        if l.twice() < 0 {
            return Err(CliError::Input(format!(
                "--lmax must be non-negative, got {l}"
            )));
        }
    }
    Ok(())
}

/// Runs the configured subcommand.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    check_globals(cli)?;
    match &cli.command {
        Command::Cpl(a) => run_cpl(cli, a),
        Command::BoundsCpl(a) => run_bounds(cli, a),
        Command::Schatten(a) => run_schatten(cli, a),
        Command::HolderFit(a) => run_holder(cli, a),
        Command::Kak(a) => run_kak(cli, a),
        Command::Quasi(a) => run_quasi(cli, a),
        Command::Envelope(a) => run_envelope(cli, a),
        Command::Ridge(a) => run_ridge(cli, a),
    }
}

fn run_cpl(cli: &Cli, a: &CplArgs) -> Result<Outcome, CliError> {
    let lmax = cli.lmax.unwrap_or(Half::from_int(10));
    let table = match a.method {
        Method::Jacobi => parallel::cpl_table(lmax)?,
        Method::Integral | Method::Group => {
            let method = if a.method == Method::Integral {
                CplMethod::Integral
            } else {
                CplMethod::GroupAverage
            };
            let rows = (0..=lmax.twice())
                .into_par_iter()
                .map(|t| CplTable::row(Half::from_twice(t), method))
                .collect::<Result<Vec<_>, _>>()?;
            CplTable::from_rows(lmax, rows)?
        }
    };
    let mut report = Report::new(provenance(cli, format!("{a:?}")), &["ell", "p", "c"]);
    let mut worst: f64 = 0.0;
    for (ell, p, c) in table.iter() {
        worst = worst.max(c.abs());
        report.push(vec![ell.into(), p.into(), c.into()]);
    }
    report.note("rows", report.rows.len() as u64);
    report.note("max_abs_c", worst);
    let status = Status::fail_if(worst > 1.0 + 1e-12, || format!("|c| = {worst} exceeds 1"));
    Ok(Outcome { report, status })
}

fn run_bounds(cli: &Cli, a: &BoundsArgs) -> Result<Outcome, CliError> {
    let lmax = cli.lmax.unwrap_or(Half::from_int(200));
    let fit = a.fit_lmax.unwrap_or(Half::from_twice(lmax.twice() / 4 * 2));
    if fit > lmax || fit.twice() < 0 {
        return Err(CliError::Input(format!(
            "--fit-lmax {fit} must lie in [0, {lmax}]"
        )));
    }
    let table = parallel::cpl_table(lmax)?;
    let inner = fit_envelope(&table, Half::ZERO, fit);
    let mut report = Report::new(
        provenance(cli, format!("{a:?}")),
        &["ell", "p", "c", "ratio"],
    );
    for t in 0..=lmax.twice() {
        let ell = Half::from_twice(t);
        let f = fit_envelope(&table, ell, ell);
        let c = table.get(f.ell, f.p).unwrap_or(0.0);
        report.push(vec![f.ell.into(), f.p.into(), c.into(), f.constant.into()]);
    }
    report.note("c_fit", inner.constant);
    report.note("c_fit_ell", inner.ell);
    report.note("c_fit_p", inner.p);
    let mut status = Status::Passed;
    if fit < lmax {
        let outer = fit_envelope(&table, Half::from_twice(fit.twice() + 1), lmax);
        let excess = outer.constant / inner.constant - 1.0;
        report.note("sup_beyond", outer.constant);
        report.note("sup_beyond_ell", outer.ell);
        report.note("excess", excess);
        status = Status::fail_if(excess >= a.slack, || {
            format!("envelope exceeded by {excess} beyond ell = {fit}")
        });
    }
    Ok(Outcome { report, status })
}

const NORM_COLUMNS: [&str; 6] = ["q", "theta1", "theta2", "value", "tail", "lmax"];

fn norm_row(r: &SchattenResult, t1: f64, t2: f64) -> Vec<crate::io::Cell> {
    vec![
        r.q.into(),
        t1.into(),
        t2.into(),
        r.value.into(),
        r.tail.into(),
        r.lmax.into(),
    ]
}

fn s_options(cli: &Cli) -> SOptions {
    let mut o = SOptions::default();
    if let Some(t) = cli.tol {
        o.rel_target = t;
    }
    if let Some(l) = cli.lmax {
        o.cap = l;
        o.op_lmax = l;
    }
    o.sum_cap = o.sum_cap.min(o.cap);
    o
}

fn t_options(cli: &Cli) -> TOptions {
    let mut o = TOptions::default();
    if let Some(t) = cli.tol {
        o.rel_target = t;
    }
    if let Some(l) = cli.lmax {
        let n = (l.twice() / 2).max(1) as usize;
        o.cap = n;
        o.op_nmax = n;
    }
    o
}

fn run_schatten(cli: &Cli, a: &SchattenArgs) -> Result<Outcome, CliError> {
    let t1 = a.theta1;
    let t2 = a.theta2.unwrap_or(match a.kind {
        Kind::S => FRAC_PI_2,
        Kind::T => FRAC_PI_4,
    });
    if !t1.is_finite() || !t2.is_finite() || a.q.is_nan() {
        return Err(CliError::Input(
            "angles and exponent must be numbers".into(),
        ));
    }
    let result = match a.kind {
        Kind::S => {
            let opts = s_options(cli);
            let k = opts.safety * fitted_envelope_constant();
            if a.q == f64::INFINITY {
                Ok(s_operator_norm(t1, t2, opts.op_lmax, k)?)
            } else {
                if !(a.q > 4.0) {
                    return Err(sptwo_core::Error::InvalidExponent {
                        value: a.q,
                        min: 4.0,
                    }
                    .into());
                }
                let mut w = SWeights::empty(a.q);
                schatten_s_using(&mut w, t1, t2, k, &opts, &mut parallel::extend_weights)
            }
        }
        Kind::T => schatten_t_pair(a.q, t1, t2, &t_options(cli)),
    };
    let (r, mut status) = match result {
        Ok(r) => (r, Status::Passed),
        Err(sptwo_core::Error::TruncationFailure { partial }) => (
            partial,
            Status::Unreachable(format!(
                "tail {} at lmax {} does not meet the relative target",
                crate::io::fmt15(partial.tail),
                partial.lmax
            )),
        ),
        Err(e) => return Err(e.into()),
    };
    let mut report = Report::new(provenance(cli, format!("{a:?}")), &NORM_COLUMNS);
    report.push(norm_row(&r, t1, t2));
    let (lo, hi) = r.certified_interval();
    report.note("certified", r.certified);
    report.note("lower", lo);
    report.note("upper", hi);
    if r.warning.is_some() {
        report.note("below_exponent_range", true);
    }
    if a.q == f64::INFINITY && status == Status::Passed {
        let bound = match a.kind {
            Kind::S => (2.0 * (0.5 * (t1 - t2)).sin()).abs() / SQRT_2,
            Kind::T => ((2.0 * t1).cos() - (2.0 * t2).cos()).abs(),
        };
        report.note("lower_bound", bound);
        status = Status::fail_if(r.value + 1e-8 < bound, || {
            format!("operator norm {} below {bound}", r.value)
        });
    }
    Ok(Outcome { report, status })
}

/// `(theta1, theta1 + d)` with `d` log-spaced in `[dmin, dmax]`.
pub fn s_grid(theta1: f64, dmin: f64, dmax: f64, n: usize) -> Vec<(f64, f64)> {
    if n == 1 {
        return vec![(theta1, theta1 + dmin)];
    }
    (0..n)
        .map(|i| {
            let d = dmin * (dmax / dmin).powf(i as f64 / (n - 1) as f64);
            (theta1, theta1 + d)
        })
        .collect()
}

/// `(theta, pi/4)` with `theta` uniform in `[pi/6, pi/3]`.
pub fn t_grid(n: usize) -> Vec<(f64, f64)> {
    if n == 1 {
        return vec![(FRAC_PI_6, FRAC_PI_4)];
    }
    (0..n)
        .map(|i| {
            (
                FRAC_PI_6 + (FRAC_PI_3 - FRAC_PI_6) * i as f64 / (n - 1) as f64,
                FRAC_PI_4,
            )
        })
        .collect()
}

/// `C_q (q - 10)^{1/q}` for each fit with `q >= 12`.
pub fn trend_values(fits: &[HolderFit]) -> Vec<(f64, f64)> {
    fits.iter()
        .filter(|f| f.q >= 12.0)
        .map(|f| (f.q, f.max_ratio * (f.q - 10.0).powf(1.0 / f.q)))
        .collect()
}

/// Largest relative increase of the trend value from a smaller to a larger `q`.
pub fn trend_growth(values: &[(f64, f64)]) -> f64 {
    let mut growth: f64 = 0.0;
    for (i, (qa, a)) in values.iter().enumerate() {
        for (qb, b) in &values[i + 1..] {
            let (lo, hi) = if qa < qb { (a, b) } else { (b, a) };
            growth = growth.max(hi / lo - 1.0);
        }
    }
    growth
}

/// `max / min - 1` of the trend values.
pub fn trend_variation(values: &[(f64, f64)]) -> f64 {
    let max = values.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
    if values.is_empty() {
        0.0
    } else {
        max / min - 1.0
    }
}

fn qlabel(q: f64) -> String {
    crate::io::fmt15(q)
}

fn run_holder(cli: &Cli, a: &HolderArgs) -> Result<Outcome, CliError> {
    let qs = if a.q.is_empty() {
        match a.kind {
            Kind::S => vec![11.0, 12.0, 16.0, 20.0, 40.0],
            Kind::T => vec![5.0, 6.0, 8.0],
        }
    } else {
        a.q.clone()
    };
    let n = a.points.unwrap_or(match a.kind {
        Kind::S => 20,
        Kind::T => 30,
    });
    if n == 0 {
        return Err(CliError::Input("--points must be positive".into()));
    }
    if !(a.dmin > 0.0 && a.dmax >= a.dmin) {
        return Err(CliError::Input(format!(
            "need 0 < dmin <= dmax, got {} and {}",
            a.dmin, a.dmax
        )));
    }
    let grid = match a.kind {
        Kind::S => s_grid(a.theta1, a.dmin, a.dmax, n),
        Kind::T => t_grid(n),
    };
    let s_opts = SOptions {
        envelope_constant: Some(fitted_envelope_constant()),
        ..s_options(cli)
    };
    let t_opts = t_options(cli);
    let fits = qs
        .iter()
        .map(|&q| match a.kind {
            Kind::S => {
                if !(q > 4.0) {
                    return Err(sptwo_core::Error::InvalidExponent { value: q, min: 4.0 }.into());
                }
                let mut w = SWeights::empty(q);
                Ok(holder_fit_using(
                    NormKind::S,
                    q,
                    &grid,
                    &mut w,
                    &s_opts,
                    &t_opts,
                    &mut parallel::extend_weights,
                )?)
            }
            Kind::T => {
                let parts = grid
                    .par_iter()
                    .map(|pt| {
                        let mut w = SWeights::empty(q);
                        holder_fit_with(
                            NormKind::T,
                            q,
                            std::slice::from_ref(pt),
                            &mut w,
                            &s_opts,
                            &t_opts,
                        )
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(merge_fits(parts))
            }
        })
        .collect::<Result<Vec<HolderFit>, CliError>>()?;
    let columns: &[&'static str] = if a.detail {
        &NORM_COLUMNS
    } else {
        &["q", "exponent", "max_ratio"]
    };
    let mut report = Report::new(provenance(cli, format!("{a:?}")), columns);
    for f in &fits {
        if a.detail {
            for p in &f.points {
                report.push(vec![
                    f.q.into(),
                    p.theta1.into(),
                    p.theta2.into(),
                    p.value.into(),
                    p.tail.into(),
                    p.lmax.into(),
                ]);
            }
        } else {
            report.push(vec![
                f.q.into(),
                f.exponent_expected.into(),
                f.max_ratio.into(),
            ]);
        }
        let label = qlabel(f.q);
        report.note(&format!("spread_q{label}"), f.spread());
        let cert = f.points.iter().filter(|p| p.certified).count() as u64;
        report.note(&format!("certified_q{label}"), cert);
        report.note(&format!("points_q{label}"), f.points.len() as u64);
    }
    let status = match a.kind {
        Kind::T => match fits.iter().find(|f| f.spread() >= 10.0) {
            Some(f) => Status::Failed(format!(
                "ratio spread {} at p = {} is not below 10",
                f.spread(),
                f.q
            )),
            None => Status::Passed,
        },
        Kind::S => {
            let values = trend_values(&fits);
            let growth = trend_growth(&values);
            for (q, v) in &values {
                report.note(&format!("trend_q{}", qlabel(*q)), *v);
            }
            report.note("trend_growth", growth);
            report.note("trend_variation", trend_variation(&values));
            Status::fail_if(growth >= 0.1, || {
                format!("C_q (q-10)^(1/q) grows by {growth}")
            })
        }
    };
    Ok(Outcome { report, status })
}

fn merge_fits(parts: Vec<HolderFit>) -> HolderFit {
    let mut it = parts.into_iter();
    let mut acc = it.next().expect("non-empty grid");
    for f in it {
        acc.max_ratio = acc.max_ratio.max(f.max_ratio);
        acc.min_ratio = acc.min_ratio.min(f.min_ratio);
        acc.points.extend(f.points);
        acc.skipped.extend(f.skipped);
    }
    acc
}

const KAK_COLUMNS: [&str; 20] = [
    "trial", "beta", "gamma", "residual", "k1_00_re", "k1_00_im", "k1_01_re", "k1_01_im",
    "k1_10_re", "k1_10_im", "k1_11_re", "k1_11_im", "k2_00_re", "k2_00_im", "k2_01_re", "k2_01_im",
    "k2_10_re", "k2_10_im", "k2_11_re", "k2_11_im",
];

fn parse_matrix(entries: &[String]) -> Result<Mat4, CliError> {
    let values: Vec<f64> = entries
        .iter()
        .flat_map(|e| e.split_whitespace())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::Input(format!("malformed matrix entry {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    if values.len() != 16 {
        return Err(CliError::Input(format!(
            "expected 16 matrix entries, got {}",
            values.len()
        )));
    }
    let mut m = [[0.0; 4]; 4];
    for (i, v) in values.into_iter().enumerate() {
        m[i / 4][i % 4] = v;
    }
    Ok(m)
}

fn kak_row(trial: u64, r: &KAKResult, residual: f64) -> Vec<crate::io::Cell> {
    let mut row = vec![trial.into(), r.beta.into(), r.gamma.into(), residual.into()];
    for k in [&r.k1, &r.k2] {
        for z in k.matrix().iter().flatten() {
            row.push(z.re.into());
            row.push(z.im.into());
        }
    }
    row
}

fn run_kak(cli: &Cli, a: &KakArgs) -> Result<Outcome, CliError> {
    let mut report = Report::new(provenance(cli, format!("{a:?}")), &KAK_COLUMNS);
    let results: Vec<(KAKResult, f64, f64, f64)> = if a.random {
        let beta_max = a.beta_max;
        parallel::trials(cli.seed, a.trials, |rng, _| {
            let g = SpMatrix::random(rng, beta_max);
            let r = kak(&g)?;
            let again = kak(&r.reconstruct())?;
            let drift = (again.beta - r.beta)
                .abs()
                .max((again.gamma - r.gamma).abs());
            Ok::<_, sptwo_core::Error>((r, r.residual(&g), g.frobenius(), drift))
        })
        .into_iter()
        .collect::<Result<_, _>>()?
    } else {
        let g = SpMatrix::new(parse_matrix(&a.entries)?)?;
        let r = kak(&g)?;
        vec![(r, r.residual(&g), g.frobenius(), 0.0)]
    };
    let mut worst: f64 = 0.0;
    let mut drift: f64 = 0.0;
    let mut violation = None;
    for (i, (r, res, norm, d)) in results.iter().enumerate() {
        report.push(kak_row(i as u64, r, *res));
        worst = worst.max(*res);
        drift = drift.max(*d);
        if *res >= 1e-8 * norm.max(1.0) && violation.is_none() {
            violation = Some(format!("trial {i}: reconstruction residual {res:e}"));
        }
    }
    report.note("max_residual", worst);
    if a.random {
        report.note("max_drift", drift);
        if drift >= 1e-9 && violation.is_none() {
            violation = Some(format!(
                "(beta, gamma) drift {drift:e} under re-decomposition"
            ));
        }
    }
    let status = violation.map_or(Status::Passed, Status::Failed);
    Ok(Outcome { report, status })
}

fn run_quasi(cli: &Cli, a: &QuasiArgs) -> Result<Outcome, CliError> {
    if let Some(n) = a.defect_sweep {
        let rows = parallel::trials(cli.seed, n, |rng, _| {
            let x = random_cover(rng);
            let y = random_cover(rng);
            let xy = sptwo_core::quasimorphism::cover_mul(&x, &y)?;
            Ok::<_, sptwo_core::Error>((phi(&xy), phi(&x), phi(&y), defect(&x, &y)?))
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
        let mut report = Report::new(
            provenance(cli, format!("{a:?}")),
            &["phi_xy", "phi_x", "phi_y", "defect"],
        );
        let mut max: f64 = 0.0;
        for (pxy, px, py, d) in rows {
            max = max.max(d.abs());
            report.push(vec![pxy.into(), px.into(), py.into(), d.into()]);
        }
        report.note("max_defect", max);
        report.note("bound", FRAC_PI_2);
        report.note("margin", FRAC_PI_2 - max);
        let status = Status::fail_if(max >= FRAC_PI_2, || {
            format!("defect {max} is not below pi/2")
        });
        return Ok(Outcome { report, status });
    }
    let n = a.eta_sweep.unwrap_or(0);
    let rows = parallel::trials(cli.seed, n, |rng, _| {
        let g1 = random_base(rng);
        let g2 = random_base(rng);
        eta(&g1, &g2)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let mut report = Report::new(
        provenance(cli, format!("{a:?}")),
        &["eta", "near_branch_cut"],
    );
    let mut max: f64 = 0.0;
    let mut near = 0u64;
    for e in rows {
        max = max.max(e.value.abs());
        near += e.near_branch_cut as u64;
        report.push(vec![e.value.into(), e.near_branch_cut.into()]);
    }
    report.note("max_abs_eta", max);
    report.note("bound", PI);
    report.note("margin", PI - max);
    report.note("near_branch_cut", near);
    let status = Status::fail_if(max >= PI, || format!("|eta| = {max} reaches pi"));
    Ok(Outcome { report, status })
}

fn run_envelope(cli: &Cli, a: &EnvelopeArgs) -> Result<Outcome, CliError> {
    let params = match (a.p, a.preset_q) {
        (Some(p), Some(q)) => EnvelopeParams::preset(p, q, a.s, a.kappa)?,
        _ => {
            let s1 =
                a.s1.ok_or_else(|| CliError::Input("--s1 is required".into()))?;
            let s2 =
                a.s2.ok_or_else(|| CliError::Input("--s2 is required".into()))?;
            EnvelopeParams::new(s1, s2, a.s, a.kappa)?
        }
    };
    let mut report = Report::new(
        provenance(cli, format!("{a:?}")),
        &["beta", "gamma", "epsilon"],
    );
    report.note("s1", params.s1());
    report.note("s2", params.s2());
    report.note("rate", params.rate());
    if params.warning().is_some() {
        report.note("exponent_above_one", true);
    }
    if !a.sweep {
        let (b, g) = (a.beta.unwrap_or(0.0), a.gamma.unwrap_or(0.0));
        let e = epsilon(&params, b, g)?;
        report.push(vec![b.into(), g.into(), e.into()]);
        return Ok(Outcome {
            report,
            status: Status::Passed,
        });
    }
    if !(a.beta_max >= 0.0) || a.steps == 0 {
        return Err(CliError::Input(
            "--beta-max must be non-negative and --steps positive".into(),
        ));
    }
    let mut violation = None;
    for i in 0..=a.steps {
        let b = a.beta_max * i as f64 / a.steps as f64;
        let mut last = f64::INFINITY;
        for j in 0..=a.steps {
            let g = b * j as f64 / a.steps as f64;
            let e = epsilon(&params, b, g)?;
            let bound = (-params.rate() * b).exp();
            if violation.is_none() {
                if e > bound * (1.0 + 1e-12) {
                    violation = Some(format!(
                        "epsilon({b}, {g}) = {e} exceeds e^(-c beta) = {bound}"
                    ));
                } else if e > last * (1.0 + 1e-12) {
                    violation = Some(format!("epsilon increases in gamma at ({b}, {g})"));
                }
            }
            last = e;
            report.push(vec![b.into(), g.into(), e.into()]);
        }
    }
    let status = violation.map_or(Status::Passed, Status::Failed);
    Ok(Outcome { report, status })
}

fn run_ridge(cli: &Cli, a: &RidgeArgs) -> Result<Outcome, CliError> {
    if !(a.step > 0.0 && a.max >= a.step) {
        return Err(CliError::Input(format!(
            "need 0 < step <= max, got {} and {}",
            a.step, a.max
        )));
    }
    let n = (a.max / a.step).round() as usize;
    let half = n / 2;
    let grid: Vec<Vec<f64>> = (0..=n)
        .into_par_iter()
        .map(|i| {
            (0..=n)
                .map(|j| gaussian_ridge_ratio(i as f64 * a.step, j as f64 * a.step))
                .collect()
        })
        .collect();
    let sup = |m: usize| {
        let mut best = (0usize, 0usize, f64::NEG_INFINITY);
        for (i, row) in grid.iter().enumerate().take(m + 1) {
            for (j, &v) in row.iter().enumerate().take(m + 1) {
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        best
    };
    let mut report = Report::new(provenance(cli, format!("{a:?}")), &["max", "u", "v", "sup"]);
    let inner = sup(half);
    let outer = sup(n);
    for (m, (i, j, v)) in [(half, inner), (n, outer)] {
        report.push(vec![
            (m as f64 * a.step).into(),
            (i as f64 * a.step).into(),
            (j as f64 * a.step).into(),
            v.into(),
        ]);
    }
    let growth = outer.2 / inner.2 - 1.0;
    report.note("stabilization", growth);
    let status = Status::fail_if(growth >= a.slack, || format!("ridge sup grows by {growth}"));
    Ok(Outcome { report, status })
}
