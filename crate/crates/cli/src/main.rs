use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use infoeq::ensemble::{fluctuation_comparison, monte_carlo, period_changes, write_monte_carlo_csv, ChangeKind, MonteCarloConfig};
use infoeq::fitting::{fit_cobb_douglas, fit_interest, fit_okun, fit_price_level, FitOptions, FitReport, FitResult};
use infoeq::grid::GridSpec;
use infoeq::macro_models::{
    cobb_douglas_series, inflation_model, interest_series, okun_hours, price_level_series, ridge_sigma, AdAs,
    CobbDouglasParams, CurveShift, InterestParams, IsLm, ModelParams, PriceLevelParams,
};
use infoeq::timeseries::{load_csv, loess_smooth, CsvSchema, LoessConfig};
use infoeq::{Error, TimeSeries};

#[derive(Parser)]
#[command(name = "infoeq", version, about = "Information-equilibrium models: smoothing, evaluation, fitting, ensembles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// LOESS-smooth a date,value series.
    Smooth(SmoothArgs),
    /// Evaluate a model on a grid.
    Eval(EvalArgs),
    /// Fit model parameters to data and write a JSON report.
    Fit(FitArgs),
    /// Monte Carlo ensemble averages over random market exponents.
    Ensemble(EnsembleArgs),
    /// Histogram of period changes against the exponential fluctuation law.
    Fluctuation(FluctuationArgs),
}

#[derive(Args)]
struct InputFormat {
    /// Read the first two columns as date and value instead of by header name.
    #[arg(long)]
    positional: bool,
}

impl InputFormat {
    fn schema(&self) -> CsvSchema {
        if self.positional { CsvSchema::positional() } else { CsvSchema::default() }
    }
}

#[derive(Args)]
struct SmoothArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long, default_value_t = 1.0)]
    span: f64,
    #[arg(short, long)]
    output: PathBuf,
    #[command(flatten)]
    format: InputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalModel {
    PriceLevel,
    Inflation,
    Interest,
    Okun,
    CobbDouglas,
    Adas,
    Islm,
    Ridge,
}

#[derive(Args)]
struct Series {
    /// Nominal output N.
    #[arg(long)]
    n: Option<PathBuf>,
    /// Money M (currency).
    #[arg(long)]
    m: Option<PathBuf>,
    /// Price level P.
    #[arg(long)]
    p: Option<PathBuf>,
    /// Multiplies the price level on load (0.01 turns a 2009 = 100 index
    /// into the 2009 = 1 normalization of the price-level parameters).
    #[arg(long, default_value_t = 1.0)]
    p_scale: f64,
    /// Monetary base MB.
    #[arg(long)]
    mb: Option<PathBuf>,
    /// Long-term interest rate.
    #[arg(long)]
    long: Option<PathBuf>,
    /// Short-term interest rate.
    #[arg(long)]
    short: Option<PathBuf>,
    /// Capital stock K.
    #[arg(long)]
    k: Option<PathBuf>,
    /// Labor input L.
    #[arg(long)]
    l: Option<PathBuf>,
    /// Hours worked H.
    #[arg(long)]
    h: Option<PathBuf>,
    /// LOESS-smooth (degree 2, span 1) every input before use.
    #[arg(long)]
    smooth: bool,
    #[command(flatten)]
    format: InputFormat,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(value_enum)]
    model: EvalModel,
    /// Flat `name = value` parameter file using the model's symbol names.
    #[arg(long)]
    params: PathBuf,
    /// `start:stop:count[:lin|:log]`; dates for series models, the swept
    /// quantity for curves, κ for the ridge.
    #[arg(long, allow_hyphen_values = true)]
    grid: GridSpec,
    #[command(flatten)]
    series: Series,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum FitModel {
    PriceLevel,
    Interest,
    CobbDouglas,
    Okun,
}

#[derive(Args)]
struct FitArgs {
    #[arg(value_enum)]
    model: FitModel,
    /// Starting parameters, same format as `eval --params`.
    #[arg(long)]
    x0: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    grid: GridSpec,
    #[command(flatten)]
    series: Series,
    /// JSON fit report.
    #[arg(long)]
    report: PathBuf,
    #[arg(long, default_value_t = infoeq::fitting::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = infoeq::fitting::DEFAULT_MAX_ITER)]
    max_iter: usize,
}

#[derive(Args)]
struct EnsembleArgs {
    /// TOML file with n0, a_mean, a_sd, runs, optional seed and m_grid.
    #[arg(long)]
    config: PathBuf,
    /// Overrides the seed in the configuration.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Changes {
    /// 100 × period log difference.
    Log,
    /// Period level difference.
    Level,
}

#[derive(Args)]
struct FluctuationArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, default_value_t = 24)]
    bins: usize,
    #[arg(long, value_enum, default_value_t = Changes::Log)]
    changes: Changes,
    #[arg(short, long)]
    output: PathBuf,
    #[command(flatten)]
    format: InputFormat,
}

const USAGE: u8 = 1;
const NOT_CONVERGED: u8 = 4;

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io { .. }
            | Error::Parse { .. }
            | Error::DuplicateTimestamp { .. }
            | Error::Empty
            | Error::InvalidSeries(_)
            | Error::TooShort { .. }
            | Error::InvalidConfig(_) => 2,
            Error::OutOfRange { .. }
            | Error::Domain(_)
            | Error::ModelDomain(_)
            | Error::SingularFit
            | Error::RankDeficient
            | Error::DegenerateEquilibrium
            | Error::InsufficientData { .. } => 3,
        };
        Failure { code, msg: e.to_string() }
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: USAGE, msg: msg.into() }
}

fn write_output(path: &Path, bytes: &[u8]) -> Outcome {
    fs::write(path, bytes).map_err(|source| Error::Io { path: path.to_path_buf(), source }.into())
}

impl Series {
    fn load(&self, path: &Option<PathBuf>, flag: &str, model: &str) -> Result<TimeSeries, Failure> {
        let path = path.as_ref().ok_or_else(|| usage(format!("{model} needs --{flag}")))?;
        let ts = load_csv(path, &self.format.schema())?;
        if self.smooth {
            Ok(loess_smooth(&ts, &LoessConfig::default())?)
        } else {
            Ok(ts)
        }
    }

    fn load_price(&self, model: &str) -> Result<TimeSeries, Failure> {
        let p = self.load(&self.p, "p", model)?;
        if self.p_scale == 1.0 {
            return Ok(p);
        }
        if !(self.p_scale > 0.0 && self.p_scale.is_finite()) {
            return Err(usage(format!("--p-scale must be positive, got {}", self.p_scale)));
        }
        Ok(p.map_values(|v| v * self.p_scale)?)
    }
}

fn csv_bytes(write: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Vec<u8> {
    let mut buf = Vec::new();
    write(&mut buf).expect("writing to memory");
    buf
}

fn smooth(a: SmoothArgs) -> Outcome {
    let cfg = LoessConfig::new(a.degree, a.span)?;
    let ts = load_csv(&a.input, &a.format.schema())?;
    let out = loess_smooth(&ts, &cfg)?;
    write_output(&a.output, &csv_bytes(|b| out.write_csv(b)))?;
    println!("{} points", out.len());
    Ok(())
}

fn eval(a: EvalArgs) -> Outcome {
    let params = ModelParams::load(&a.params)?;
    let grid = a.grid.points()?;
    let s = &a.series;
    let series_out = |ts: TimeSeries| csv_bytes(|b| ts.write_csv(b));
    let bytes = match a.model {
        EvalModel::PriceLevel | EvalModel::Inflation => {
            let name = if matches!(a.model, EvalModel::Inflation) { "inflation" } else { "price-level" };
            let n = s.load(&s.n, "n", name)?;
            let m = s.load(&s.m, "m", name)?;
            let p = PriceLevelParams::from_params(&params)?;
            series_out(if matches!(a.model, EvalModel::Inflation) {
                inflation_model(&n, &m, &p, &grid)?
            } else {
                price_level_series(&n, &m, &p, &grid)?
            })
        }
        EvalModel::Interest => {
            let n = s.load(&s.n, "n", "interest")?;
            let m = s.load(&s.m, "m", "interest")?;
            series_out(interest_series(&n, &m, &InterestParams::from_params(&params)?, &grid)?)
        }
        EvalModel::Okun => {
            let n = s.load(&s.n, "n", "okun")?;
            let p = s.load_price("okun")?;
            series_out(okun_hours(&n, &p, params.get("k_H")?, &grid)?)
        }
        EvalModel::CobbDouglas => {
            let k = s.load(&s.k, "k", "cobb-douglas")?;
            let l = s.load(&s.l, "l", "cobb-douglas")?;
            series_out(cobb_douglas_series(&k, &l, &CobbDouglasParams::from_params(&params)?, &grid)?)
        }
        EvalModel::Adas => {
            let c = AdAs::from_params(&params)?.curves(&grid)?;
            let mut out = String::from("delta,ad_price,sras_price,s,lras_price\n");
            for (i, d) in grid.iter().enumerate() {
                let _ = writeln!(out, "{},{},{},{},{}", d, c.ad[i].1, c.sras[i].1, c.lras[i].0, c.lras[i].1);
            }
            out.into_bytes()
        }
        EvalModel::Islm => {
            let shift = CurveShift {
                delta_n: params.get_or("delta_N", 0.0),
                delta_m: params.get_or("delta_M", 0.0),
                delta_s: params.get_or("delta_S", 0.0),
            };
            let c = IsLm::from_params(&params)?.curves(&shift, &grid)?;
            let mut out = String::from("delta,lm_rate,is_rate\n");
            for (i, d) in grid.iter().enumerate() {
                let _ = writeln!(out, "{},{},{}", d, c.lm[i].1, c.is[i].1);
            }
            out.into_bytes()
        }
        EvalModel::Ridge => {
            let gamma = params.get("gamma")?;
            let mut out = String::from("kappa,sigma\n");
            for &kappa in &grid {
                let _ = writeln!(out, "{},{}", kappa, ridge_sigma(kappa, gamma)?);
            }
            out.into_bytes()
        }
    };
    write_output(&a.output, &bytes)?;
    println!("{} rows", grid.len());
    Ok(())
}

fn fit(a: FitArgs) -> Outcome {
    let x0 = ModelParams::load(&a.x0)?;
    let grid = a.grid.points()?;
    let opts = &FitOptions { tol: a.tol, max_iter: a.max_iter };
    let s = &a.series;
    let (name, result): (&str, FitResult) = match a.model {
        FitModel::PriceLevel => {
            let n = s.load(&s.n, "n", "price-level")?;
            let m = s.load(&s.m, "m", "price-level")?;
            let p = s.load_price("price-level")?;
            ("price-level", fit_price_level(&n, &m, &p, &grid, &PriceLevelParams::from_params(&x0)?, opts)?)
        }
        FitModel::Interest => {
            let n = s.load(&s.n, "n", "interest")?;
            let m = s.load(&s.m, "m", "interest")?;
            let mb = s.load(&s.mb, "mb", "interest")?;
            let long = s.load(&s.long, "long", "interest")?;
            let short = s.load(&s.short, "short", "interest")?;
            let ip = InterestParams::from_params(&x0)?;
            ("interest", fit_interest(&n, &m, &mb, &long, &short, &grid, &ip, opts)?)
        }
        FitModel::CobbDouglas => {
            let n = s.load(&s.n, "n", "cobb-douglas")?;
            let k = s.load(&s.k, "k", "cobb-douglas")?;
            let l = s.load(&s.l, "l", "cobb-douglas")?;
            ("cobb-douglas", fit_cobb_douglas(&n, &k, &l, &grid, &CobbDouglasParams::from_params(&x0)?, opts)?)
        }
        FitModel::Okun => {
            let n = s.load(&s.n, "n", "okun")?;
            let p = s.load_price("okun")?;
            let h = s.load(&s.h, "h", "okun")?;
            ("okun", fit_okun(&n, &p, &h, &grid, x0.get("k_H")?, opts)?)
        }
    };
    let report = FitReport::new(name, &result);
    write_output(&a.report, format!("{}\n", report.to_json()).as_bytes())?;
    for (p, v) in &report.params {
        println!("{p} = {v}");
    }
    println!("f_star = {}", report.f_star);
    if result.converged {
        Ok(())
    } else {
        Err(Failure { code: NOT_CONVERGED, msg: format!("no convergence after {} iterations", result.iterations) })
    }
}

fn ensemble(a: EnsembleArgs) -> Outcome {
    let text = fs::read_to_string(&a.config).map_err(|source| Error::Io { path: a.config.clone(), source })?;
    let cfg = MonteCarloConfig::from_toml(&text, a.seed)?;
    let runs = monte_carlo(&cfg)?;
    write_output(&a.output, &csv_bytes(|b| write_monte_carlo_csv(&runs, &cfg.m_grid, b)))?;
    println!("{} rows", runs.len() * cfg.m_grid.len());
    Ok(())
}

fn fluctuation(a: FluctuationArgs) -> Outcome {
    let ts = load_csv(&a.input, &a.format.schema())?;
    let kind = match a.changes {
        Changes::Log => ChangeKind::LogPercent,
        Changes::Level => ChangeKind::Level,
    };
    let hist = fluctuation_comparison(&period_changes(&ts, kind)?, a.bins)?;
    write_output(&a.output, &csv_bytes(|b| hist.write_csv(b)))?;
    println!("{} samples in {} bins", hist.total(), hist.bins.len());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Smooth(a) => smooth(a),
        Command::Eval(a) => eval(a),
        Command::Fit(a) => fit(a),
        Command::Ensemble(a) => ensemble(a),
        Command::Fluctuation(a) => fluctuation(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("infoeq: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
