//! Ensemble averages over many markets `n_i = m^(a_i)`.
//!
//! The partition function is `Z(m) = Σ m^(-a_i)`, so `log m` plays the role of
//! an inverse temperature and each market carries weight `m^(-a_i) / Z`.
//! Every observable is evaluated with the weights shifted by their maximum
//! exponent, which keeps large money supplies and wide exponent spreads finite.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{domain, model_domain, Error, Result};
use crate::grid::{logspace, GridSpec};
use crate::timeseries::TimeSeries;

#[derive(Debug, Clone, PartialEq)]
pub struct MarketEnsemble {
    exponents: Vec<f64>,
}

/// `log Z = shift + log(sum)` with every scaled term in `(0, 1]`.
#[derive(Debug, Clone, Copy)]
struct ScaledSum {
    shift: f64,
    sum: f64,
}

impl MarketEnsemble {
    pub fn new(exponents: Vec<f64>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidConfig("ensemble needs at least one market".into()));
        }
        if exponents.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidConfig("market exponents must be finite".into()));
        }
        Ok(Self { exponents })
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    /// Number of markets `N0`.
    pub fn n0(&self) -> usize {
        self.exponents.len()
    }

    fn log_m(m: f64) -> Result<f64> {
        if m > 0.0 && m.is_finite() {
            Ok(m.ln())
        } else {
            Err(domain(format!("money supply must be positive, got {m}")))
        }
    }

    fn scaled(&self, log_m: f64) -> ScaledSum {
        let shift = self.exponents.iter().map(|a| -a * log_m).fold(f64::NEG_INFINITY, f64::max);
        let sum = self.exponents.iter().map(|a| (-a * log_m - shift).exp()).sum();
        ScaledSum { shift, sum }
    }

    /// Boltzmann weights `m^(-a_i) / Z`.
    pub fn weights(&self, m: f64) -> Result<Vec<f64>> {
        let lm = Self::log_m(m)?;
        let z = self.scaled(lm);
        Ok(self.exponents.iter().map(|a| (-a * lm - z.shift).exp() / z.sum).collect())
    }

    pub fn log_partition(&self, m: f64) -> Result<f64> {
        let z = self.scaled(Self::log_m(m)?);
        Ok(z.shift + z.sum.ln())
    }

    /// `Z(m) = Σ m^(-a_i)`.
    pub fn partition_fn(&self, m: f64) -> Result<f64> {
        let z = self.scaled(Self::log_m(m)?);
        Ok(z.sum * z.shift.exp())
    }

    /// Ensemble expectation `Σ w_i f(a_i)`.
    pub fn expectation(&self, m: f64, f: impl Fn(f64) -> f64) -> Result<f64> {
        let w = self.weights(m)?;
        Ok(self.exponents.iter().zip(&w).map(|(&a, &w)| w * f(a)).sum())
    }

    /// `⟨a⟩ = -∂ log Z / ∂ log m`, the aggregate transfer index.
    pub fn avg_index(&self, m: f64) -> Result<f64> {
        self.expectation(m, |a| a)
    }

    /// `⟨N(m)⟩ = N0² / Z(m)`.
    pub fn avg_output(&self, m: f64) -> Result<f64> {
        let z = self.scaled(Self::log_m(m)?);
        let n0 = self.n0() as f64;
        Ok(n0 * n0 / z.sum * (-z.shift).exp())
    }

    /// `⟨a m^(a-1)⟩` under the partition-function weights.
    pub fn avg_price(&self, m: f64) -> Result<f64> {
        let lm = Self::log_m(m)?;
        self.expectation(m, |a| a * ((a - 1.0) * lm).exp())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub n0: usize,
    pub a_mean: f64,
    pub a_sd: f64,
    pub runs: usize,
    pub m_grid: Vec<f64>,
    pub seed: u64,
}

impl MonteCarloConfig {
    /// 100 markets, exponents N(1.5, 0.5²), 500 runs, 200 log-spaced points on
    /// `[1, 1000]`.
    pub fn reference(seed: u64) -> Self {
        Self { n0: 100, a_mean: 1.5, a_sd: 0.5, runs: 500, m_grid: default_m_grid(), seed }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.n0 == 0 || self.runs == 0 {
            return bad("n0 and runs must be positive");
        }
        if !(self.a_mean.is_finite() && self.a_sd.is_finite() && self.a_sd >= 0.0) {
            return bad("a_mean must be finite and a_sd non-negative");
        }
        if self.m_grid.is_empty() || self.m_grid.iter().any(|&m| !(m > 0.0 && m.is_finite())) {
            return bad("m_grid must be non-empty and positive");
        }
        if self.m_grid.windows(2).any(|w| w[1] <= w[0]) {
            return bad("m_grid must be strictly increasing");
        }
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    n0: usize,
    a_mean: f64,
    a_sd: f64,
    runs: usize,
    seed: Option<u64>,
    m_grid: Option<String>,
}

impl MonteCarloConfig {
    /// Reads a TOML configuration:
    ///
    /// ```toml
    /// n0 = 100
    /// a_mean = 1.5
    /// a_sd = 0.5
    /// runs = 500
    /// seed = 7                  # may instead be supplied as `seed`
    /// m_grid = "1:1000:200:log" # optional
    /// ```
    ///
    /// A seed is mandatory; `seed` overrides the one in the file.
    pub fn from_toml(text: &str, seed: Option<u64>) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        let seed = seed
            .or(file.seed)
            .ok_or_else(|| Error::InvalidConfig("a seed is required for reproducible runs".into()))?;
        let m_grid = match file.m_grid {
            Some(spec) => spec.parse::<GridSpec>()?.points()?,
            None => default_m_grid(),
        };
        let cfg = Self { n0: file.n0, a_mean: file.a_mean, a_sd: file.a_sd, runs: file.runs, m_grid, seed };
        cfg.validate()?;
        Ok(cfg)
    }
}

pub fn default_m_grid() -> Vec<f64> {
    logspace(1.0, 1000.0, 200).expect("static grid")
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloRun {
    pub run: usize,
    pub exponents: Vec<f64>,
    pub avg_a: Vec<f64>,
    pub avg_n: Vec<f64>,
    pub avg_price: Vec<f64>,
}

/// The random stream for one run: ChaCha20 keyed by the seed, with the run
/// index selecting the stream, so runs can be evaluated in any order.
pub fn run_rng(seed: u64, run: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(run as u64);
    rng
}

pub fn draw_ensemble(cfg: &MonteCarloConfig, run: usize) -> Result<MarketEnsemble> {
    let normal = Normal::new(cfg.a_mean, cfg.a_sd)
        .map_err(|e| Error::InvalidConfig(format!("exponent distribution: {e}")))?;
    let mut rng = run_rng(cfg.seed, run);
    MarketEnsemble::new((0..cfg.n0).map(|_| normal.sample(&mut rng)).collect())
}

fn simulate_run(cfg: &MonteCarloConfig, run: usize) -> Result<MonteCarloRun> {
    let ens = draw_ensemble(cfg, run)?;
    let eval = |f: &dyn Fn(f64) -> Result<f64>| cfg.m_grid.iter().map(|&m| f(m)).collect::<Result<Vec<_>>>();
    Ok(MonteCarloRun {
        run,
        avg_a: eval(&|m| ens.avg_index(m))?,
        avg_n: eval(&|m| ens.avg_output(m))?,
        avg_price: eval(&|m| ens.avg_price(m))?,
        exponents: ens.exponents,
    })
}

/// Runs are evaluated in parallel; the result is ordered by run index and is
/// identical to a serial evaluation.
pub fn monte_carlo(cfg: &MonteCarloConfig) -> Result<Vec<MonteCarloRun>> {
    cfg.validate()?;
    (0..cfg.runs).into_par_iter().map(|run| simulate_run(cfg, run)).collect()
}

pub fn monte_carlo_serial(cfg: &MonteCarloConfig) -> Result<Vec<MonteCarloRun>> {
    cfg.validate()?;
    (0..cfg.runs).map(|run| simulate_run(cfg, run)).collect()
}

/// CSV `run,m,avg_a,avg_n,avg_price`, one row per run and grid point.
pub fn write_monte_carlo_csv<W: Write>(runs: &[MonteCarloRun], m_grid: &[f64], mut out: W) -> std::io::Result<()> {
    writeln!(out, "run,m,avg_a,avg_n,avg_price")?;
    for r in runs {
        for (j, m) in m_grid.iter().enumerate() {
            writeln!(out, "{},{},{},{},{}", r.run, m, r.avg_a[j], r.avg_n[j], r.avg_price[j])?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyParams {
    pub k: f64,
    pub gamma: f64,
    pub m0: f64,
}

impl EntropyParams {
    pub fn new(k: f64, gamma: f64, m0: f64) -> Result<Self> {
        if !(k > 0.0 && gamma > 0.0 && m0 > 0.0) {
            return Err(model_domain(format!("entropy parameters must be positive, got {k}, {gamma}, {m0}")));
        }
        Ok(Self { k, gamma, m0 })
    }

    fn scaled(&self, n: f64) -> Result<f64> {
        let x = n / (self.gamma * self.m0);
        if x >= 1.0 && x.is_finite() {
            Ok(x)
        } else {
            Err(model_domain(format!("N/(gamma M0) = {x} is below 1")))
        }
    }
}

/// `S_e = (1/k) log Γ(N/(γ M0) + 1)`.
pub fn entropy(n: f64, p: &EntropyParams) -> Result<f64> {
    Ok(ln_gamma(p.scaled(n)? + 1.0) / p.k)
}

/// Pre-Stirling form `(1/k) x (log x - 1)` with `x = N/(γ M0)`.
pub fn entropy_stirling(n: f64, p: &EntropyParams) -> Result<f64> {
    let x = p.scaled(n)?;
    Ok(x * (x.ln() - 1.0) / p.k)
}

/// First-order change `ΔS_e ≈ ΔN/(k γ M0) log(N/(γ M0))`.
pub fn entropy_delta(n: f64, dn: f64, p: &EntropyParams) -> Result<f64> {
    let x = p.scaled(n)?;
    Ok(dn / (p.k * p.gamma * p.m0) * x.ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChangeKind {
    /// `100 · Δ log N`.
    #[default]
    LogPercent,
    /// `ΔN` in series units.
    Level,
}

/// Period-on-period changes of a series.
pub fn period_changes(ts: &TimeSeries, kind: ChangeKind) -> Result<Vec<f64>> {
    if kind == ChangeKind::LogPercent {
        if let Some(v) = ts.values().iter().find(|&&v| v <= 0.0) {
            return Err(domain(format!("log change of non-positive value {v}")));
        }
    }
    Ok(ts
        .values()
        .windows(2)
        .map(|w| match kind {
            ChangeKind::LogPercent => 100.0 * (w[1].ln() - w[0].ln()),
            ChangeKind::Level => w[1] - w[0],
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub left: f64,
    pub right: f64,
    pub count: u64,
    /// Count implied by the mirrored bin under `P(+Δ)/P(-Δ) = e^Δ`.
    pub theory: f64,
}

impl HistogramBin {
    pub fn center(&self) -> f64 {
        0.5 * (self.left + self.right)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationHistogram {
    pub bins: Vec<HistogramBin>,
}

pub const MIN_FLUCTUATION_SAMPLES: usize = 30;

/// Histogram of changes on bins symmetric about zero, with the fluctuation
/// law's prediction for each bin.
///
/// Bins with non-negative centre carry their observed count as the theory
/// value; a bin at `-Δ` gets `count(+Δ) · e^(-Δ)`, so the curve is normalized
/// to the positive-side mass.
pub fn fluctuation_comparison(samples: &[f64], bins: usize) -> Result<FluctuationHistogram> {
    if bins == 0 {
        return Err(Error::InvalidConfig("bins must be positive".into()));
    }
    if samples.len() < MIN_FLUCTUATION_SAMPLES {
        return Err(Error::InsufficientData { need: MIN_FLUCTUATION_SAMPLES, got: samples.len() });
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(domain("samples must be finite"));
    }
    let mut half = samples.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if half == 0.0 {
        half = 1.0;
    }
    let width = 2.0 * half / bins as f64;
    let edge = |i: usize| if i == bins { half } else { -half + width * i as f64 };

    let mut counts = vec![0u64; bins];
    // negative samples are binned as mirror images so that `+Δ` and `-Δ`
    // always land in paired bins, including on bin edges
    let index = |x: f64| (((x + half) / width).floor() as usize).min(bins - 1);
    for &x in samples {
        let i = if x < 0.0 { bins - 1 - index(-x) } else { index(x) };
        counts[i] += 1;
    }
    let bins_out = (0..bins)
        .map(|i| {
            let (left, right) = (edge(i), edge(i + 1));
            let c = 0.5 * (left + right);
            let mirror = bins - 1 - i;
            let theory = if c >= 0.0 { counts[i] as f64 } else { counts[mirror] as f64 * c.exp() };
            HistogramBin { left, right, count: counts[i], theory }
        })
        .collect();
    Ok(FluctuationHistogram { bins: bins_out })
}

impl FluctuationHistogram {
    pub fn total(&self) -> u64 {
        self.bins.iter().map(|b| b.count).sum()
    }

    /// `(Δ, count(+Δ)/count(-Δ))` for mirrored bin pairs with positive centre
    /// and a non-empty negative partner.
    pub fn measured_ratios(&self) -> Vec<(f64, f64)> {
        let n = self.bins.len();
        (0..n)
            .filter(|&i| self.bins[i].center() > 0.0)
            .filter_map(|i| {
                let neg = self.bins[n - 1 - i].count;
                (neg > 0).then(|| (self.bins[i].center(), self.bins[i].count as f64 / neg as f64))
            })
            .collect()
    }

    /// CSV `bin_left,bin_right,count,theory`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "bin_left,bin_right,count,theory")?;
        for b in &self.bins {
            writeln!(out, "{},{},{},{}", b.left, b.right, b.count, b.theory)?;
        }
        Ok(())
    }
}
