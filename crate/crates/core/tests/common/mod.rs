#![allow(dead_code)]

use std::path::PathBuf;

use infoeq::grid::linspace;
use infoeq::macro_models::{
    cobb_douglas, interest_rate, price_level, CobbDouglasParams, InterestParams, PriceLevelParams,
};
use infoeq::TimeSeries;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn years() -> Vec<f64> {
    linspace(1960.0, 2014.0, 55).unwrap()
}

pub fn exp_series(name: &str, level: f64, rate: f64, grid: &[f64]) -> TimeSeries {
    let v = grid.iter().map(|t| level * (rate * (t - 1960.0)).exp()).collect();
    TimeSeries::from_columns(name, grid.to_vec(), v).unwrap()
}

/// Output and currency growing at the long-run US rates.
pub fn output_and_money(grid: &[f64]) -> (TimeSeries, TimeSeries) {
    (exp_series("N", 543.0, 0.0643, grid), exp_series("M", 32.0, 0.0692, grid))
}

/// Multiplies each value by `1 + rel * u`, `u` uniform on `[-1, 1]`.
pub fn with_noise(ts: &TimeSeries, rel: f64, seed: u64) -> TimeSeries {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let v = ts.values().iter().map(|v| v * (1.0 + rel * rng.random_range(-1.0..=1.0))).collect();
    TimeSeries::from_columns(ts.name(), ts.times().to_vec(), v).unwrap()
}

pub fn synthetic_price(n: &TimeSeries, m: &TimeSeries, p: &PriceLevelParams) -> TimeSeries {
    let v = n
        .values()
        .iter()
        .zip(m.values())
        .map(|(&n, &m)| price_level(n, m, p).unwrap())
        .collect();
    TimeSeries::from_columns("P", n.times().to_vec(), v).unwrap()
}

pub struct InterestFixture {
    pub n: TimeSeries,
    pub m: TimeSeries,
    pub mb: TimeSeries,
    pub long: TimeSeries,
    pub short: TimeSeries,
}

pub fn interest_fixture(ip: &InterestParams, grid: &[f64]) -> InterestFixture {
    let (n, m) = output_and_money(grid);
    // the base grows faster than currency late in the sample
    let mb_v = grid
        .iter()
        .map(|t| 50.0 * (0.069 * (t - 1960.0)).exp() * (1.0 + 0.5 * ((t - 1960.0) / 54.0).powi(4)))
        .collect();
    let mb = TimeSeries::from_columns("MB", grid.to_vec(), mb_v).unwrap();
    let rate = |base: &TimeSeries| {
        let v = n.values().iter().zip(base.values()).map(|(&n, &b)| interest_rate(n, b, ip).unwrap()).collect();
        TimeSeries::from_columns("i", grid.to_vec(), v).unwrap()
    };
    let long = rate(&m);
    let short = rate(&mb);
    InterestFixture { n, m, mb, long, short }
}

pub struct ProductionFixture {
    pub n: TimeSeries,
    pub k: TimeSeries,
    pub l: TimeSeries,
}

/// Capital and labor with cyclical components so the log design has full rank.
pub fn production_fixture(cd: &CobbDouglasParams, grid: &[f64]) -> ProductionFixture {
    let k_v: Vec<f64> = grid
        .iter()
        .map(|t| 17.0e6 * (0.031 * (t - 1960.0)).exp() * (1.0 + 0.03 * (t / 4.0).sin()))
        .collect();
    let l_v: Vec<f64> = grid
        .iter()
        .map(|t| 66.0 * (0.012 * (t - 1960.0)).exp() * (1.0 + 0.04 * (t / 2.5).cos()))
        .collect();
    let n_v = k_v.iter().zip(&l_v).map(|(&k, &l)| cobb_douglas(k, l, cd).unwrap()).collect();
    ProductionFixture {
        n: TimeSeries::from_columns("N", grid.to_vec(), n_v).unwrap(),
        k: TimeSeries::from_columns("K", grid.to_vec(), k_v).unwrap(),
        l: TimeSeries::from_columns("L", grid.to_vec(), l_v).unwrap(),
    }
}

/// Every sign pattern of a ±`rel` perturbation of `x`.
pub fn perturbations(x: &[f64], rel: f64) -> Vec<Vec<f64>> {
    (0..1usize << x.len())
        .map(|mask| {
            x.iter()
                .enumerate()
                .map(|(i, v)| if mask >> i & 1 == 1 { v * (1.0 + rel) } else { v * (1.0 - rel) })
                .collect()
        })
        .collect()
}

pub fn max_rel_err(got: &[f64], want: &[f64]) -> f64 {
    got.iter().zip(want).map(|(g, w)| ((g - w) / w).abs()).fold(0.0, f64::max)
}
