//! Labor market `P : N ⇄ H`, giving `H = (1/k_H) N/P` (Okun's law in growth
//! rates).

use crate::error::{at_point, model_domain, Result};
use crate::timeseries::{log_growth, TimeSeries};

/// US hours parameter, hours per G$.
pub const K_H_US: f64 = 0.43;

pub fn hours(n: f64, p: f64, k_h: f64) -> Result<f64> {
    if !(n > 0.0 && p > 0.0 && k_h > 0.0) {
        return Err(model_domain(format!("hours need N, P, k_H > 0, got {n}, {p}, {k_h}")));
    }
    Ok(n / p / k_h)
}

/// Modelled hours on `grid`.
pub fn okun_hours(n_ts: &TimeSeries, p_ts: &TimeSeries, k_h: f64, grid: &[f64]) -> Result<TimeSeries> {
    let v = grid
        .iter()
        .map(|&t| hours(n_ts.interp_linear(t)?, p_ts.interp_linear(t)?, k_h).map_err(|e| at_point(t, e)))
        .collect::<Result<Vec<_>>>()?;
    TimeSeries::from_columns("hours", grid.to_vec(), v)
}

/// `d/dt log H`, which equals `d/dt log(N/P)` because `k_H` is constant.
pub fn okun_growth(n_ts: &TimeSeries, p_ts: &TimeSeries, k_h: f64, grid: &[f64]) -> Result<TimeSeries> {
    log_growth(&okun_hours(n_ts, p_ts, k_h, grid)?)
}
