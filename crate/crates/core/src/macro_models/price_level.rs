//! Price level `P : N ⇄ M` with a slowly varying index
//! `k(N, M) = log(N/(γ M0)) / log(M/(γ M0))`.

use serde::{Deserialize, Serialize};

use crate::error::{at_point, model_domain, Result};
use crate::macro_models::ModelParams;
use crate::timeseries::{log_growth, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriceLevelParams {
    pub alpha: f64,
    pub gamma: f64,
    #[serde(rename = "M0")]
    pub m0: f64,
}

impl PriceLevelParams {
    pub fn new(alpha: f64, gamma: f64, m0: f64) -> Result<Self> {
        for (name, x) in [("alpha", alpha), ("gamma", gamma), ("M0", m0)] {
            if !(x > 0.0 && x.is_finite()) {
                return Err(model_domain(format!("{name} must be positive, got {x}")));
            }
        }
        Ok(Self { alpha, gamma, m0 })
    }

    /// US core PCE parameters (PCE 2009 = 1).
    pub fn us() -> Self {
        Self { alpha: 0.641, gamma: 5.93e-4, m0: 603.8 }
    }

    pub fn from_params(p: &ModelParams) -> Result<Self> {
        Self::new(p.get("alpha")?, p.get("gamma")?, p.get("M0")?)
    }

    /// The scale `γ M0` that anchors both logarithms.
    pub fn scale(&self) -> f64 {
        self.gamma * self.m0
    }

    fn log_scaled(&self, what: &str, x: f64) -> Result<f64> {
        let r = x / self.scale();
        if r > 1.0 && r.is_finite() {
            Ok(r.ln())
        } else {
            Err(model_domain(format!("{what}/(gamma M0) = {r} must exceed 1")))
        }
    }
}

pub fn k_index(n: f64, m: f64, p: &PriceLevelParams) -> Result<f64> {
    Ok(p.log_scaled("N", n)? / p.log_scaled("M", m)?)
}

/// Analytic partial derivatives `(∂k/∂N, ∂k/∂M)`.
pub fn k_index_gradient(n: f64, m: f64, p: &PriceLevelParams) -> Result<(f64, f64)> {
    let ln_n = p.log_scaled("N", n)?;
    let ln_m = p.log_scaled("M", m)?;
    Ok((1.0 / (n * ln_m), -ln_n / (m * ln_m * ln_m)))
}

/// `P = α k (M/M0)^(k-1)` with `k = k_index(N, M)`.
pub fn price_level(n: f64, m: f64, p: &PriceLevelParams) -> Result<f64> {
    let k = k_index(n, m, p)?;
    Ok(price_with_index(k, m, p))
}

/// The price formula with the index supplied directly.
pub fn price_with_index(k: f64, m: f64, p: &PriceLevelParams) -> f64 {
    p.alpha * k * ((k - 1.0) * (m / p.m0).ln()).exp()
}

/// Evaluates [`price_level`] on `grid` using linearly interpolated inputs.
pub fn price_level_series(
    n_ts: &TimeSeries,
    m_ts: &TimeSeries,
    p: &PriceLevelParams,
    grid: &[f64],
) -> Result<TimeSeries> {
    let v = grid
        .iter()
        .map(|&t| {
            price_level(n_ts.interp_linear(t)?, m_ts.interp_linear(t)?, p).map_err(|e| at_point(t, e))
        })
        .collect::<Result<Vec<_>>>()?;
    TimeSeries::from_columns("price level", grid.to_vec(), v)
}

/// Inflation rate: log growth of the modelled price level.
pub fn inflation_model(
    n_ts: &TimeSeries,
    m_ts: &TimeSeries,
    p: &PriceLevelParams,
    grid: &[f64],
) -> Result<TimeSeries> {
    Ok(log_growth(&price_level_series(n_ts, m_ts, p, grid)?)?.renamed("inflation"))
}

/// `(π, n)` growth rates implied by index `k` and base growth `m`.
pub fn growth_relations(k: f64, m_growth: f64) -> (f64, f64) {
    ((k - 1.0) * m_growth, k * m_growth)
}

/// Normalized base `σ = M/M0` on the ridge `∂P/∂σ = 0`, for
/// `κ = log(M/C0) / log(N/C0)` and `γ = C0/M0`.
pub fn ridge_sigma(kappa: f64, gamma: f64) -> Result<f64> {
    if !(kappa > 0.0 && gamma > 0.0) {
        return Err(model_domain(format!("ridge needs kappa > 0 and gamma > 0, got {kappa}, {gamma}")));
    }
    Ok(gamma * (-(kappa + gamma.ln()) / kappa).exp())
}

/// Price level divided by its normalization, as a function of the normalized
/// base `σ` at fixed output: `P/α = k σ^(k-1)` with
/// `k = log(N/C0) / log(σ/γ)`.
pub fn normalized_price(sigma: f64, log_n_over_c0: f64, gamma: f64) -> f64 {
    let k = log_n_over_c0 / (sigma / gamma).ln();
    k * ((k - 1.0) * sigma.ln()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_index_examples() {
        let p = PriceLevelParams::new(1.0, 0.01, 100.0).unwrap();
        assert_eq!(k_index(50.0, 50.0, &p).unwrap(), 1.0);
        // M/(γM0) = 20, N/(γM0) = 400 => k = 2
        assert!((k_index(400.0, 20.0, &p).unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(k_index(0.5, 20.0, &p), Err(crate::Error::ModelDomain(_))));
        assert!(matches!(k_index(400.0, 1.0, &p), Err(crate::Error::ModelDomain(_))));
    }

    #[test]
    fn price_level_limits() {
        let p = PriceLevelParams::new(0.7, 0.01, 100.0).unwrap();
        // k = 1 => P = alpha
        assert!((price_level(30.0, 30.0, &p).unwrap() - 0.7).abs() < 1e-15);
        // k = 2 => P = 2 alpha m / m0
        let m = 20.0;
        assert!((price_level(m * m, m, &p).unwrap() - 2.0 * 0.7 * m / 100.0).abs() < 1e-15);
    }

    #[test]
    fn growth_relation_examples() {
        let (pi, n) = growth_relations(2.0, 0.03);
        assert_eq!((pi, n), (0.03, 0.06));
        assert_eq!(growth_relations(1.0, 0.7).0, 0.0);
        let (pi, n) = growth_relations(1.37, 0.045);
        assert!((n - pi - 0.045).abs() < 1e-16);
    }

    #[test]
    fn ridge_examples() {
        for g in [1e-3, 0.5, 7.0] {
            assert!((ridge_sigma(1.0, g).unwrap() - (-1f64).exp()).abs() < 1e-15);
        }
        for kappa in [0.5, 1.3, 4.0] {
            assert!((ridge_sigma(kappa, 1.0).unwrap() - (-1f64).exp()).abs() < 1e-15);
        }
        assert!(ridge_sigma(0.0, 1.0).is_err());
    }
}
