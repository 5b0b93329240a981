//! Macroeconomic models assembled from information-equilibrium relations.

mod adas;
mod interest;
mod labor;
mod price_level;
mod solow;

use std::collections::BTreeMap;
use std::path::Path;

pub use adas::{AdAs, AdAsCurves};
pub use interest::{interest_rate, interest_series, InterestParams, IsLm, IsLmCurves};
pub use labor::{hours, okun_growth, okun_hours, K_H_US};
pub use price_level::{
    growth_relations, inflation_model, k_index, k_index_gradient, normalized_price, price_level,
    price_level_series, price_with_index, ridge_sigma, PriceLevelParams,
};
pub use solow::{
    cobb_douglas, cobb_douglas_series, output_investment_relation, solow_equilibrium,
    CobbDouglasParams, SolowCapitalParams,
};

use crate::error::{model_domain, Error, Result};

/// Shifts applied to curve parameters before sweeping.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CurveShift {
    pub delta_n: f64,
    pub delta_m: f64,
    pub delta_s: f64,
}

/// `k_n = k / k_s` for `N ⇄ M ⇄ S` with `N ⇄ S` at index `k` and `M ⇄ S` at
/// index `k_s`.
pub fn money_mediation(k: f64, k_s: f64) -> Result<f64> {
    if k_s.is_nan() || k_s <= 0.0 {
        return Err(model_domain(format!("k_s must be positive, got {k_s}")));
    }
    Ok(k / k_s)
}

/// Flat `name = value` parameter set, keyed by the model symbol names
/// (`k_i`, `k_p`, `k_H`, `alpha`, `gamma`, `M0`, `A`, `k1`, `k2`, ...).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModelParams {
    values: BTreeMap<String, f64>,
}

impl ModelParams {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, name: &str, value: f64) -> Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Result<f64> {
        self.values
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidConfig(format!("missing parameter '{name}'")))
    }

    pub fn get_or(&self, name: &str, default: f64) -> f64 {
        self.values.get(name).copied().unwrap_or(default)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Parses TOML-style `key = number` lines; nested tables are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let table: toml::Table =
            text.parse().map_err(|e: toml::de::Error| Error::InvalidConfig(e.to_string()))?;
        let mut values = BTreeMap::new();
        for (key, value) in table {
            let x = match value {
                toml::Value::Float(f) => f,
                toml::Value::Integer(i) => i as f64,
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "parameter '{key}' must be a number, got {}",
                        other.type_str()
                    )))
                }
            };
            values.insert(key, x);
        }
        Ok(Self { values })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text)
    }

    /// Renders as `name = value` lines in key order.
    pub fn to_text(&self) -> String {
        self.values.iter().map(|(k, v)| format!("{k} = {v:?}\n")).collect()
    }
}
