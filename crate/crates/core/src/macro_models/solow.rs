//! Production function from `N ⇄ K` and `N ⇄ L`, and the capital equilibrium
//! from `K ⇄ I` and `K ⇄ Dep` holding simultaneously.

use serde::{Deserialize, Serialize};

use crate::error::{at_point, model_domain, Error, Result};
use crate::macro_models::ModelParams;
use crate::relation::IeRelation;
use crate::timeseries::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CobbDouglasParams {
    #[serde(rename = "A")]
    pub a_tfp: f64,
    pub k1: f64,
    pub k2: f64,
}

impl CobbDouglasParams {
    pub fn new(a_tfp: f64, k1: f64, k2: f64) -> Result<Self> {
        if !(a_tfp > 0.0 && a_tfp.is_finite() && k1.is_finite() && k2.is_finite()) {
            return Err(model_domain(format!("need A > 0 and finite exponents, got {a_tfp}, {k1}, {k2}")));
        }
        Ok(Self { a_tfp, k1, k2 })
    }

    pub fn us() -> Self {
        Self { a_tfp: 0.0024, k1: 0.44, k2: 0.84 }
    }

    pub fn mexico() -> Self {
        Self { a_tfp: 0.0045, k1: 0.51, k2: 0.90 }
    }

    pub fn from_params(p: &ModelParams) -> Result<Self> {
        Self::new(p.get("A")?, p.get("k1")?, p.get("k2")?)
    }
}

/// `N = A K^k1 L^k2`.
pub fn cobb_douglas(k_cap: f64, l_lab: f64, cd: &CobbDouglasParams) -> Result<f64> {
    if !(k_cap > 0.0 && l_lab > 0.0) {
        return Err(model_domain(format!("production needs K, L > 0, got {k_cap}, {l_lab}")));
    }
    Ok((cd.a_tfp.ln() + cd.k1 * k_cap.ln() + cd.k2 * l_lab.ln()).exp())
}

pub fn cobb_douglas_series(
    k_ts: &TimeSeries,
    l_ts: &TimeSeries,
    cd: &CobbDouglasParams,
    grid: &[f64],
) -> Result<TimeSeries> {
    let v = grid
        .iter()
        .map(|&t| cobb_douglas(k_ts.interp_linear(t)?, l_ts.interp_linear(t)?, cd).map_err(|e| at_point(t, e)))
        .collect::<Result<Vec<_>>>()?;
    TimeSeries::from_columns("output", grid.to_vec(), v)
}

/// Capital dynamics: `K/K0 = (I/I0)^σ` and `K/K0 = (Dep/D0)^δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolowCapitalParams {
    pub k0: f64,
    pub i0: f64,
    pub d0: f64,
    pub sigma: f64,
    pub delta: f64,
}

impl SolowCapitalParams {
    pub fn new(k0: f64, i0: f64, d0: f64, sigma: f64, delta: f64) -> Result<Self> {
        for (name, x) in [("K0", k0), ("I0", i0), ("D0", d0), ("sigma", sigma), ("delta", delta)] {
            if !(x > 0.0 && x.is_finite()) {
                return Err(model_domain(format!("{name} must be positive, got {x}")));
            }
        }
        Ok(Self { k0, i0, d0, sigma, delta })
    }

    /// Investment level supporting capital `k`: `I = I0 (K/K0)^(1/σ)`.
    pub fn investment(&self, k: f64) -> f64 {
        self.i0 * ((k / self.k0).ln() / self.sigma).exp()
    }

    /// Depreciation at capital `k`: `Dep = D0 (K/K0)^(1/δ)`.
    pub fn depreciation(&self, k: f64) -> f64 {
        self.d0 * ((k / self.k0).ln() / self.delta).exp()
    }

    /// An equilibrium is stable when depreciation outgrows investment above it.
    pub fn is_stable(&self) -> bool {
        self.sigma > self.delta
    }

    /// `K ⇄ I` as a relation (source K, destination I).
    pub fn investment_relation(&self) -> Result<IeRelation> {
        IeRelation::new(self.sigma, self.k0, self.i0)
    }

    pub fn depreciation_relation(&self) -> Result<IeRelation> {
        IeRelation::new(self.delta, self.k0, self.d0)
    }
}

/// `K* = K0 exp(σδ log(I0/D0) / (σ - δ))`, where investment meets depreciation.
pub fn solow_equilibrium(sp: &SolowCapitalParams) -> Result<f64> {
    if sp.sigma == sp.delta {
        return Err(Error::DegenerateEquilibrium);
    }
    let exponent = sp.sigma * sp.delta * (sp.i0 / sp.d0).ln() / (sp.sigma - sp.delta);
    Ok(sp.k0 * exponent.exp())
}

/// `p_I : N ⇄ I` with `dN/dI = (1/η) N/I`; η is empirically close to one.
pub fn output_investment_relation(eta: f64, n_ref: f64, i_ref: f64) -> Result<IeRelation> {
    if eta.is_nan() || eta <= 0.0 {
        return Err(model_domain(format!("eta must be positive, got {eta}")));
    }
    Ok(IeRelation::new(1.0 / eta, n_ref, i_ref)?.with_detector("p_I"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cobb_douglas_examples() {
        let cd = CobbDouglasParams::us();
        assert!((cobb_douglas(1.0, 1.0, &cd).unwrap() - 0.0024).abs() < 1e-18);
        let n = cobb_douglas(10.0, 10.0, &cd).unwrap();
        assert!((n / (0.0024 * 10f64.powf(1.28)) - 1.0).abs() < 1e-14);
        let ratio = cobb_douglas(6.0, 3.0, &cd).unwrap() / cobb_douglas(3.0, 3.0, &cd).unwrap();
        assert!((ratio - 2f64.powf(0.44)).abs() < 1e-14);
        assert!(cobb_douglas(0.0, 1.0, &cd).is_err());
    }

    #[test]
    fn equilibrium_examples() {
        let sp = SolowCapitalParams::new(3.0, 2.0, 2.0, 1.5, 0.7).unwrap();
        assert_eq!(solow_equilibrium(&sp).unwrap(), 3.0);
        let sp = SolowCapitalParams::new(1.0, std::f64::consts::E, 1.0, 2.0, 1.0).unwrap();
        let e2 = std::f64::consts::E.powi(2);
        assert!((solow_equilibrium(&sp).unwrap() - e2).abs() < 1e-14);
        let sp = SolowCapitalParams::new(1.0, 2.0, 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(solow_equilibrium(&sp), Err(Error::DegenerateEquilibrium)));
    }
}
