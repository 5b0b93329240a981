//! AD-AS curves for `P : N ⇄ S`.

use serde::{Deserialize, Serialize};

use crate::error::{model_domain, Result};
use crate::macro_models::ModelParams;
use crate::numeric::bisect;
use crate::relation::IeRelation;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdAs {
    pub k_a: f64,
    /// Constant demand level parameterizing the AD curve.
    pub n0: f64,
    /// Constant supply level parameterizing the SRAS curve.
    pub s0: f64,
    pub n_ref: f64,
    pub s_ref: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdAsCurves {
    /// `(ΔN, P)`.
    pub ad: Vec<(f64, f64)>,
    /// `(ΔS, P)`.
    pub sras: Vec<(f64, f64)>,
    /// `(S, P)` on the general equilibrium locus.
    pub lras: Vec<(f64, f64)>,
}

impl AdAs {
    pub fn new(k_a: f64, n0: f64, s0: f64, n_ref: f64, s_ref: f64) -> Result<Self> {
        for (name, x) in [("k_A", k_a), ("N0", n0), ("S0", s0), ("N_ref", n_ref), ("S_ref", s_ref)] {
            if !(x > 0.0 && x.is_finite()) {
                return Err(model_domain(format!("{name} must be positive, got {x}")));
            }
        }
        Ok(Self { k_a, n0, s0, n_ref, s_ref })
    }

    pub fn from_params(p: &ModelParams) -> Result<Self> {
        Self::new(p.get("k_A")?, p.get("N0")?, p.get("S0")?, p.get("N_ref")?, p.get("S_ref")?)
    }

    /// `P = N0/(k_A S_ref) exp(-k_A ΔN/N0)`.
    pub fn ad_price(&self, delta_n: f64) -> f64 {
        self.n0 / (self.k_a * self.s_ref) * (-self.k_a * delta_n / self.n0).exp()
    }

    /// `P = N_ref/(k_A S0) exp(ΔS/(k_A S0))`.
    pub fn sras_price(&self, delta_s: f64) -> f64 {
        self.n_ref / (self.k_a * self.s0) * (delta_s / (self.k_a * self.s0)).exp()
    }

    /// Long-run locus `N/N_ref = (S/S_ref)^k_A`, whose price goes as `S^(k_A-1)`.
    pub fn general_equilibrium(&self) -> Result<IeRelation> {
        Ok(IeRelation::new(self.k_a, self.n_ref, self.s_ref)?.with_detector("P"))
    }

    pub fn lras_price(&self, s: f64) -> Result<f64> {
        self.general_equilibrium()?.price_at(s)
    }

    /// AD and SRAS on a sweep of quantity changes, LRAS on `S_ref + Δ`.
    pub fn curves(&self, sweep: &[f64]) -> Result<AdAsCurves> {
        let ad = sweep.iter().map(|&d| (d, self.ad_price(d))).collect();
        let sras = sweep.iter().map(|&d| (d, self.sras_price(d))).collect();
        let lras = sweep
            .iter()
            .map(|&d| {
                let s = self.s_ref + d;
                Ok((s, self.lras_price(s)?))
            })
            .collect::<Result<_>>()?;
        Ok(AdAsCurves { ad, sras, lras })
    }

    /// Crossing of AD with SRAS shifted right by `supply_shift`, found by
    /// bisection over the quantity change in `bracket`. Returns `(ΔQ, P)`.
    pub fn equilibrium(&self, supply_shift: f64, bracket: (f64, f64)) -> Result<(f64, f64)> {
        let q = bisect(
            |q| self.ad_price(q) - self.sras_price(q - supply_shift),
            bracket.0,
            bracket.1,
            1e-10,
        )?;
        Ok((q, self.ad_price(q)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_prices_and_slopes() {
        let m = AdAs::new(1.5, 10.0, 8.0, 10.0, 8.0).unwrap();
        assert_eq!(m.ad_price(0.0), 10.0 / (1.5 * 8.0));
        assert!(m.ad_price(1.0) < m.ad_price(0.0));
        assert!(m.sras_price(1.0) > m.sras_price(0.0));
    }
}
