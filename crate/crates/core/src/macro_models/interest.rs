//! Interest rates `i^(k_i) = (1/k_p) N/M`, and the IS-LM curves built from
//! the same relation in partial equilibrium.

use serde::{Deserialize, Serialize};

use crate::error::{at_point, model_domain, Result};
use crate::macro_models::{CurveShift, ModelParams};
use crate::numeric::bisect;
use crate::timeseries::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterestParams {
    pub k_i: f64,
    pub k_p: f64,
}

impl InterestParams {
    pub fn new(k_i: f64, k_p: f64) -> Result<Self> {
        if !(k_i > 0.0 && k_p > 0.0 && k_i.is_finite() && k_p.is_finite()) {
            return Err(model_domain(format!("k_i and k_p must be positive, got {k_i}, {k_p}")));
        }
        Ok(Self { k_i, k_p })
    }

    /// US simultaneous long/short fit.
    pub fn us() -> Self {
        Self { k_i: 3.49, k_p: 0.124 }
    }

    pub fn from_params(p: &ModelParams) -> Result<Self> {
        Self::new(p.get("k_i")?, p.get("k_p")?)
    }
}

/// Rate in the units of the fitted data (percent for the US parameters).
pub fn interest_rate(n: f64, m: f64, ip: &InterestParams) -> Result<f64> {
    if !(n > 0.0 && m > 0.0) {
        return Err(model_domain(format!("interest rate needs N, M > 0, got {n}, {m}")));
    }
    Ok(((n / m / ip.k_p).ln() / ip.k_i).exp())
}

pub fn interest_series(
    n_ts: &TimeSeries,
    m_ts: &TimeSeries,
    ip: &InterestParams,
    grid: &[f64],
) -> Result<TimeSeries> {
    let v = grid
        .iter()
        .map(|&t| interest_rate(n_ts.interp_linear(t)?, m_ts.interp_linear(t)?, ip).map_err(|e| at_point(t, e)))
        .collect::<Result<Vec<_>>>()?;
    TimeSeries::from_columns("interest rate", grid.to_vec(), v)
}

/// Coupled money (LM) and goods (IS) markets sharing the source `N` and the
/// detector `i^(k_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsLm {
    pub n0: f64,
    pub m_ref: f64,
    pub s_ref: f64,
    pub k_p: f64,
    pub k_s: f64,
    pub k_i: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsLmCurves {
    /// `(ΔM, i)` at the shifted source level.
    pub lm: Vec<(f64, f64)>,
    /// `(ΔN, i)`.
    pub is: Vec<(f64, f64)>,
}

impl IsLm {
    pub fn new(n0: f64, m_ref: f64, s_ref: f64, k_p: f64, k_s: f64, k_i: f64) -> Result<Self> {
        for (name, x) in
            [("N0", n0), ("M_ref", m_ref), ("S_ref", s_ref), ("k_p", k_p), ("k_S", k_s), ("k_i", k_i)]
        {
            if !(x > 0.0 && x.is_finite()) {
                return Err(model_domain(format!("{name} must be positive, got {x}")));
            }
        }
        Ok(Self { n0, m_ref, s_ref, k_p, k_s, k_i })
    }

    pub fn from_params(p: &ModelParams) -> Result<Self> {
        Self::new(p.get("N0")?, p.get("M_ref")?, p.get("S_ref")?, p.get("k_p")?, p.get("k_S")?, p.get("k_i")?)
    }

    /// LM: `i^(k_i) = (N0+ΔN)/(k_p M_ref) exp(-k_p ΔM/(N0+ΔN))`.
    pub fn lm_rate(&self, delta_m: f64, delta_n: f64) -> Result<f64> {
        let n = self.n0 + delta_n;
        if n <= 0.0 {
            return Err(model_domain(format!("N0 + ΔN = {n} must be positive")));
        }
        let log_power = (n / (self.k_p * self.m_ref)).ln() - self.k_p * delta_m / n;
        Ok((log_power / self.k_i).exp())
    }

    /// IS: `i^(k_i) = N0/(k_S S_ref) exp(-k_S ΔN/N0)`, with a supply shift
    /// applied to `S_ref`.
    pub fn is_rate(&self, delta_n: f64, delta_s: f64) -> Result<f64> {
        let s = self.s_ref + delta_s;
        if s <= 0.0 {
            return Err(model_domain(format!("S_ref + ΔS = {s} must be positive")));
        }
        let log_power = (self.n0 / (self.k_s * s)).ln() - self.k_s * delta_n / self.n0;
        Ok((log_power / self.k_i).exp())
    }

    pub fn curves(&self, shift: &CurveShift, sweep: &[f64]) -> Result<IsLmCurves> {
        let lm = sweep
            .iter()
            .map(|&dm| Ok((dm, self.lm_rate(shift.delta_m + dm, shift.delta_n)?)))
            .collect::<Result<_>>()?;
        let is = sweep
            .iter()
            .map(|&dn| Ok((dn, self.is_rate(shift.delta_n + dn, shift.delta_s)?)))
            .collect::<Result<_>>()?;
        Ok(IsLmCurves { lm, is })
    }

    /// Intersection `(ΔN*, i*)` of the IS curve with the LM curve drawn in the
    /// `(ΔN, i)` plane at money shift `delta_m`, bracketed in ΔN.
    pub fn equilibrium(&self, delta_m: f64, delta_s: f64, bracket: (f64, f64)) -> Result<(f64, f64)> {
        let gap = |dn: f64| match (self.lm_rate(delta_m, dn), self.is_rate(dn, delta_s)) {
            (Ok(lm), Ok(is)) => lm - is,
            _ => f64::NAN,
        };
        let dn = bisect(gap, bracket.0, bracket.1, 1e-10)?;
        Ok((dn, self.is_rate(dn, delta_s)?))
    }
}
