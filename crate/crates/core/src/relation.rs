//! The information-equilibrium relation `dD/dS = k D/S` between a source `D`
//! and a destination `S`, its general and partial equilibrium solutions, and
//! the algebra that makes it an equivalence relation.
//!
//! Closed forms are evaluated in log space so large indices do not overflow.

use crate::error::{domain, Error, Result};

/// `D ⇄ S` with information transfer index `k` and integration constants
/// `(d_ref, s_ref)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IeRelation {
    /// Stored index; the effective index is its reciprocal when `reciprocal`
    /// is set, which keeps inversion an exact involution.
    index: f64,
    reciprocal: bool,
    d_ref: f64,
    s_ref: f64,
    detector: Option<String>,
}

/// Which side is held fixed in a partial equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    DemandConstant,
    SupplyConstant,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialEquilibrium {
    pub side: Side,
    pub level: f64,
}

impl PartialEquilibrium {
    pub fn new(side: Side, level: f64) -> Result<Self> {
        positive("level", level)?;
        Ok(Self { side, level })
    }
}

/// A point on a demand or supply curve: the price and the quantity change
/// along the curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub price: f64,
    pub delta: f64,
}

/// `D ≈ alpha - beta P`, `S ≈ gamma + delta P` around the reference point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearCoeffs {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl LinearCoeffs {
    pub fn demand(&self, price: f64) -> f64 {
        self.alpha - self.beta * price
    }

    pub fn supply(&self, price: f64) -> f64 {
        self.gamma + self.delta * price
    }
}

fn positive(what: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{what} must be positive and finite, got {x}")))
    }
}

impl IeRelation {
    pub fn new(k: f64, d_ref: f64, s_ref: f64) -> Result<Self> {
        positive("k", k)?;
        positive("d_ref", d_ref)?;
        positive("s_ref", s_ref)?;
        Ok(Self { index: k, reciprocal: false, d_ref, s_ref, detector: None })
    }

    pub fn with_detector(mut self, name: impl Into<String>) -> Self {
        self.detector = Some(name.into());
        self
    }

    /// `A ⇄ A` with `k = 1`.
    pub fn identity(reference: f64) -> Result<Self> {
        Self::new(1.0, reference, reference)
    }

    pub fn k(&self) -> f64 {
        if self.reciprocal { 1.0 / self.index } else { self.index }
    }

    pub fn d_ref(&self) -> f64 {
        self.d_ref
    }

    pub fn s_ref(&self) -> f64 {
        self.s_ref
    }

    pub fn detector(&self) -> Option<&str> {
        self.detector.as_deref()
    }

    /// General equilibrium source level `D = d_ref (s / s_ref)^k`.
    pub fn source_at(&self, s: f64) -> Result<f64> {
        positive("s", s)?;
        Ok((self.d_ref.ln() + self.k() * (s.ln() - self.s_ref.ln())).exp())
    }

    /// General equilibrium price `P = k (d_ref/s_ref) (s/s_ref)^(k-1)`.
    pub fn price_at(&self, s: f64) -> Result<f64> {
        positive("s", s)?;
        let log_ratio = s.ln() - self.s_ref.ln();
        Ok((self.k().ln() + self.d_ref.ln() - self.s_ref.ln() + (self.k() - 1.0) * log_ratio).exp())
    }

    /// Demand curve at constant source `d0`: `P = k d0 / s`,
    /// `ΔD = k d0 log(s / s_ref)`.
    pub fn demand_curve(&self, d0: f64, s: f64) -> Result<CurvePoint> {
        positive("d0", d0)?;
        positive("s", s)?;
        Ok(CurvePoint { price: self.k() * d0 / s, delta: self.k() * d0 * (s / self.s_ref).ln() })
    }

    /// Supply curve at constant destination `s0`: `P = k d / s0`,
    /// `ΔS = (s0 / k) log(d / d_ref)`.
    pub fn supply_curve(&self, s0: f64, d: f64) -> Result<CurvePoint> {
        positive("s0", s0)?;
        positive("d", d)?;
        Ok(CurvePoint { price: self.k() * d / s0, delta: s0 / self.k() * (d / self.d_ref).ln() })
    }

    /// Evaluates the curve for a partial equilibrium; `x` is the free
    /// variable (`s` for constant demand, `d` for constant supply).
    pub fn partial_curve(&self, pe: &PartialEquilibrium, x: f64) -> Result<CurvePoint> {
        match pe.side {
            Side::DemandConstant => self.demand_curve(pe.level, x),
            Side::SupplyConstant => self.supply_curve(pe.level, x),
        }
    }

    pub fn linearize(&self, d0: f64, s0: f64) -> Result<LinearCoeffs> {
        positive("d0", d0)?;
        positive("s0", s0)?;
        let k = self.k();
        Ok(LinearCoeffs {
            alpha: self.d_ref + k * d0,
            beta: self.s_ref,
            gamma: self.s_ref - s0 / k,
            delta: s0 * s0 / (k * k * self.d_ref),
        })
    }

    /// Leading-order price elasticities `(e_d, e_s)`.
    pub fn elasticities(&self, d0: f64, s0: f64) -> Result<(f64, f64)> {
        positive("d0", d0)?;
        positive("s0", s0)?;
        Ok((-self.k() * d0 / self.d_ref, s0 / (self.k() * self.s_ref)))
    }

    /// Price when both sides move slowly: `ΔD/ΔS = k d0 / s0`.
    pub fn constant_price(&self, d0: f64, s0: f64) -> Result<f64> {
        positive("d0", d0)?;
        positive("s0", s0)?;
        Ok(self.k() * d0 / s0)
    }

    /// `S ⇄ D` with index `1/k` and the references swapped.
    pub fn invert(&self) -> IeRelation {
        IeRelation {
            index: self.index,
            reciprocal: !self.reciprocal,
            d_ref: self.s_ref,
            s_ref: self.d_ref,
            detector: self.detector.clone(),
        }
    }

    /// Chains `A ⇄ B` (self) with `B ⇄ C` into `A ⇄ C` with index `a·b`.
    ///
    /// The result keeps `self.d_ref` and `bc.s_ref`; evaluating it equals the
    /// composition of the two when `self.s_ref == bc.d_ref`.
    pub fn compose(&self, bc: &IeRelation) -> Result<IeRelation> {
        if let (Some(a), Some(b)) = (self.detector(), bc.detector()) {
            if a != b {
                return Err(domain(format!("cannot chain relation '{a}' into '{b}'")));
            }
        }
        Ok(IeRelation {
            index: self.k() * bc.k(),
            reciprocal: false,
            d_ref: self.d_ref,
            s_ref: bc.s_ref,
            detector: self.detector.clone().or_else(|| bc.detector.clone()),
        })
    }
}

/// Integrates `dD/dS = k D/S` from `(s_start, d_start)` to `s_end` with
/// fixed-step classical Runge-Kutta and returns `D(s_end)`.
///
/// Used to check the closed forms; `steps` of 10^3 or more is typical.
pub fn integrate_rk4(k: f64, s_start: f64, s_end: f64, d_start: f64, steps: usize) -> Result<f64> {
    positive("s_start", s_start)?;
    positive("s_end", s_end)?;
    positive("d_start", d_start)?;
    if steps == 0 {
        return Err(Error::InvalidConfig("steps must be at least 1".into()));
    }
    let f = |s: f64, d: f64| k * d / s;
    let h = (s_end - s_start) / steps as f64;
    let mut d = d_start;
    for i in 0..steps {
        let s = s_start + h * i as f64;
        let k1 = f(s, d);
        let k2 = f(s + 0.5 * h, d + 0.5 * h * k1);
        let k3 = f(s + 0.5 * h, d + 0.5 * h * k2);
        let k4 = f(s + h, d + h * k3);
        d += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    Ok(d)
}

/// [`integrate_rk4`] starting from the relation's reference point.
pub fn ode_oracle(rel: &IeRelation, s_start: f64, s_end: f64, d_start: f64, steps: usize) -> Result<f64> {
    integrate_rk4(rel.k(), s_start, s_end, d_start, steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(k: f64, d_ref: f64, s_ref: f64) -> IeRelation {
        IeRelation::new(k, d_ref, s_ref).unwrap()
    }

    fn close(a: f64, b: f64, rel_tol: f64) -> bool {
        (a - b).abs() <= rel_tol * b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn general_equilibrium_examples() {
        assert!(close(rel(1.0, 2.0, 1.0).source_at(3.0).unwrap(), 6.0, 1e-15));
        assert!(close(rel(2.0, 1.0, 1.0).source_at(3.0).unwrap(), 9.0, 1e-15));
        let r = rel(2.7, 3.3, 0.4);
        assert!(close(r.source_at(0.4).unwrap(), 3.3, 1e-15));
        assert!(matches!(r.source_at(0.0), Err(Error::Domain(_))));
        assert!(r.price_at(-1.0).is_err());
    }

    #[test]
    fn price_examples() {
        let r = rel(1.0, 3.0, 2.0);
        for s in [0.1, 1.0, 7.0] {
            assert!(close(r.price_at(s).unwrap(), 1.5, 1e-15));
        }
        assert!(close(rel(2.0, 1.0, 1.0).price_at(4.0).unwrap(), 8.0, 1e-15));
        let r = rel(1.5, 3.0, 2.0);
        let p = r.price_at(5.0).unwrap();
        assert!(close(p, 1.5 * r.source_at(5.0).unwrap() / 5.0, 1e-12));
    }

    #[test]
    fn demand_and_supply_examples() {
        let r = rel(1.3, 2.0, 4.0);
        let at_ref = r.demand_curve(5.0, 4.0).unwrap();
        assert_eq!(at_ref.delta, 0.0);
        assert!(close(at_ref.price, 1.3 * 5.0 / 4.0, 1e-15));
        assert_eq!(rel(1.0, 1.0, 1.0).demand_curve(10.0, 5.0).unwrap().price, 2.0);

        assert_eq!(r.supply_curve(3.0, 2.0).unwrap().delta, 0.0);
        assert_eq!(rel(2.0, 1.0, 1.0).supply_curve(4.0, 8.0).unwrap().price, 4.0);
        assert!(r.demand_curve(5.0, 0.0).is_err());
        assert!(r.supply_curve(3.0, -1.0).is_err());
    }

    #[test]
    fn linearization_examples() {
        let c = rel(1.0, 1.0, 1.0).linearize(1.0, 1.0).unwrap();
        assert_eq!((c.alpha, c.beta, c.gamma, c.delta), (2.0, 1.0, 0.0, 1.0));
        let c = rel(2.0, 4.0, 3.0).linearize(5.0, 6.0).unwrap();
        assert_eq!(c.delta, 2.25);
        assert_eq!(c.alpha, 14.0);
        assert_eq!(c.gamma, 0.0);
    }

    #[test]
    fn elasticity_and_constant_price_examples() {
        assert_eq!(rel(1.0, 2.0, 1.0).elasticities(2.0, 1.0).unwrap().0, -1.0);
        assert_eq!(rel(2.0, 1.0, 3.0).elasticities(1.0, 3.0).unwrap().1, 0.5);
        assert_eq!(rel(1.0, 1.0, 1.0).constant_price(2.5, 2.5).unwrap(), 1.0);
        assert_eq!(rel(3.0, 1.0, 1.0).constant_price(2.0, 6.0).unwrap(), 1.0);
    }

    #[test]
    fn both_slow_integration_reproduces_constant_price() {
        // (1/d0) ΔD = (k/s0) ΔS  =>  ΔD/ΔS = k d0/s0
        let r = rel(1.7, 2.0, 3.0);
        let (d0, s0) = (4.0, 9.0);
        for ds in [0.1, -0.3, 2.0] {
            let dd = r.k() * d0 / s0 * ds;
            assert!(close(dd / ds, r.constant_price(d0, s0).unwrap(), 1e-15));
        }
    }

    #[test]
    fn invert_and_compose() {
        let r = rel(2.0, 3.0, 5.0).with_detector("p");
        let inv = r.invert();
        assert_eq!(inv.k(), 0.5);
        assert_eq!((inv.d_ref(), inv.s_ref()), (5.0, 3.0));
        assert_eq!(inv.invert(), r);

        let ab = rel(2.0, 1.0, 2.0);
        let bc = rel(3.0, 2.0, 7.0);
        assert_eq!(ab.compose(&bc).unwrap().k(), 6.0);
        assert_eq!(IeRelation::identity(2.0).unwrap().compose(&bc).unwrap().k(), 3.0);

        let x = rel(1.0, 1.0, 1.0).with_detector("a");
        let y = rel(1.0, 1.0, 1.0).with_detector("b");
        assert!(x.compose(&y).is_err());
    }

    #[test]
    fn rk4_linear_case() {
        let r = rel(1.0, 2.0, 3.0);
        let d = ode_oracle(&r, 3.0, 10.0, 2.0, 1000).unwrap();
        assert!(close(d, 2.0 * 10.0 / 3.0, 1e-8));
        assert!(ode_oracle(&r, 3.0, 10.0, 2.0, 0).is_err());
        assert!(ode_oracle(&r, 0.0, 10.0, 2.0, 10).is_err());
    }
}
