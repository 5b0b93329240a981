//! Derivative-free least-squares fitting.
//!
//! The minimizer is a direction-set method: repeated line minimizations along
//! a set of directions, with the net displacement of each sweep replacing the
//! direction of largest decrease. Every `n²` line searches the set is
//! rebuilt from the principal axes of a finite-difference Hessian, which keeps
//! narrow curved valleys from stalling the search. Line searches are confined
//! to the box `[lower, upper]`, so the objective is never evaluated outside it.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::macro_models::{
    hours, interest_rate, price_level, CobbDouglasParams, InterestParams, PriceLevelParams,
};
use crate::timeseries::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transform {
    #[default]
    Linear,
    Log,
}

/// `Σ (T(model(x, t)) - T(v))²` over a fixed data set.
pub struct ResidualObjective<M> {
    model: M,
    data: Vec<(f64, f64)>,
    transform: Transform,
}

pub fn sum_sq_residuals<M>(model: M, data: Vec<(f64, f64)>, transform: Transform) -> Result<ResidualObjective<M>>
where
    M: Fn(&[f64], f64) -> Result<f64>,
{
    if transform == Transform::Log {
        if let Some((t, v)) = data.iter().find(|(_, v)| v.is_nan() || *v <= 0.0) {
            return Err(domain(format!("log residual of non-positive data {v} at t = {t}")));
        }
    }
    Ok(ResidualObjective { model, data, transform })
}

impl<M> ResidualObjective<M>
where
    M: Fn(&[f64], f64) -> Result<f64>,
{
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// `T(model) - T(data)` at every data point.
    pub fn residuals(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.data
            .iter()
            .map(|&(t, v)| {
                let y = (self.model)(x, t)?;
                match self.transform {
                    Transform::Linear => Ok(y - v),
                    Transform::Log if y > 0.0 => Ok(y.ln() - v.ln()),
                    Transform::Log => Err(domain(format!("log residual of non-positive model value {y} at t = {t}"))),
                }
            })
            .collect()
    }

    /// Objective value; infinite wherever the model cannot be evaluated.
    pub fn value(&self, x: &[f64]) -> f64 {
        match self.residuals(x) {
            Ok(r) => {
                let s: f64 = r.iter().map(|e| e * e).sum();
                if s.is_nan() { f64::INFINITY } else { s }
            }
            Err(_) => f64::INFINITY,
        }
    }
}

type ObjectiveFn<'a> = Box<dyn Fn(&[f64]) -> f64 + 'a>;
type ResidualFn<'a> = Box<dyn Fn(&[f64]) -> Result<Vec<f64>> + 'a>;

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_ITER: usize = 10_000;

pub struct FitProblem<'a> {
    pub param_names: Vec<String>,
    pub x0: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub tol: f64,
    pub max_iter: usize,
    objective: ObjectiveFn<'a>,
    residuals: Option<ResidualFn<'a>>,
}

impl fmt::Debug for FitProblem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FitProblem")
            .field("param_names", &self.param_names)
            .field("x0", &self.x0)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("tol", &self.tol)
            .field("max_iter", &self.max_iter)
            .finish_non_exhaustive()
    }
}

impl<'a> FitProblem<'a> {
    pub fn new(
        param_names: Vec<String>,
        x0: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        objective: impl Fn(&[f64]) -> f64 + 'a,
    ) -> Result<Self> {
        let n = x0.len();
        if n == 0 || param_names.len() != n || lower.len() != n || upper.len() != n {
            return Err(Error::InvalidConfig("parameter names, x0 and bounds must have equal non-zero length".into()));
        }
        for i in 0..n {
            if !x0[i].is_finite() || !(lower[i] <= x0[i] && x0[i] <= upper[i]) {
                return Err(Error::InvalidConfig(format!(
                    "{} = {} lies outside [{}, {}]",
                    param_names[i], x0[i], lower[i], upper[i]
                )));
            }
        }
        Ok(Self {
            param_names,
            x0,
            lower,
            upper,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            objective: Box::new(objective),
            residuals: None,
        })
    }

    /// Box without limits.
    pub fn unbounded(param_names: Vec<String>, x0: Vec<f64>, objective: impl Fn(&[f64]) -> f64 + 'a) -> Result<Self> {
        let n = x0.len();
        Self::new(param_names, x0, vec![f64::NEG_INFINITY; n], vec![f64::INFINITY; n], objective)
    }

    pub fn from_residuals<M>(
        param_names: Vec<String>,
        x0: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        obj: &'a ResidualObjective<M>,
    ) -> Result<Self>
    where
        M: Fn(&[f64], f64) -> Result<f64>,
    {
        let mut fp = Self::new(param_names, x0, lower, upper, move |x| obj.value(x))?;
        fp.residuals = Some(Box::new(move |x| obj.residuals(x)));
        Ok(fp)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidConfig(format!("tol must be positive, got {tol}")));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn objective(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub param_names: Vec<String>,
    pub x_star: Vec<f64>,
    pub f_star: f64,
    pub f0: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    pub residual_series: Vec<f64>,
}

impl FitResult {
    pub fn param(&self, name: &str) -> Option<f64> {
        self.param_names.iter().position(|p| p == name).map(|i| self.x_star[i])
    }
}

const GOLD: f64 = 0.381_966_011_250_105_1;
const TINY: f64 = 1e-20;

struct Search<'p, 'a> {
    fp: &'p FitProblem<'a>,
    scale: Vec<f64>,
    evaluations: usize,
}

impl Search<'_, '_> {
    fn to_x(&self, y: &[f64]) -> Vec<f64> {
        let mut x: Vec<f64> = y.iter().zip(&self.scale).map(|(y, s)| y * s).collect();
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = xi.clamp(self.fp.lower[i], self.fp.upper[i]);
        }
        x
    }

    fn eval(&mut self, y: &[f64]) -> f64 {
        self.evaluations += 1;
        let f = self.fp.objective(&self.to_x(y));
        if f.is_nan() { f64::INFINITY } else { f }
    }

    /// Eigenvectors of a finite-difference Hessian at `y`, used as the new
    /// direction set on restart. `None` if the objective is not finite nearby.
    fn principal_axes(&mut self, y: &[f64], fy: f64) -> Option<Vec<Vec<f64>>> {
        let n = y.len();
        let h: Vec<f64> = y.iter().map(|v| 1e-4 * v.abs().max(1.0)).collect();
        let at = |s: &mut Self, steps: &[(usize, f64)]| {
            let mut p = y.to_vec();
            for &(i, sign) in steps {
                p[i] += sign * h[i];
            }
            s.eval(&p)
        };
        let mut hess = DMatrix::zeros(n, n);
        for i in 0..n {
            let v = (at(self, &[(i, 1.0)]) - 2.0 * fy + at(self, &[(i, -1.0)])) / (h[i] * h[i]);
            hess[(i, i)] = v;
            for j in 0..i {
                let v = (at(self, &[(i, 1.0), (j, 1.0)]) - at(self, &[(i, 1.0), (j, -1.0)])
                    - at(self, &[(i, -1.0), (j, 1.0)])
                    + at(self, &[(i, -1.0), (j, -1.0)]))
                    / (4.0 * h[i] * h[j]);
                hess[(i, j)] = v;
                hess[(j, i)] = v;
            }
        }
        if hess.iter().any(|v| !v.is_finite()) {
            return None;
        }
        let eig = hess.symmetric_eigen();
        Some((0..n).map(|c| eig.eigenvectors.column(c).iter().copied().collect()).collect())
    }

    /// Range of `λ` keeping `y + λ d` inside the box.
    fn feasible(&self, y: &[f64], d: &[f64]) -> (f64, f64) {
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for i in 0..y.len() {
            if d[i] == 0.0 {
                continue;
            }
            let a = (self.fp.lower[i] / self.scale[i] - y[i]) / d[i];
            let b = (self.fp.upper[i] / self.scale[i] - y[i]) / d[i];
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
        (lo.min(0.0), hi.max(0.0))
    }

    /// Minimizes along `d` from `y`, moving `y` and returning the new value.
    /// Never returns a value above `fy`.
    fn line_min(&mut self, y: &mut [f64], d: &[f64], fy: f64) -> f64 {
        let (lo, hi) = self.feasible(y, d);
        if hi - lo <= 0.0 {
            return fy;
        }
        let phi = |s: &mut Self, l: f64| {
            let p: Vec<f64> = y.iter().zip(d).map(|(y, d)| y + l * d).collect();
            s.eval(&p)
        };
        let (a, b) = self.bracket(&phi, lo, hi, fy);
        let (lam, f) = self.brent(&phi, a, b, fy);
        if f < fy {
            for (yi, di) in y.iter_mut().zip(d) {
                *yi += lam * di;
            }
            f
        } else {
            fy
        }
    }

    /// Expands outwards from zero until the function rises on both sides or
    /// the box edge is reached.
    fn bracket(&mut self, phi: &dyn Fn(&mut Self, f64) -> f64, lo: f64, hi: f64, f0: f64) -> (f64, f64) {
        let step = 1e-2f64;
        let probe = |s: &mut Self, dir: f64| -> f64 {
            let edge = if dir > 0.0 { hi } else { lo };
            if edge == 0.0 {
                return 0.0;
            }
            let mut h = step.min(edge.abs());
            let mut f_prev = f0;
            loop {
                let f = phi(s, dir * h);
                if f > f_prev || h >= edge.abs() {
                    return dir * h;
                }
                f_prev = f;
                if h >= 1e12 {
                    return dir * h;
                }
                h = (h * 2.618_033_988_749_895).min(edge.abs());
            }
        };
        let right = probe(self, 1.0);
        let left = probe(self, -1.0);
        (left, right)
    }

    /// Brent's parabolic/golden minimization on `[a, b]`, seeded at zero.
    fn brent(&mut self, phi: &dyn Fn(&mut Self, f64) -> f64, mut a: f64, mut b: f64, f0: f64) -> (f64, f64) {
        let (mut x, mut w, mut v) = (0.0f64, 0.0f64, 0.0f64);
        let (mut fx, mut fw, mut fv) = (f0, f0, f0);
        let (mut d, mut e) = (0.0f64, 0.0f64);
        for _ in 0..200 {
            let xm = 0.5 * (a + b);
            let tol1 = 1.5e-8 * x.abs() + 1e-11;
            let tol2 = 2.0 * tol1;
            if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
                break;
            }
            let mut golden = true;
            if e.abs() > tol1 && fx.is_finite() && fw.is_finite() && fv.is_finite() {
                let r = (x - w) * (fx - fv);
                let mut q = (x - v) * (fx - fw);
                let mut p = (x - v) * q - (x - w) * r;
                q = 2.0 * (q - r);
                if q > 0.0 {
                    p = -p;
                }
                q = q.abs();
                if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                    e = d;
                    d = p / q;
                    let u = x + d;
                    if u - a < tol2 || b - u < tol2 {
                        d = if xm >= x { tol1 } else { -tol1 };
                    }
                    golden = false;
                }
            }
            if golden {
                e = if x >= xm { a - x } else { b - x };
                d = GOLD * e;
            }
            let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
            let fu = phi(self, u);
            if fu <= fx {
                if u >= x { a = x } else { b = x }
                (v, w, x) = (w, x, u);
                (fv, fw, fx) = (fw, fx, fu);
            } else {
                if u < x { a = u } else { b = u }
                if fu <= fw || w == x {
                    (v, w) = (w, u);
                    (fv, fw) = (fw, fu);
                } else if fu <= fv || v == x || v == w {
                    v = u;
                    fv = fu;
                }
            }
        }
        (x, fx)
    }
}

/// Minimizes the problem's objective within its box.
pub fn minimize(fp: &FitProblem<'_>) -> FitResult {
    let n = fp.x0.len();
    let scale: Vec<f64> = fp.x0.iter().map(|x| if *x != 0.0 { x.abs() } else { 1.0 }).collect();
    let mut s = Search { fp, scale, evaluations: 0 };
    let mut y: Vec<f64> = fp.x0.iter().zip(&s.scale).map(|(x, s)| x / s).collect();
    let f0 = s.eval(&y);
    let mut f = f0;

    let identity = |n: usize| -> Vec<Vec<f64>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
    };
    let mut dirs = identity(n);
    let mut searches = 0usize;
    let mut iterations = 0usize;
    let mut converged = false;

    while iterations < fp.max_iter {
        iterations += 1;
        let y_start = y.clone();
        let f_start = f;
        let mut biggest = 0.0;
        let mut ibig = 0;
        for (i, d) in dirs.iter().enumerate() {
            let before = f;
            f = s.line_min(&mut y, d, f);
            searches += 1;
            if before - f > biggest {
                biggest = before - f;
                ibig = i;
            }
        }

        let shift: Vec<f64> = y.iter().zip(&y_start).map(|(a, b)| a - b).collect();
        let step = shift.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        let size = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let decrease = f_start - f;
        if decrease <= fp.tol * (f.abs() + fp.tol) && step <= fp.tol.sqrt() * (1.0 + size) {
            converged = true;
            break;
        }

        if step > 0.0 {
            let extrapolated: Vec<f64> = y.iter().zip(&shift).map(|(y, d)| y + d).collect();
            let inside = extrapolated
                .iter()
                .enumerate()
                .all(|(i, e)| fp.lower[i] <= e * s.scale[i] && e * s.scale[i] <= fp.upper[i]);
            let fe = if inside { s.eval(&extrapolated) } else { f64::INFINITY };
            if fe < f_start {
                let t = 2.0 * (f_start - 2.0 * f + fe) * (f_start - f - biggest).powi(2)
                    - biggest * (f_start - fe).powi(2);
                if t < 0.0 {
                    f = s.line_min(&mut y, &shift, f);
                    searches += 1;
                    dirs[ibig] = dirs[n - 1].clone();
                    dirs[n - 1] = shift;
                }
            }
        }
        if searches >= n * n {
            dirs = s.principal_axes(&y, f).unwrap_or_else(|| identity(n));
            searches = 0;
        }
        if decrease.abs() < TINY && step == 0.0 {
            converged = true;
            break;
        }
    }

    let x_star = s.to_x(&y);
    let residual_series = fp.residuals.as_ref().and_then(|r| r(&x_star).ok()).unwrap_or_default();
    FitResult {
        param_names: fp.param_names.clone(),
        x_star,
        f_star: f,
        f0,
        iterations,
        evaluations: s.evaluations,
        converged,
        residual_series,
    }
}

/// `[x/factor, x·factor]` for non-zero `x`, `[-1, 1]` around zero.
pub fn multiplicative_bounds(x0: &[f64], factor: f64) -> (Vec<f64>, Vec<f64>) {
    x0.iter()
        .map(|&x| if x == 0.0 { (-1.0, 1.0) } else { ((x / factor).min(x * factor), (x / factor).max(x * factor)) })
        .unzip()
}

fn names(n: &[&str]) -> Vec<String> {
    n.iter().map(|s| s.to_string()).collect()
}

fn sample(ts: &TimeSeries, grid: &[f64]) -> Result<Vec<f64>> {
    grid.iter().map(|&t| ts.interp_linear(t)).collect()
}

const BOUND_FACTOR: f64 = 5.0;

/// Convergence settings shared by the model fits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER }
    }
}

fn run(fp: FitProblem<'_>, opts: &FitOptions) -> Result<FitResult> {
    Ok(minimize(&fp.with_tol(opts.tol)?.with_max_iter(opts.max_iter)))
}

/// Fits `(alpha, gamma, M0)` to an observed price level in log space.
pub fn fit_price_level(
    n_ts: &TimeSeries,
    m_ts: &TimeSeries,
    p_ts: &TimeSeries,
    grid: &[f64],
    x0: &PriceLevelParams,
    opts: &FitOptions,
) -> Result<FitResult> {
    let n = sample(n_ts, grid)?;
    let m = sample(m_ts, grid)?;
    let data: Vec<(f64, f64)> = sample(p_ts, grid)?.into_iter().enumerate().map(|(i, p)| (i as f64, p)).collect();
    let obj = sum_sq_residuals(
        |x: &[f64], j: f64| {
            let j = j as usize;
            price_level(n[j], m[j], &PriceLevelParams { alpha: x[0], gamma: x[1], m0: x[2] })
        },
        data,
        Transform::Log,
    )?;
    let start = [x0.alpha, x0.gamma, x0.m0];
    let (lower, mut upper) = multiplicative_bounds(&start, BOUND_FACTOR);
    // keep γ M0 below every observed N and M so the logs stay positive
    let floor = n.iter().chain(&m).fold(f64::INFINITY, |a, &b| a.min(b));
    upper[1] = upper[1].min(0.99 * floor / upper[2]);
    if upper[1] < start[1] {
        return Err(Error::InvalidConfig(format!(
            "gamma M0 = {} is not below the smallest observation {floor}",
            x0.scale()
        )));
    }
    let fp = FitProblem::from_residuals(names(&["alpha", "gamma", "M0"]), start.to_vec(), lower, upper, &obj)?;
    run(fp, opts)
}

/// Fits one `(k_i, k_p)` pair to long rates against `M` and short rates
/// against `MB` simultaneously, in log-rate space.
#[allow(clippy::too_many_arguments)]
pub fn fit_interest(
    n_ts: &TimeSeries,
    m_ts: &TimeSeries,
    mb_ts: &TimeSeries,
    i_long_ts: &TimeSeries,
    i_short_ts: &TimeSeries,
    grid: &[f64],
    x0: &InterestParams,
    opts: &FitOptions,
) -> Result<FitResult> {
    let n = sample(n_ts, grid)?;
    let base = [sample(m_ts, grid)?, sample(mb_ts, grid)?];
    let g = grid.len();
    let data: Vec<(f64, f64)> = sample(i_long_ts, grid)?
        .into_iter()
        .chain(sample(i_short_ts, grid)?)
        .enumerate()
        .map(|(i, r)| (i as f64, r))
        .collect();
    let obj = sum_sq_residuals(
        |x: &[f64], j: f64| {
            let j = j as usize;
            let ip = InterestParams { k_i: x[0], k_p: x[1] };
            interest_rate(n[j % g], base[j / g][j % g], &ip)
        },
        data,
        Transform::Log,
    )?;
    let start = [x0.k_i, x0.k_p];
    let (lower, upper) = multiplicative_bounds(&start, BOUND_FACTOR);
    let fp = FitProblem::from_residuals(names(&["k_i", "k_p"]), start.to_vec(), lower, upper, &obj)?;
    run(fp, opts)
}

/// Closed-form least squares for `log N = log A + k1 log K + k2 log L`.
pub fn cobb_douglas_linear(n: &[f64], k: &[f64], l: &[f64]) -> Result<CobbDouglasParams> {
    let rows = n.len();
    if rows < 3 || k.len() != rows || l.len() != rows {
        return Err(Error::InsufficientData { need: 3, got: rows.min(k.len()).min(l.len()) });
    }
    if n.iter().chain(k).chain(l).any(|v| v.is_nan() || *v <= 0.0) {
        return Err(domain("production data must be positive"));
    }
    let design = DMatrix::from_fn(rows, 3, |i, j| match j {
        0 => 1.0,
        1 => k[i].ln(),
        _ => l[i].ln(),
    });
    let y = DVector::from_iterator(rows, n.iter().map(|v| v.ln()));
    let svd = design.svd(true, true);
    let sv = &svd.singular_values;
    let smax = sv.max();
    if sv.min() <= 1e-10 * smax {
        return Err(Error::RankDeficient);
    }
    let beta = svd.solve(&y, 1e-12 * smax).map_err(|_| Error::RankDeficient)?;
    CobbDouglasParams::new(beta[0].exp(), beta[1], beta[2])
}

/// Fits `(A, k1, k2)` in log space. The linear least-squares solution is
/// computed first; a rank-deficient design is rejected before searching.
pub fn fit_cobb_douglas(
    n_ts: &TimeSeries,
    k_ts: &TimeSeries,
    l_ts: &TimeSeries,
    grid: &[f64],
    x0: &CobbDouglasParams,
    opts: &FitOptions,
) -> Result<FitResult> {
    let n = sample(n_ts, grid)?;
    let k = sample(k_ts, grid)?;
    let l = sample(l_ts, grid)?;
    cobb_douglas_linear(&n, &k, &l)?;
    let data: Vec<(f64, f64)> = n.iter().enumerate().map(|(i, &v)| (i as f64, v)).collect();
    let obj = sum_sq_residuals(
        |x: &[f64], j: f64| {
            let j = j as usize;
            Ok((x[0].ln() + x[1] * k[j].ln() + x[2] * l[j].ln()).exp())
        },
        data,
        Transform::Log,
    )?;
    let start = [x0.a_tfp, x0.k1, x0.k2];
    let (lower, upper) = multiplicative_bounds(&start, BOUND_FACTOR);
    let fp = FitProblem::from_residuals(names(&["A", "k1", "k2"]), start.to_vec(), lower, upper, &obj)?;
    run(fp, opts)
}

/// Fits `k_H` to observed hours in linear space.
pub fn fit_okun(
    n_ts: &TimeSeries,
    p_ts: &TimeSeries,
    h_ts: &TimeSeries,
    grid: &[f64],
    k_h0: f64,
    opts: &FitOptions,
) -> Result<FitResult> {
    let n = sample(n_ts, grid)?;
    let p = sample(p_ts, grid)?;
    let data: Vec<(f64, f64)> = sample(h_ts, grid)?.into_iter().enumerate().map(|(i, h)| (i as f64, h)).collect();
    let obj = sum_sq_residuals(
        |x: &[f64], j: f64| {
            let j = j as usize;
            hours(n[j], p[j], x[0])
        },
        data,
        Transform::Linear,
    )?;
    let (lower, upper) = multiplicative_bounds(&[k_h0], BOUND_FACTOR);
    let fp = FitProblem::from_residuals(names(&["k_H"]), vec![k_h0], lower, upper, &obj)?;
    run(fp, opts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub model: String,
    pub params: Vec<(String, f64)>,
    pub f_star: f64,
    pub f0: f64,
    pub iterations: usize,
    pub converged: bool,
    pub points: usize,
    pub rmse: f64,
    pub max_abs: f64,
    /// Sample standard deviation of the residuals (the 1-σ band).
    pub residual_sd: f64,
}

impl FitReport {
    pub fn new(model: &str, r: &FitResult) -> Self {
        let e = &r.residual_series;
        let n = e.len() as f64;
        let (rmse, max_abs, residual_sd) = if e.is_empty() {
            (f64::NAN, f64::NAN, f64::NAN)
        } else {
            let mean = e.iter().sum::<f64>() / n;
            let ss: f64 = e.iter().map(|x| (x - mean).powi(2)).sum();
            let sd = if e.len() > 1 { (ss / (n - 1.0)).sqrt() } else { 0.0 };
            ((e.iter().map(|x| x * x).sum::<f64>() / n).sqrt(), e.iter().fold(0.0f64, |m, x| m.max(x.abs())), sd)
        };
        Self {
            model: model.to_string(),
            params: r.param_names.iter().cloned().zip(r.x_star.iter().copied()).collect(),
            f_star: r.f_star,
            f0: r.f0,
            iterations: r.iterations,
            converged: r.converged,
            points: e.len(),
            rmse,
            max_abs,
            residual_sd,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
