//! Conformally flat Cahen–Wallach spaces `g_± = g_{±I}`: the global map of
//! `(ℝ^{n+2}, e^{2t} g_+)` onto the Minkowski half-space `{u > 0}`, the local
//! flattening of `g_−` on the strip `|t| < π/2`, pullbacks through smooth
//! maps, and the ODE showing that `g_−` has no global flat rescaling.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::curvature::{
    conformal_change_at, conformal_christoffel_at, covariant_hessian, inverse_metric_at, metric_at, ScalarJet2,
    SymBilinear,
};
use crate::error::{CwError, Result};
use crate::group::Homothety;
use crate::ode::Dopri5;
use crate::point::Point;
use crate::profile::SymmetricProfile;
use crate::report::{Check, Report};
use crate::sampling;
use crate::sign::Sign;

/// Strictness margin for the half-space `{u > 0}`.
pub const HALF_SPACE_MARGIN: f64 = 1e-12;
/// Step for finite-difference Jacobians.
pub const FD_STEP: f64 = 1e-6;

/// A smooth map between open subsets of `ℝ^m`.
pub trait SmoothMap {
    fn dim(&self) -> usize;

    fn in_domain(&self, p: &DVector<f64>) -> bool;

    /// Evaluation without the domain check.
    fn eval(&self, p: &DVector<f64>) -> DVector<f64>;

    fn analytic_jacobian(&self, _p: &DVector<f64>) -> Option<DMatrix<f64>> {
        None
    }

    fn inverse_eval(&self, _q: &DVector<f64>) -> Option<Result<DVector<f64>>> {
        None
    }

    fn forward(&self, p: &DVector<f64>) -> Result<DVector<f64>> {
        if p.len() != self.dim() {
            return Err(CwError::DimensionMismatch { expected: self.dim(), got: p.len() });
        }
        if !self.in_domain(p) {
            return Err(CwError::Domain(format!("{:?} is outside the domain", p.as_slice())));
        }
        Ok(self.eval(p))
    }

    /// Analytic Jacobian when available, central differences otherwise.
    fn jacobian(&self, p: &DVector<f64>) -> Result<DMatrix<f64>> {
        self.forward(p)?;
        Ok(self.analytic_jacobian(p).unwrap_or_else(|| finite_difference_jacobian(self, p, FD_STEP)))
    }
}

pub fn finite_difference_jacobian<M: SmoothMap + ?Sized>(map: &M, p: &DVector<f64>, h: f64) -> DMatrix<f64> {
    let m = p.len();
    let k = map.eval(p).len();
    let mut j = DMatrix::zeros(k, m);
    for i in 0..m {
        let mut plus = p.clone();
        let mut minus = p.clone();
        plus[i] += h;
        minus[i] -= h;
        j.set_column(i, &((map.eval(&plus) - map.eval(&minus)) / (2.0 * h)));
    }
    j
}

/// `(t, x, v) ↦ (u, y, z) = (e^{2t}/2, e^t x, v − ‖x‖²/2)`, with
/// `φ*(2 du dz + ‖dy‖²) = e^{2t} g_+`.
#[derive(Debug, Clone, Copy)]
pub struct MinkowskiMap {
    pub n: usize,
}

impl SmoothMap for MinkowskiMap {
    fn dim(&self) -> usize {
        self.n + 2
    }

    fn in_domain(&self, p: &DVector<f64>) -> bool {
        p.iter().all(|c| c.is_finite())
    }

    fn eval(&self, p: &DVector<f64>) -> DVector<f64> {
        let n = self.n;
        let (t, x, v) = (p[0], p.rows(1, n), p[n + 1]);
        let mut q = DVector::zeros(n + 2);
        q[0] = (2.0 * t).exp() / 2.0;
        q.rows_mut(1, n).copy_from(&(x * t.exp()));
        q[n + 1] = v - x.norm_squared() / 2.0;
        q
    }

    fn analytic_jacobian(&self, p: &DVector<f64>) -> Option<DMatrix<f64>> {
        let n = self.n;
        let (t, x) = (p[0], p.rows(1, n));
        let et = t.exp();
        let mut j = DMatrix::zeros(n + 2, n + 2);
        j[(0, 0)] = (2.0 * t).exp();
        for i in 0..n {
            j[(1 + i, 0)] = et * x[i];
            j[(1 + i, 1 + i)] = et;
            j[(n + 1, 1 + i)] = -x[i];
        }
        j[(n + 1, n + 1)] = 1.0;
        Some(j)
    }

    fn inverse_eval(&self, q: &DVector<f64>) -> Option<Result<DVector<f64>>> {
        let n = self.n;
        let u = q[0];
        if !(u > HALF_SPACE_MARGIN) {
            return Some(Err(CwError::Domain(format!("u = {u} is not in the half-space u > 0"))));
        }
        let y = q.rows(1, n);
        let mut p = DVector::zeros(n + 2);
        p[0] = 0.5 * (2.0 * u).ln();
        p.rows_mut(1, n).copy_from(&(y / (2.0 * u).sqrt()));
        p[n + 1] = q[n + 1] + y.norm_squared() / (4.0 * u);
        Some(Ok(p))
    }
}

/// `(t, x, v) ↦ (tan t, x / cos t, v − ‖x‖² tan t / 2)` on `|t| < π/2`, with
/// `φ*(2 du dz + ‖dy‖²) = g_− / cos² t`.
#[derive(Debug, Clone, Copy)]
pub struct ImaginaryLocalMap {
    pub n: usize,
}

impl SmoothMap for ImaginaryLocalMap {
    fn dim(&self) -> usize {
        self.n + 2
    }

    fn in_domain(&self, p: &DVector<f64>) -> bool {
        p[0].abs() < std::f64::consts::FRAC_PI_2 && p.iter().all(|c| c.is_finite())
    }

    fn eval(&self, p: &DVector<f64>) -> DVector<f64> {
        let n = self.n;
        let (t, x, v) = (p[0], p.rows(1, n), p[n + 1]);
        let mut q = DVector::zeros(n + 2);
        q[0] = t.tan();
        q.rows_mut(1, n).copy_from(&(x / t.cos()));
        q[n + 1] = v - x.norm_squared() * t.tan() / 2.0;
        q
    }

    fn analytic_jacobian(&self, p: &DVector<f64>) -> Option<DMatrix<f64>> {
        let n = self.n;
        let (t, x) = (p[0], p.rows(1, n));
        let (sn, cs) = t.sin_cos();
        let sec2 = 1.0 / (cs * cs);
        let mut j = DMatrix::zeros(n + 2, n + 2);
        j[(0, 0)] = sec2;
        for i in 0..n {
            j[(1 + i, 0)] = x[i] * sn * sec2;
            j[(1 + i, 1 + i)] = 1.0 / cs;
            j[(n + 1, 1 + i)] = -x[i] * sn / cs;
        }
        j[(n + 1, 0)] = -x.norm_squared() * sec2 / 2.0;
        j[(n + 1, n + 1)] = 1.0;
        Some(j)
    }

    fn inverse_eval(&self, q: &DVector<f64>) -> Option<Result<DVector<f64>>> {
        let n = self.n;
        let t = q[0].atan();
        let x = q.rows(1, n) * t.cos();
        let mut p = DVector::zeros(n + 2);
        p[0] = t;
        p[n + 1] = q[n + 1] + x.norm_squared() * q[0] / 2.0;
        p.rows_mut(1, n).copy_from(&x);
        Some(Ok(p))
    }
}

type VecFn = Box<dyn Fn(&DVector<f64>) -> DVector<f64> + Send + Sync>;
type MatFn = Box<dyn Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync>;
type DomainFn = Box<dyn Fn(&DVector<f64>) -> bool + Send + Sync>;

/// A map assembled from closures.
pub struct FnMap {
    dim: usize,
    forward: VecFn,
    inverse: Option<VecFn>,
    jacobian: Option<MatFn>,
    domain: Option<DomainFn>,
}

impl FnMap {
    pub fn new(dim: usize, forward: impl Fn(&DVector<f64>) -> DVector<f64> + Send + Sync + 'static) -> Self {
        Self { dim, forward: Box::new(forward), inverse: None, jacobian: None, domain: None }
    }

    pub fn with_inverse(mut self, f: impl Fn(&DVector<f64>) -> DVector<f64> + Send + Sync + 'static) -> Self {
        self.inverse = Some(Box::new(f));
        self
    }

    pub fn with_jacobian(mut self, f: impl Fn(&DVector<f64>) -> DMatrix<f64> + Send + Sync + 'static) -> Self {
        self.jacobian = Some(Box::new(f));
        self
    }

    pub fn with_domain(mut self, f: impl Fn(&DVector<f64>) -> bool + Send + Sync + 'static) -> Self {
        self.domain = Some(Box::new(f));
        self
    }
}

impl SmoothMap for FnMap {
    fn dim(&self) -> usize {
        self.dim
    }

    fn in_domain(&self, p: &DVector<f64>) -> bool {
        self.domain.as_ref().is_none_or(|d| d(p))
    }

    fn eval(&self, p: &DVector<f64>) -> DVector<f64> {
        (self.forward)(p)
    }

    fn analytic_jacobian(&self, p: &DVector<f64>) -> Option<DMatrix<f64>> {
        self.jacobian.as_ref().map(|j| j(p))
    }

    fn inverse_eval(&self, q: &DVector<f64>) -> Option<Result<DVector<f64>>> {
        self.inverse.as_ref().map(|f| Ok(f(q)))
    }
}

impl SmoothMap for Homothety {
    fn dim(&self) -> usize {
        self.n() + 2
    }

    fn in_domain(&self, p: &DVector<f64>) -> bool {
        p.iter().all(|c| c.is_finite())
    }

    fn eval(&self, p: &DVector<f64>) -> DVector<f64> {
        let pt = Point::from_vector(p).expect("dimension checked by caller");
        self.apply_unchecked(&pt).to_vector()
    }

    fn analytic_jacobian(&self, p: &DVector<f64>) -> Option<DMatrix<f64>> {
        Point::from_vector(p).ok().and_then(|pt| self.jacobian(&pt).ok())
    }

    fn inverse_eval(&self, q: &DVector<f64>) -> Option<Result<DVector<f64>>> {
        Some(Point::from_vector(q).map(|pt| self.inverse().apply_unchecked(&pt).to_vector()))
    }
}

/// `(φ*g)|_p = Dφᵀ · g|_{φ(p)} · Dφ`.
pub fn pullback_metric<M: SmoothMap + ?Sized>(
    map: &M,
    target: &dyn Fn(&DVector<f64>) -> Result<SymBilinear>,
    p: &DVector<f64>,
) -> Result<SymBilinear> {
    let q = map.forward(p)?;
    let j = map.jacobian(p)?;
    let g = target(&q)?;
    let pulled = j.transpose() * g.matrix() * &j;
    Ok(SymBilinear::from_matrix_unchecked((&pulled + pulled.transpose()) * 0.5))
}

/// `g₀ = 2 du dz + ‖dy‖²`, the Minkowski metric in null coordinates.
pub fn minkowski_metric(q: &DVector<f64>) -> Result<SymBilinear> {
    let n = q.len() - 2;
    let flat = SymmetricProfile::new(DMatrix::zeros(n, n))?;
    metric_at(&flat, &Point::from_vector(q)?)
}

pub fn g_plus(n: usize) -> Arc<SymmetricProfile> {
    Arc::new(SymmetricProfile::scalar(n, 1.0).expect("valid profile"))
}

pub fn g_minus(n: usize) -> Arc<SymmetricProfile> {
    Arc::new(SymmetricProfile::scalar(n, -1.0).expect("valid profile"))
}

/// Jet of `f = t`, which flattens `g_+`.
pub fn real_rescaling_jet(n: usize, t: f64) -> ScalarJet2 {
    ScalarJet2::linear_in_t(n, 1.0, t)
}

/// Jet of `f = −ln cos t`, which flattens `g_−` on the strip.
pub fn imaginary_rescaling_jet(n: usize, t: f64) -> ScalarJet2 {
    let mut gradient = DVector::zeros(n + 2);
    gradient[0] = t.tan();
    let mut hessian = DMatrix::zeros(n + 2, n + 2);
    hessian[(0, 0)] = 1.0 / t.cos().powi(2);
    ScalarJet2 { value: -t.cos().ln(), gradient, hessian }
}

/// Max entry of `ε dt² + (∇df − df²) + ½ |∇f|² g` on `g_{εI}`; this vanishes
/// exactly for rescalings to a Ricci-flat metric.
pub fn ricci_flat_residual(eps: Sign, p: &Point, jet: &ScalarJet2) -> Result<f64> {
    let n = p.n();
    let profile = SymmetricProfile::scalar(n, eps.value())?;
    let g = metric_at(&profile, p)?;
    let h = inverse_metric_at(&profile, p)?;
    let ndf = covariant_hessian(&profile, p, jet)?;
    let df = &jet.gradient;
    let grad_sq = df.dot(&(&h * df));
    let mut r = ndf.matrix() - df * df.transpose() + g.matrix() * (0.5 * grad_sq);
    r[(0, 0)] += eps.value();
    Ok(crate::linalg::max_abs(&r))
}

/// Residual of the geodesic equation of `e^{2t} g_+` along
/// `s ↦ (½ ln(2s + 1), 0, 0)`.
pub fn geodesic_witness_residual(n: usize, s: f64) -> Result<f64> {
    if s <= -0.5 {
        return Err(CwError::Domain(format!("the witness curve needs s > −1/2, got {s}")));
    }
    let t = 0.5 * (2.0 * s + 1.0).ln();
    let p = Point::new(t, DVector::zeros(n), 0.0);
    let gamma = conformal_christoffel_at(&g_plus(n), &p, &real_rescaling_jet(n, t))?;
    let mut vel = DVector::zeros(n + 2);
    vel[0] = 1.0 / (2.0 * s + 1.0);
    let mut acc = DVector::zeros(n + 2);
    acc[0] = -2.0 / (2.0 * s + 1.0).powi(2);
    let m = n + 2;
    let mut worst = 0.0_f64;
    for k in 0..m {
        let mut r = acc[k];
        for i in 0..m {
            for j in 0..m {
                r += gamma.get(k, i, j) * vel[i] * vel[j];
            }
        }
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

/// `(u, y, z) ↦ (e^{2c} u, e^c y, z)`: the time shift by `c` seen through the
/// Minkowski map.
pub fn conjugated_translation(n: usize, c: f64) -> FnMap {
    FnMap::new(n + 2, move |q| {
        let mut out = q.clone();
        out[0] *= (2.0 * c).exp();
        out.rows_mut(1, n).scale_mut(c.exp());
        out
    })
}

/// `η(u, y, z) = (1/(4u), y/(2u), −z − ‖y‖²/(2u))`: the reflection
/// `(t, x, v) ↦ (−t, x, −v)` seen through the Minkowski map.
pub fn conjugated_inversion(n: usize) -> FnMap {
    FnMap::new(n + 2, move |q| {
        let u = q[0];
        let y = q.rows(1, n);
        let mut out = DVector::zeros(n + 2);
        out[0] = 1.0 / (4.0 * u);
        out.rows_mut(1, n).copy_from(&(y / (2.0 * u)));
        out[n + 1] = -q[n + 1] - y.norm_squared() / (2.0 * u);
        out
    })
    .with_domain(|q| q[0] > HALF_SPACE_MARGIN)
}

#[derive(Debug, Clone, Serialize)]
pub struct BlowupReport {
    pub ts: Vec<f64>,
    pub ys: Vec<f64>,
    pub blowup_t: Option<f64>,
    /// For `ε = +1`: residual of the Ricci-flat rescaling equation for `f = t`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ricci_flat_residual: Option<f64>,
}

/// Integrates `ẏ = y² − ε` from `y(0) = y0`; `ε = −1` is the equation forced
/// on `ḣ` by a flat rescaling of `g_−`, whose solutions escape in finite time.
pub fn flatness_blowup_demo(eps: Sign, y0: f64, tmax: f64) -> Result<BlowupReport> {
    if !(tmax > 0.0) || !y0.is_finite() {
        return Err(CwError::InvalidInput("need tmax > 0 and finite y0".into()));
    }
    let e = eps.value();
    let tr = Dopri5::default().integrate(|_, y| y * y - e, 0.0, y0, tmax);
    let blowup_t = tr.escaped.map(|(t, y)| t + 1.0 / y);
    let ricci_flat_residual = if eps == Sign::Plus {
        let mut worst = 0.0_f64;
        for k in 0..5 {
            let t = -1.0 + 0.5 * k as f64;
            let p = Point::from_parts(t, &[0.7, -0.4], 1.3);
            worst = worst.max(ricci_flat_residual(Sign::Plus, &p, &real_rescaling_jet(2, t))?);
        }
        Some(worst)
    } else {
        None
    };
    Ok(BlowupReport { ts: tr.ts, ys: tr.ys, blowup_t, ricci_flat_residual })
}

/// Runs every check of the flat models at `samples` random points.
pub fn flat_model_report(n: usize, samples: usize, seed: u64) -> Result<Report> {
    use rand::Rng;
    let mut rng = sampling::rng(seed);
    let mut report = Report::new("flat-models");
    let mink = MinkowskiMap { n };
    let strip = ImaginaryLocalMap { n };
    let gp = g_plus(n);
    let gm = g_minus(n);

    let (mut pull_plus, mut round_plus, mut pull_minus, mut round_minus) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    let (mut shift_res, mut inv_res, mut eta_pull, mut flat_plus, mut flat_minus) =
        (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    let inversion = conjugated_inversion(n);
    for _ in 0..samples {
        let p = sampling::random_point(&mut rng, n, 1.0);
        let pv = p.to_vector();
        let pulled = pullback_metric(&mink, &minkowski_metric, &pv)?;
        let expected = metric_at(&gp, &p)?.scale((2.0 * p.t).exp());
        pull_plus = pull_plus.max(pulled.max_diff(&expected) / (2.0 * p.t).exp().max(1.0));
        let back = mink.inverse_eval(&mink.forward(&pv)?).expect("has inverse")?;
        round_plus = round_plus.max((back - &pv).amax());

        let mut ps = p.clone();
        ps.t = rng.random_range(-1.2..1.2);
        let psv = ps.to_vector();
        let pulled = pullback_metric(&strip, &minkowski_metric, &psv)?;
        let expected = metric_at(&gm, &ps)?.scale(1.0 / ps.t.cos().powi(2));
        pull_minus = pull_minus.max(pulled.max_diff(&expected) / expected.max_abs().max(1.0));
        let back = strip.inverse_eval(&strip.forward(&psv)?).expect("has inverse")?;
        round_minus = round_minus.max((back - &psv).amax());

        let c: f64 = rng.random_range(-1.0..1.0);
        let mut shifted = pv.clone();
        shifted[0] += c;
        let lhs = mink.eval(&shifted);
        let rhs = conjugated_translation(n, c).eval(&mink.eval(&pv));
        shift_res = shift_res.max((lhs - &rhs).amax() / rhs.amax().max(1.0));

        let mut reflected = pv.clone();
        reflected[0] = -pv[0];
        reflected[n + 1] = -pv[n + 1];
        let q = mink.eval(&pv);
        let lhs = mink.eval(&reflected);
        let rhs = inversion.forward(&q)?;
        inv_res = inv_res.max((lhs - &rhs).amax() / rhs.amax().max(1.0));
        let pulled = pullback_metric(&inversion, &minkowski_metric, &q)?;
        let expected = minkowski_metric(&q)?.scale(1.0 / (4.0 * q[0] * q[0]));
        eta_pull = eta_pull.max(pulled.max_diff(&expected) / expected.max_abs().max(1.0));

        let out = conformal_change_at(&gp, &p, &real_rescaling_jet(n, p.t))?;
        flat_plus = flat_plus.max(out.riemann_hat.max_abs());
        let out = conformal_change_at(&gm, &ps, &imaginary_rescaling_jet(n, ps.t))?;
        flat_minus = flat_minus.max(out.riemann_hat.max_abs());
    }
    report.push(Check::within("minkowski_pullback", pull_plus, 1e-9));
    report.push(Check::within("minkowski_round_trip", round_plus, 1e-10));
    report.push(Check::within("strip_pullback", pull_minus, 1e-9));
    report.push(Check::within("strip_round_trip", round_minus, 1e-9));
    report.push(Check::within("translation_conjugate", shift_res, 1e-9));
    report.push(Check::within("reflection_conjugate", inv_res, 1e-8));
    report.push(Check::within("inversion_conformal_factor", eta_pull, 1e-8));
    report.push(Check::within("flat_rescaling_real", flat_plus, 1e-7));
    report.push(Check::within("flat_rescaling_strip", flat_minus, 1e-7));

    let geo = (0..50)
        .map(|k| geodesic_witness_residual(n, -0.4 + 5.4 * k as f64 / 49.0))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    report.push(Check::within("incomplete_geodesic", geo, 1e-6));

    let blow = flatness_blowup_demo(Sign::Minus, 0.0, 3.0)?;
    let err = blow.blowup_t.map_or(f64::INFINITY, |t| (t - std::f64::consts::FRAC_PI_2).abs());
    report.push(Check::within("blowup_time", err, 1e-3));
    let real = flatness_blowup_demo(Sign::Plus, 0.0, 1.0)?;
    report.push(Check::within("real_rescaling_equation", real.ricci_flat_residual.unwrap_or(f64::NAN), 1e-10));
    Ok(report)
}
