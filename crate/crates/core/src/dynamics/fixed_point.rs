use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{CwError, Result};
use crate::group::{Homothety, GROUP_TOLERANCE};
use crate::linalg::lstsq;
use crate::point::Point;
use crate::sign::Sign;

/// Which construction produced (or ruled out) the fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedPointReason {
    StrictEpsMinus1,
    StrictCZero,
    IsometryEuclideanFp,
    TorsionCenterOfMass,
    NoneTranslation,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointReport {
    pub exists: bool,
    pub point: Option<Point>,
    pub reason: FixedPointReason,
}

impl FixedPointReport {
    fn found(point: Point, reason: FixedPointReason) -> Self {
        Self { exists: true, point: Some(point), reason }
    }

    fn none() -> Self {
        Self { exists: false, point: None, reason: FixedPointReason::NoneTranslation }
    }
}

/// `|c|` below this counts as `c = 0`.
const C_ZERO: f64 = 1e-12;

/// `v` with `ε(e^{2s} v + b − K) = v`, where `K = ⟨β̇(t), e^s A x + ½β(t)⟩`.
fn solve_v(phi: &Homothety, t: f64, x: &DVector<f64>) -> f64 {
    let e = phi.eps().value();
    let (bt, bdot) = phi.beta().eval(t);
    let k = bdot.dot(&(phi.a() * x * phi.s().exp() + &bt * 0.5));
    -e * (phi.b() - k) / (e * (2.0 * phi.s()).exp() - 1.0)
}

/// A fixed point of `φ`, if one exists.
///
/// Strict homotheties fix a point exactly when `ε = −1` or `c = 0`. For
/// isometries the transverse part `x ↦ Ax + β(t*)` has to have a fixed point
/// at the fixed time `t*`; with `ε = +1, c = 0` only `t* = 0` is examined.
pub fn fixed_point(phi: &Homothety) -> FixedPointReport {
    let n = phi.n();
    let tol = phi.profile().tolerance();
    let eps = phi.eps();
    let c = phi.c();
    let t_star = match eps {
        Sign::Minus => c / 2.0,
        Sign::Plus if c.abs() <= C_ZERO => 0.0,
        Sign::Plus => return FixedPointReport::none(),
    };

    if phi.is_strict() {
        let m = phi.a() * phi.s().exp() - DMatrix::identity(n, n);
        let rhs = -phi.beta().evaluate(t_star);
        let x = m.lu().solve(&rhs).expect("e^s A − I is invertible for s ≠ 0");
        let v = solve_v(phi, t_star, &x);
        let reason = if eps == Sign::Minus { FixedPointReason::StrictEpsMinus1 } else { FixedPointReason::StrictCZero };
        return FixedPointReport::found(Point::new(t_star, x, v), reason);
    }

    let (b0, bd0) = phi.beta().eval(t_star);
    let m = phi.a() - DMatrix::identity(n, n);
    let sol = lstsq(&m, &(-&b0), tol);
    if sol.residual > tol * b0.amax().max(1.0) {
        return FixedPointReport::none();
    }
    let mut y = sol.solution;
    let v = match eps {
        Sign::Minus => -0.5 * (phi.b() - bd0.dot(&(phi.a() * &y + &b0 * 0.5))),
        Sign::Plus => {
            // Every v is fixed once b − ⟨β̇₀, Ay + ½β₀⟩ vanishes; shifting y
            // along ker(A − I) changes this quantity linearly.
            let r = phi.b() - bd0.dot(&(phi.a() * &y + &b0 * 0.5));
            if r.abs() > GROUP_TOLERANCE * phi.b().abs().max(1.0) {
                let proj = sol.kernel.iter().fold(DVector::zeros(n), |acc, k| acc + k * k.dot(&bd0));
                let q = proj.norm_squared();
                if q <= tol {
                    return FixedPointReport::none();
                }
                y += proj * (r / q);
            }
            0.0
        }
    };
    FixedPointReport::found(Point::new(t_star, y, v), FixedPointReason::IsometryEuclideanFp)
}

/// Fixed point of a homothety of finite order `k`, built from the centre of
/// mass of an orbit of the transverse Euclidean motion.
pub fn torsion_fixed_point(phi: &Homothety, k: u32) -> Result<FixedPointReport> {
    if k == 0 {
        return Err(CwError::InvalidInput("order k must be positive".into()));
    }
    let power = phi.pow(k as i64);
    let dist = power.distance_to_identity();
    if dist > 1e-8 {
        return Err(CwError::Precondition(format!("φ^{k} differs from the identity by {dist:.3e}")));
    }
    let n = phi.n();
    let t_star = phi.c() / 2.0;
    let (b0, bd0) = phi.beta().eval(t_star);
    let mut x = DVector::zeros(n);
    let mut y = DVector::zeros(n);
    for _ in 0..k {
        x = phi.a() * &x + &b0;
        y += &x;
    }
    y /= k as f64;
    let v = match phi.eps() {
        Sign::Minus => -0.5 * (phi.b() - bd0.dot(&(phi.a() * &y + &b0 * 0.5))),
        Sign::Plus => 0.0,
    };
    Ok(FixedPointReport::found(Point::new(t_star, y, v), FixedPointReason::TorsionCenterOfMass))
}

/// A strict homothety is essential exactly when it fixes a point.
pub fn is_essential(phi: &Homothety) -> Result<bool> {
    if !phi.is_strict() {
        return Err(CwError::NotStrict(phi.s()));
    }
    Ok(fixed_point(phi).exists)
}
