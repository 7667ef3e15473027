use serde::Serialize;

use crate::error::{CwError, Result};
use crate::group::Homothety;
use crate::point::Point;
use crate::sign::Sign;

fn mollifier(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

/// Smooth step: 0 for `x ≤ 0`, 1 for `x ≥ 1`.
fn smooth_step(x: f64) -> f64 {
    let a = mollifier(x);
    let b = mollifier(1.0 - x);
    a / (a + b)
}

/// Smooth bump equal to 1 on `[0, L]` and supported in `(−L/4, 5L/4)`.
pub fn smooth_bump(t: f64, l: f64) -> f64 {
    let q = l / 4.0;
    smooth_step((t + q) / q) * smooth_step((5.0 * q - t) / q)
}

/// `f = −s Σ_k k·f_k` where `f_k(t) = h(t − kc) / Σ_j h(t − jc)`.
/// Satisfies `f ∘ φ = f − s`, so `φ` is an isometry of `e^{2f} g_S`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct InessentialRescaling {
    pub c: f64,
    pub s: f64,
}

impl InessentialRescaling {
    pub fn eval_t(&self, t: f64) -> f64 {
        let (c, l) = (self.c, self.c.abs());
        let k0 = (t / c).floor() as i64;
        let mut num = 0.0;
        let mut den = 0.0;
        for k in (k0 - 2)..=(k0 + 2) {
            let h = smooth_bump(t - k as f64 * c, l);
            num += k as f64 * h;
            den += h;
        }
        -self.s * num / den
    }

    pub fn eval(&self, p: &Point) -> f64 {
        self.eval_t(p.t)
    }
}

pub fn inessential_rescaling(phi: &Homothety) -> Result<InessentialRescaling> {
    if !phi.is_strict() {
        return Err(CwError::NotStrict(phi.s()));
    }
    if phi.eps() == Sign::Minus || phi.c() == 0.0 {
        return Err(CwError::Precondition("φ fixes a point, so it is essential".into()));
    }
    Ok(InessentialRescaling { c: phi.c(), s: phi.s() })
}
