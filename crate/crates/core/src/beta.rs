//! Solutions of `β̈ = Sβ`, stored by their initial data at `t = 0`.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{CwError, Result};
use crate::profile::SymmetricProfile;
use crate::sign::Sign;

/// JSON shape `{"beta0": [real], "beta1": [real]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BetaSpec {
    pub beta0: Vec<f64>,
    pub beta1: Vec<f64>,
}

/// `β ∈ V_S` with `β(0) = beta0`, `β̇(0) = beta1`.
#[derive(Debug, Clone)]
pub struct BetaSolution {
    profile: Arc<SymmetricProfile>,
    beta0: DVector<f64>,
    beta1: DVector<f64>,
}

impl BetaSolution {
    pub fn new(profile: Arc<SymmetricProfile>, beta0: DVector<f64>, beta1: DVector<f64>) -> Result<Self> {
        let n = profile.n();
        for b in [&beta0, &beta1] {
            if b.len() != n {
                return Err(CwError::DimensionMismatch { expected: n, got: b.len() });
            }
            if b.iter().any(|c| !c.is_finite()) {
                return Err(CwError::InvalidInput("beta has non-finite entries".into()));
            }
        }
        Ok(Self { profile, beta0, beta1 })
    }

    pub fn from_slices(profile: Arc<SymmetricProfile>, beta0: &[f64], beta1: &[f64]) -> Result<Self> {
        Self::new(profile, DVector::from_column_slice(beta0), DVector::from_column_slice(beta1))
    }

    pub fn zero(profile: Arc<SymmetricProfile>) -> Self {
        let n = profile.n();
        Self { profile, beta0: DVector::zeros(n), beta1: DVector::zeros(n) }
    }

    pub fn from_spec(profile: Arc<SymmetricProfile>, spec: &BetaSpec) -> Result<Self> {
        Self::from_slices(profile, &spec.beta0, &spec.beta1)
    }

    pub fn to_spec(&self) -> BetaSpec {
        BetaSpec { beta0: self.beta0.as_slice().to_vec(), beta1: self.beta1.as_slice().to_vec() }
    }

    pub fn profile(&self) -> &Arc<SymmetricProfile> {
        &self.profile
    }

    pub fn beta0(&self) -> &DVector<f64> {
        &self.beta0
    }

    pub fn beta1(&self) -> &DVector<f64> {
        &self.beta1
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.beta0.amax() <= tol && self.beta1.amax() <= tol
    }

    /// `(β(t), β̇(t))`.
    pub fn eval(&self, t: f64) -> (DVector<f64>, DVector<f64>) {
        if t == 0.0 {
            return (self.beta0.clone(), self.beta1.clone());
        }
        let n = self.profile.n();
        let mut value = DVector::zeros(n);
        let mut deriv = DVector::zeros(n);
        for block in self.profile.spectrum() {
            let q = &block.vectors;
            let a0 = q.transpose() * &self.beta0;
            let a1 = q.transpose() * &self.beta1;
            if block.eigenvalue > 0.0 {
                // Split into e^{±rt} modes so decaying solutions keep their
                // relative accuracy.
                let r = block.eigenvalue.sqrt();
                let grow = (&a0 + &a1 / r) * 0.5;
                let decay = (&a0 - &a1 / r) * 0.5;
                let (ep, em) = ((r * t).exp(), (-r * t).exp());
                value += q * (&grow * ep + &decay * em);
                deriv += q * (&grow * ep - &decay * em) * r;
                continue;
            }
            let (c0, c1, d0, d1) = scalar_flow(block.eigenvalue, t);
            value += q * (&a0 * c0 + &a1 * c1);
            deriv += q * (&a0 * d0 + &a1 * d1);
        }
        (value, deriv)
    }

    pub fn evaluate(&self, t: f64) -> DVector<f64> {
        self.eval(t).0
    }

    pub fn derivative(&self, t: f64) -> DVector<f64> {
        self.eval(t).1
    }

    /// `β̈(t) = S β(t)`.
    pub fn second_derivative(&self, t: f64) -> DVector<f64> {
        self.profile.matrix() * self.evaluate(t)
    }

    /// `t ↦ A β(εt + c)`.
    pub fn reparam(&self, c: f64, eps: Sign, a: &DMatrix<f64>) -> Result<Self> {
        self.profile.check_centraliser(a)?;
        Ok(self.reparam_unchecked(c, eps, a))
    }

    pub(crate) fn reparam_unchecked(&self, c: f64, eps: Sign, a: &DMatrix<f64>) -> Self {
        let (b, bd) = self.eval(c);
        Self { profile: self.profile.clone(), beta0: a * b, beta1: a * bd * eps.value() }
    }

    /// `t ↦ β(t + c)`.
    pub fn shift(&self, c: f64) -> Self {
        let (b0, b1) = self.eval(c);
        Self { profile: self.profile.clone(), beta0: b0, beta1: b1 }
    }

    /// `t ↦ M β(t)` for a matrix commuting with `S`.
    pub(crate) fn map_linear(&self, m: &DMatrix<f64>) -> Self {
        Self { profile: self.profile.clone(), beta0: m * &self.beta0, beta1: m * &self.beta1 }
    }

    pub fn scale(&self, k: f64) -> Self {
        Self { profile: self.profile.clone(), beta0: &self.beta0 * k, beta1: &self.beta1 * k }
    }

    pub fn add(&self, other: &BetaSolution) -> Result<Self> {
        self.profile.ensure_compatible(&other.profile)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &BetaSolution) -> Self {
        Self {
            profile: self.profile.clone(),
            beta0: &self.beta0 + &other.beta0,
            beta1: &self.beta1 + &other.beta1,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    /// `ω(β, β̂) = ½(⟨β₀, β̂₁⟩ − ⟨β₁, β̂₀⟩)`.
    pub fn symplectic_form(&self, other: &BetaSolution) -> Result<f64> {
        self.profile.ensure_compatible(&other.profile)?;
        Ok(self.omega_unchecked(other))
    }

    pub(crate) fn omega_unchecked(&self, other: &BetaSolution) -> f64 {
        0.5 * (self.beta0.dot(&other.beta1) - self.beta1.dot(&other.beta0))
    }

    /// `½(⟨β(t), β̂̇(t)⟩ − ⟨β̇(t), β̂(t)⟩)`, constant in `t`.
    pub fn symplectic_form_at(&self, other: &BetaSolution, t: f64) -> f64 {
        let (b, bd) = self.eval(t);
        let (h, hd) = other.eval(t);
        0.5 * (b.dot(&hd) - bd.dot(&h))
    }

    /// Max difference of initial data.
    pub fn distance(&self, other: &BetaSolution) -> f64 {
        (&self.beta0 - &other.beta0).amax().max((&self.beta1 - &other.beta1).amax())
    }
}

/// Coefficients of `y(t) = c0·y0 + c1·y1`, `ẏ(t) = d0·y0 + d1·y1` for
/// `ÿ = λ y`.
fn scalar_flow(lambda: f64, t: f64) -> (f64, f64, f64, f64) {
    if lambda > 0.0 {
        let r = lambda.sqrt();
        let (sh, ch) = ((r * t).sinh(), (r * t).cosh());
        (ch, sh / r, r * sh, ch)
    } else if lambda < 0.0 {
        let mu = (-lambda).sqrt();
        let (s, c) = (mu * t).sin_cos();
        (c, s / mu, -mu * s, c)
    } else {
        (1.0, t, 0.0, 1.0)
    }
}

pub fn beta_eval(beta: &BetaSolution, t: f64) -> (DVector<f64>, DVector<f64>) {
    beta.eval(t)
}

pub fn symplectic_form(beta: &BetaSolution, betahat: &BetaSolution) -> Result<f64> {
    beta.symplectic_form(betahat)
}

pub fn beta_reparam(beta: &BetaSolution, c: f64, eps: Sign, a: &DMatrix<f64>) -> Result<BetaSolution> {
    beta.reparam(c, eps, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn scalar(l: f64) -> Arc<SymmetricProfile> {
        Arc::new(SymmetricProfile::scalar(1, l).unwrap())
    }

    #[test]
    fn cosine_and_sinh() {
        let b = BetaSolution::from_slices(scalar(-1.0), &[1.0], &[0.0]).unwrap();
        let (v, d) = b.eval(PI);
        assert!((v[0] + 1.0).abs() < 1e-15 && d[0].abs() < 1e-15);

        let b = BetaSolution::from_slices(scalar(1.0), &[0.0], &[1.0]).unwrap();
        let (v, d) = b.eval(1.0);
        assert!((v[0] - 1.0_f64.sinh()).abs() < 1e-15);
        assert!((d[0] - 1.0_f64.cosh()).abs() < 1e-15);
    }

    #[test]
    fn affine_branch() {
        let b = BetaSolution::from_slices(scalar(0.0), &[1.0], &[2.0]).unwrap();
        let (v, d) = b.eval(3.0);
        assert_eq!((v[0], d[0]), (7.0, 2.0));
    }

    #[test]
    fn evaluate_at_zero_is_exact() {
        let p = Arc::new(SymmetricProfile::diagonal(&[0.3, -2.0]).unwrap());
        let b = BetaSolution::from_slices(p, &[0.1, 0.7], &[-0.2, 0.3]).unwrap();
        assert_eq!(b.evaluate(0.0).as_slice(), &[0.1, 0.7]);
        assert_eq!(b.derivative(0.0).as_slice(), &[-0.2, 0.3]);
    }

    #[test]
    fn symplectic_examples() {
        let p = scalar(-1.0);
        let cos = BetaSolution::from_slices(p.clone(), &[1.0], &[0.0]).unwrap();
        let sin = BetaSolution::from_slices(p, &[0.0], &[1.0]).unwrap();
        assert_eq!(cos.symplectic_form(&sin).unwrap(), 0.5);
        assert_eq!(cos.symplectic_form(&cos).unwrap(), 0.0);

        let p2 = Arc::new(SymmetricProfile::diagonal(&[-1.0, -4.0]).unwrap());
        let b = BetaSolution::from_slices(p2.clone(), &[1.0, 1.0], &[0.0, 0.0]).unwrap();
        let h = BetaSolution::from_slices(p2, &[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_eq!(b.symplectic_form(&h).unwrap(), 1.0);
        assert!((b.symplectic_form_at(&h, 0.7) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn mismatched_profiles() {
        let a = BetaSolution::zero(scalar(-1.0));
        let b = BetaSolution::zero(Arc::new(SymmetricProfile::scalar(2, -1.0).unwrap()));
        assert!(matches!(a.symplectic_form(&b), Err(CwError::IncompatibleProfile(_))));
    }

    #[test]
    fn reparam_examples() {
        let p = scalar(-1.0);
        let id = DMatrix::identity(1, 1);
        let cos = BetaSolution::from_slices(p, &[1.0], &[0.0]).unwrap();
        let same = cos.reparam(0.0, Sign::Plus, &id).unwrap();
        assert_eq!(same.beta0(), cos.beta0());
        let shifted = cos.reparam(PI / 2.0, Sign::Plus, &id).unwrap();
        assert!(shifted.beta0()[0].abs() < 1e-15);
        assert!((shifted.beta1()[0] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn reparam_rejects_non_centralising() {
        let p = Arc::new(SymmetricProfile::diagonal(&[1.0, 2.0]).unwrap());
        let b = BetaSolution::zero(p);
        let swap = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert!(matches!(b.reparam(0.0, Sign::Plus, &swap), Err(CwError::CentraliserViolation(_))));
    }
}
