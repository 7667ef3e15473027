//! The homothety group `H_S = Hei_n ⋊ (E(1) × C_{O(n)}(S) × ℝ)`.
//!
//! An element `(b, β, c, ε, A, s)` acts by
//!
//! ```text
//! (t, x, v) ↦ (εt + c,  e^s A x + β(t),  ε(e^{2s} v + b − ⟨β̇(t), e^s A x + ½β(t)⟩))
//! ```
//!
//! which is the isometry `(b, β, c, ε, A)` composed with the pure homothety
//! `h_s : (t, x, v) ↦ (t, e^s x, e^{2s} v)`. It pulls `g_S` back to `e^{2s} g_S`.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::beta::BetaSolution;
use crate::curvature::metric_at;
use crate::error::{CwError, Result};
use crate::linalg::{matrix_to_rows, max_abs, orthogonality_defect, polar_orthogonalize, rows_to_matrix};
use crate::point::Point;
use crate::profile::SymmetricProfile;
use crate::sign::Sign;

/// Tolerance used for parameter-level equality of group elements.
pub const GROUP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Homothety {
    profile: Arc<SymmetricProfile>,
    b: f64,
    beta: BetaSolution,
    c: f64,
    eps: Sign,
    a: DMatrix<f64>,
    s: f64,
}

/// JSON shape of a homothety.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomothetySpec {
    pub b: f64,
    pub beta0: Vec<f64>,
    pub beta1: Vec<f64>,
    pub c: f64,
    pub eps: Sign,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub s: f64,
}

/// Image of an element in `E(1) × C_{O(n)}(S) × ℝ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Projection {
    pub c: f64,
    pub eps: Sign,
    #[serde(serialize_with = "ser_matrix")]
    #[serde(rename = "A")]
    pub a: DMatrix<f64>,
    pub s: f64,
}

fn ser_matrix<S: serde::Serializer>(m: &DMatrix<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    matrix_to_rows(m).serialize(s)
}

impl Projection {
    pub fn compose(&self, other: &Projection) -> Projection {
        Projection {
            c: self.c + self.eps.value() * other.c,
            eps: self.eps * other.eps,
            a: &self.a * &other.a,
            s: self.s + other.s,
        }
    }

    pub fn distance(&self, other: &Projection) -> f64 {
        if self.eps != other.eps {
            return f64::INFINITY;
        }
        (self.c - other.c).abs().max((self.s - other.s).abs()).max(max_abs(&(&self.a - &other.a)))
    }
}

impl Homothety {
    pub fn new(
        profile: Arc<SymmetricProfile>,
        b: f64,
        beta: BetaSolution,
        c: f64,
        eps: Sign,
        a: DMatrix<f64>,
        s: f64,
    ) -> Result<Self> {
        profile.ensure_compatible(beta.profile())?;
        profile.check_centraliser(&a)?;
        if ![b, c, s].iter().all(|x| x.is_finite()) {
            return Err(CwError::InvalidInput("homothety parameters must be finite".into()));
        }
        Ok(Self { profile, b, beta, c, eps, a, s })
    }

    pub fn identity(profile: Arc<SymmetricProfile>) -> Self {
        let n = profile.n();
        Self {
            beta: BetaSolution::zero(profile.clone()),
            profile,
            b: 0.0,
            c: 0.0,
            eps: Sign::Plus,
            a: DMatrix::identity(n, n),
            s: 0.0,
        }
    }

    /// `h_s : (t, x, v) ↦ (t, e^s x, e^{2s} v)`.
    pub fn pure(profile: Arc<SymmetricProfile>, s: f64) -> Self {
        Self { s, ..Self::identity(profile) }
    }

    /// Element of the Heisenberg factor.
    pub fn heisenberg(profile: Arc<SymmetricProfile>, b: f64, beta: BetaSolution) -> Result<Self> {
        profile.ensure_compatible(beta.profile())?;
        Ok(Self { b, beta, ..Self::identity(profile) })
    }

    /// Element of `E(1) × C_{O(n)}(S) × ℝ`.
    pub fn euclidean(profile: Arc<SymmetricProfile>, c: f64, eps: Sign, a: DMatrix<f64>, s: f64) -> Result<Self> {
        let beta = BetaSolution::zero(profile.clone());
        Self::new(profile, 0.0, beta, c, eps, a, s)
    }

    /// Time translation `(t, x, v) ↦ (t + c, x, v)`.
    pub fn translation(profile: Arc<SymmetricProfile>, c: f64) -> Self {
        Self { c, ..Self::identity(profile) }
    }

    pub fn from_spec(profile: Arc<SymmetricProfile>, spec: &HomothetySpec) -> Result<Self> {
        let n = profile.n();
        let a = rows_to_matrix(&spec.a).ok_or_else(|| CwError::InvalidInput("A rows have unequal length".into()))?;
        if a.nrows() != n || a.ncols() != n {
            return Err(CwError::DimensionMismatch { expected: n, got: a.nrows() });
        }
        let beta = BetaSolution::from_slices(profile.clone(), &spec.beta0, &spec.beta1)?;
        Self::new(profile, spec.b, beta, spec.c, spec.eps, a, spec.s)
    }

    pub fn to_spec(&self) -> HomothetySpec {
        HomothetySpec {
            b: self.b,
            beta0: self.beta.beta0().as_slice().to_vec(),
            beta1: self.beta.beta1().as_slice().to_vec(),
            c: self.c,
            eps: self.eps,
            a: matrix_to_rows(&self.a),
            s: self.s,
        }
    }

    pub fn profile(&self) -> &Arc<SymmetricProfile> {
        &self.profile
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn beta(&self) -> &BetaSolution {
        &self.beta
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn eps(&self) -> Sign {
        self.eps
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn n(&self) -> usize {
        self.profile.n()
    }

    pub fn is_strict(&self) -> bool {
        self.s != 0.0
    }

    pub fn is_isometry(&self) -> bool {
        self.s == 0.0
    }

    /// True when `b` and `β` vanish within `tol`.
    pub fn heisenberg_part_vanishes(&self, tol: f64) -> bool {
        self.b.abs() <= tol && self.beta.is_zero(tol)
    }

    pub fn with_b(&self, b: f64) -> Self {
        Self { b, ..self.clone() }
    }

    pub fn with_beta(&self, beta: BetaSolution) -> Result<Self> {
        self.profile.ensure_compatible(beta.profile())?;
        Ok(Self { beta, ..self.clone() })
    }

    fn check_point(&self, p: &Point) -> Result<()> {
        if p.n() != self.n() {
            return Err(CwError::DimensionMismatch { expected: self.n(), got: p.n() });
        }
        Ok(())
    }

    pub fn apply(&self, p: &Point) -> Result<Point> {
        self.check_point(p)?;
        Ok(self.apply_unchecked(p))
    }

    pub(crate) fn apply_unchecked(&self, p: &Point) -> Point {
        let e = self.eps.value();
        let (bt, bdot) = self.beta.eval(p.t);
        let ax = &self.a * &p.x * self.s.exp();
        let v = e * ((2.0 * self.s).exp() * p.v + self.b - bdot.dot(&(&ax + &bt * 0.5)));
        Point::new(e * p.t + self.c, ax + bt, v)
    }

    /// Analytic Jacobian of [`Self::apply`] at `p` in the frame `(t, x, v)`.
    pub fn jacobian(&self, p: &Point) -> Result<DMatrix<f64>> {
        self.check_point(p)?;
        let n = self.n();
        let m = n + 2;
        let e = self.eps.value();
        let es = self.s.exp();
        let (bt, bdot) = self.beta.eval(p.t);
        let bddot = self.profile.matrix() * &bt;
        let ax = &self.a * &p.x * es;
        let mut j = DMatrix::zeros(m, m);
        j[(0, 0)] = e;
        j.view_mut((1, 0), (n, 1)).copy_from(&bdot);
        j.view_mut((1, 1), (n, n)).copy_from(&(&self.a * es));
        j[(m - 1, 0)] = -e * (bddot.dot(&ax) + 0.5 * (bddot.dot(&bt) + bdot.dot(&bdot)));
        let row = self.a.transpose() * &bdot * (-e * es);
        for i in 0..n {
            j[(m - 1, 1 + i)] = row[i];
        }
        j[(m - 1, m - 1)] = e * (2.0 * self.s).exp();
        Ok(j)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Homothety) -> Result<Homothety> {
        self.profile.ensure_compatible(&other.profile)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Homothety) -> Homothety {
        let e1 = self.eps;
        let es1 = self.s.exp();
        let beta1_moved = self.beta.reparam_unchecked(other.c, other.eps, &DMatrix::identity(self.n(), self.n()));
        let beta2_moved = other.beta.map_linear(&(&self.a * es1));
        let b = other.eps.value() * self.b
            + (2.0 * self.s).exp() * other.b
            + beta1_moved.omega_unchecked(&beta2_moved);
        let mut a = &self.a * &other.a;
        if orthogonality_defect(&a) > GROUP_TOLERANCE {
            a = polar_orthogonalize(&a);
        }
        Homothety {
            profile: self.profile.clone(),
            b,
            beta: beta1_moved.add_unchecked(&beta2_moved),
            c: self.c + e1.value() * other.c,
            eps: e1 * other.eps,
            a,
            s: self.s + other.s,
        }
    }

    pub fn inverse(&self) -> Homothety {
        let e = self.eps;
        let at = self.a.transpose();
        let ems = (-self.s).exp();
        let beta = self.beta.reparam_unchecked(-e.value() * self.c, e, &(&at * (-ems)));
        Homothety {
            profile: self.profile.clone(),
            b: -e.value() * (-2.0 * self.s).exp() * self.b,
            beta,
            c: -e.value() * self.c,
            eps: e,
            a: at,
            s: -self.s,
        }
    }

    pub fn pow(&self, k: i64) -> Homothety {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Homothety::identity(self.profile.clone());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose_unchecked(&sq);
            }
        }
        acc
    }

    /// `by ∘ self ∘ by⁻¹`.
    pub fn conjugate_by(&self, by: &Homothety) -> Result<Homothety> {
        Ok(by.compose(self)?.compose_unchecked(&by.inverse()))
    }

    pub fn project(&self) -> Projection {
        Projection { c: self.c, eps: self.eps, a: self.a.clone(), s: self.s }
    }

    /// Max parameter difference; infinite when the signs differ.
    pub fn distance(&self, other: &Homothety) -> f64 {
        if self.eps != other.eps || self.n() != other.n() {
            return f64::INFINITY;
        }
        (self.b - other.b)
            .abs()
            .max(self.beta.distance(&other.beta))
            .max(self.project().distance(&other.project()))
    }

    /// Distance to the identity element.
    pub fn distance_to_identity(&self) -> f64 {
        self.distance(&Homothety::identity(self.profile.clone()))
    }

    pub fn approx_eq(&self, other: &Homothety, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    /// Whether `self` and `eta` commute within [`GROUP_TOLERANCE`].
    pub fn centralises(&self, eta: &Homothety) -> Result<bool> {
        Ok(self.compose(eta)?.approx_eq(&eta.compose_unchecked(self), GROUP_TOLERANCE))
    }
}

pub fn apply(phi: &Homothety, p: &Point) -> Result<Point> {
    phi.apply(p)
}

pub fn compose(phi: &Homothety, psi: &Homothety) -> Result<Homothety> {
    phi.compose(psi)
}

pub fn inverse(phi: &Homothety) -> Homothety {
    phi.inverse()
}

pub fn project(phi: &Homothety) -> Projection {
    phi.project()
}

pub fn centralises(phi: &Homothety, eta: &Homothety) -> Result<bool> {
    phi.centralises(eta)
}

/// Max over points `p` and vector pairs `(u, w)` of
/// `|(φ*g)(u, w) − e^{2s} g(u, w)|`. An empty `vectors` slice means the full
/// coordinate frame.
pub fn homothety_factor_check(phi: &Homothety, points: &[Point], vectors: &[DVector<f64>]) -> Result<f64> {
    let profile = phi.profile();
    let factor = (2.0 * phi.s()).exp();
    let mut worst = 0.0_f64;
    for p in points {
        let j = phi.jacobian(p)?;
        let g_img = metric_at(profile, &phi.apply_unchecked(p))?;
        let pulled = j.transpose() * g_img.matrix() * &j;
        let diff = pulled - metric_at(profile, p)?.matrix() * factor;
        if vectors.is_empty() {
            worst = worst.max(max_abs(&diff));
        } else {
            for u in vectors {
                for w in vectors {
                    worst = worst.max(u.dot(&(&diff * w)).abs());
                }
            }
        }
    }
    Ok(worst)
}

/// Membership predicate for the centraliser of a pure homothety `h_s`,
/// `s ≠ 0`: exactly the elements with `b = 0` and `β = 0`.
#[derive(Debug, Clone, Copy)]
pub struct PureCentraliser {
    pub s: f64,
    pub tolerance: f64,
}

impl PureCentraliser {
    pub fn contains(&self, phi: &Homothety) -> bool {
        phi.heisenberg_part_vanishes(self.tolerance)
    }
}

pub fn centraliser_of_pure(s: f64) -> Result<PureCentraliser> {
    if s == 0.0 {
        return Err(CwError::NotStrict(s));
    }
    Ok(PureCentraliser { s, tolerance: GROUP_TOLERANCE })
}

/// A word `g_{i₁}^{k₁} g_{i₂}^{k₂} ⋯` in a list of generators.
#[derive(Debug, Clone)]
pub struct GroupWord {
    pub generators: Vec<Homothety>,
    pub letters: Vec<(usize, i64)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupWordSpec {
    pub generators: Vec<HomothetySpec>,
    pub letters: Vec<(usize, i64)>,
}

impl GroupWord {
    pub fn new(generators: Vec<Homothety>, letters: Vec<(usize, i64)>) -> Result<Self> {
        if let Some(&(i, _)) = letters.iter().find(|(i, _)| *i >= generators.len()) {
            return Err(CwError::InvalidInput(format!(
                "letter index {i} out of range for {} generators",
                generators.len()
            )));
        }
        if let Some(first) = generators.first() {
            for g in &generators[1..] {
                first.profile().ensure_compatible(g.profile())?;
            }
        }
        Ok(Self { generators, letters })
    }

    pub fn from_spec(profile: Arc<SymmetricProfile>, spec: &GroupWordSpec) -> Result<Self> {
        let generators =
            spec.generators.iter().map(|g| Homothety::from_spec(profile.clone(), g)).collect::<Result<Vec<_>>>()?;
        Self::new(generators, spec.letters.clone())
    }

    /// The product, with the leftmost letter applied last.
    pub fn evaluate(&self, profile: Arc<SymmetricProfile>) -> Homothety {
        self.letters
            .iter()
            .fold(Homothety::identity(profile), |acc, &(i, k)| acc.compose_unchecked(&self.generators[i].pow(k)))
    }
}
