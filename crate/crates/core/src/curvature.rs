//! Metric, Levi-Civita connection and curvature of `g_S`, plus the
//! transformation rules for a conformal change `ĝ = e^{2f} g`.
//!
//! All tensors are dense arrays in the coordinate frame ordered
//! `(t, x¹, …, xⁿ, v)`; index `0` is `t` and index `n + 1` is `v`.
//!
//! Conventions: `R(X,Y) = [∇_X, ∇_Y] − ∇_{[X,Y]}`,
//! `R(X,Y,Z,V) = g(R(X,Y)V, Z)`, `Ric(Y,V) = tr(X ↦ R(X,Y)V)` and
//! `Δf = −tr_g ∇df`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{CwError, Result};
use crate::linalg::max_abs;
use crate::point::Point;
use crate::profile::SymmetricProfile;

/// Symmetric `(0,2)`-tensor with constant or pointwise components.
#[derive(Debug, Clone, PartialEq)]
pub struct SymBilinear {
    n: usize,
    components: DMatrix<f64>,
}

impl SymBilinear {
    pub fn new(components: DMatrix<f64>) -> Result<Self> {
        let m = components.nrows();
        if m < 3 || components.ncols() != m {
            return Err(CwError::InvalidInput(format!(
                "bilinear form must be square of size ≥ 3, got {}x{}",
                components.nrows(),
                components.ncols()
            )));
        }
        let defect = max_abs(&(&components - components.transpose()));
        if defect > 1e-12 * max_abs(&components).max(1.0) {
            return Err(CwError::InvalidInput(format!("bilinear form not symmetric ({defect:.3e})")));
        }
        Ok(Self { n: m - 2, components })
    }

    pub(crate) fn from_matrix_unchecked(components: DMatrix<f64>) -> Self {
        Self { n: components.nrows() - 2, components }
    }

    pub fn zero(n: usize) -> Self {
        Self { n, components: DMatrix::zeros(n + 2, n + 2) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.components
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.components[(a, b)]
    }

    pub fn eval(&self, u: &DVector<f64>, w: &DVector<f64>) -> f64 {
        u.dot(&(&self.components * w))
    }

    pub fn scale(&self, k: f64) -> Self {
        Self { n: self.n, components: &self.components * k }
    }

    pub fn add(&self, other: &SymBilinear) -> Result<Self> {
        check_dims(self.n, other.n)?;
        Ok(Self { n: self.n, components: &self.components + &other.components })
    }

    pub fn sub(&self, other: &SymBilinear) -> Result<Self> {
        check_dims(self.n, other.n)?;
        Ok(Self { n: self.n, components: &self.components - &other.components })
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.components)
    }

    pub fn max_diff(&self, other: &SymBilinear) -> f64 {
        max_abs(&(&self.components - &other.components))
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        crate::linalg::matrix_to_rows(&self.components)
    }

    /// `(dt)²`.
    pub fn dt_squared(n: usize) -> Self {
        let mut m = DMatrix::zeros(n + 2, n + 2);
        m[(0, 0)] = 1.0;
        Self { n, components: m }
    }

    /// `M_ij dxⁱ dxʲ` for an `n×n` symmetric `M`.
    pub fn transverse(m: &DMatrix<f64>) -> Self {
        let n = m.nrows();
        let mut out = DMatrix::zeros(n + 2, n + 2);
        out.view_mut((1, 1), (n, n)).copy_from(m);
        Self { n, components: out }
    }
}

impl Serialize for SymBilinear {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(CwError::DimensionMismatch { expected: a, got: b })
    }
}

/// Dense `(0,4)`-tensor on `ℝ^{n+2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTensor4 {
    n: usize,
    data: Vec<f64>,
}

/// Largest entrywise violation of each algebraic curvature identity.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SymmetryDefects {
    pub antisym_12: f64,
    pub antisym_34: f64,
    pub pair: f64,
    pub bianchi: f64,
}

impl SymmetryDefects {
    pub fn max(&self) -> f64 {
        self.antisym_12.max(self.antisym_34).max(self.pair).max(self.bianchi)
    }
}

impl CurvatureTensor4 {
    pub fn zero(n: usize) -> Self {
        let m = n + 2;
        Self { n, data: vec![0.0; m * m * m * m] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> Self {
        let m = n + 2;
        let mut out = Self::zero(n);
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        out.data[((a * m + b) * m + c) * m + d] = f(a, b, c, d);
                    }
                }
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 2
    }

    fn idx(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        let m = self.dim();
        ((a * m + b) * m + c) * m + d
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        self.data[self.idx(a, b, c, d)]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, d: usize, value: f64) {
        let i = self.idx(a, b, c, d);
        self.data[i] = value;
    }

    pub fn components(&self) -> &[f64] {
        &self.data
    }

    pub fn scale(&self, k: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn add(&self, other: &CurvatureTensor4) -> Result<Self> {
        check_dims(self.n, other.n)?;
        Ok(Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &CurvatureTensor4) -> Result<Self> {
        check_dims(self.n, other.n)?;
        Ok(Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() })
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn max_diff(&self, other: &CurvatureTensor4) -> f64 {
        self.data.iter().zip(&other.data).fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }

    pub fn symmetry_defects(&self) -> SymmetryDefects {
        let m = self.dim();
        let mut d = SymmetryDefects { antisym_12: 0.0, antisym_34: 0.0, pair: 0.0, bianchi: 0.0 };
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for e in 0..m {
                        let r = self.get(a, b, c, e);
                        d.antisym_12 = d.antisym_12.max((r + self.get(b, a, c, e)).abs());
                        d.antisym_34 = d.antisym_34.max((r + self.get(a, b, e, c)).abs());
                        d.pair = d.pair.max((r - self.get(c, e, a, b)).abs());
                        let cyc = r + self.get(b, c, a, e) + self.get(c, a, b, e);
                        d.bianchi = d.bianchi.max(cyc.abs());
                    }
                }
            }
        }
        d
    }

    /// `T_bd = Σ h^{ac} R_abcd` for a symmetric `(2,0)` tensor `h`.
    pub fn contract_13(&self, h: &DMatrix<f64>) -> DMatrix<f64> {
        let m = self.dim();
        DMatrix::from_fn(m, m, |b, d| {
            let mut acc = 0.0;
            for a in 0..m {
                for c in 0..m {
                    let hac = h[(a, c)];
                    if hac != 0.0 {
                        acc += hac * self.get(a, b, c, d);
                    }
                }
            }
            acc
        })
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<Vec<f64>>>> {
        let m = self.dim();
        (0..m)
            .map(|a| (0..m).map(|b| (0..m).map(|c| (0..m).map(|d| self.get(a, b, c, d)).collect()).collect()).collect())
            .collect()
    }
}

impl Serialize for CurvatureTensor4 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_nested().serialize(serializer)
    }
}

/// Dense rank-3 array, used for Christoffel symbols `Γ^k_{ij}` (stored at
/// `[k][i][j]`) and for the Cotton tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    n: usize,
    data: Vec<f64>,
}

impl Tensor3 {
    pub fn zero(n: usize) -> Self {
        let m = n + 2;
        Self { n, data: vec![0.0; m * m * m] }
    }

    pub fn dim(&self) -> usize {
        self.n + 2
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        let m = self.dim();
        self.data[(a * m + b) * m + c]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, value: f64) {
        let m = self.dim();
        self.data[(a * m + b) * m + c] = value;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn max_diff(&self, other: &Tensor3) -> f64 {
        self.data.iter().zip(&other.data).fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<f64>>> {
        let m = self.dim();
        (0..m).map(|a| (0..m).map(|b| (0..m).map(|c| self.get(a, b, c)).collect()).collect()).collect()
    }
}

impl Serialize for Tensor3 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_nested().serialize(serializer)
    }
}

/// Value, coordinate gradient and coordinate Hessian of a function at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarJet2 {
    pub value: f64,
    pub gradient: DVector<f64>,
    pub hessian: DMatrix<f64>,
}

#[derive(Serialize, Deserialize)]
struct ScalarJet2Json {
    value: f64,
    gradient: Vec<f64>,
    hessian: Vec<Vec<f64>>,
}

impl ScalarJet2 {
    pub fn new(value: f64, gradient: DVector<f64>, hessian: DMatrix<f64>) -> Result<Self> {
        let m = gradient.len();
        if hessian.nrows() != m || hessian.ncols() != m {
            return Err(CwError::DimensionMismatch { expected: m, got: hessian.nrows() });
        }
        let defect = max_abs(&(&hessian - hessian.transpose()));
        if defect > 1e-12 * max_abs(&hessian).max(1.0) {
            return Err(CwError::InvalidInput(format!("hessian not symmetric ({defect:.3e})")));
        }
        Ok(Self { value, gradient, hessian })
    }

    pub fn zero(n: usize) -> Self {
        Self { value: 0.0, gradient: DVector::zeros(n + 2), hessian: DMatrix::zeros(n + 2, n + 2) }
    }

    /// The jet of `f = k·t` at a point with time coordinate `t`.
    pub fn linear_in_t(n: usize, k: f64, t: f64) -> Self {
        let mut gradient = DVector::zeros(n + 2);
        gradient[0] = k;
        Self { value: k * t, gradient, hessian: DMatrix::zeros(n + 2, n + 2) }
    }

    pub fn dim(&self) -> usize {
        self.gradient.len()
    }
}

impl Serialize for ScalarJet2 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarJet2Json {
            value: self.value,
            gradient: self.gradient.as_slice().to_vec(),
            hessian: crate::linalg::matrix_to_rows(&self.hessian),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ScalarJet2 {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ScalarJet2Json::deserialize(deserializer)?;
        let hessian = crate::linalg::rows_to_matrix(&raw.hessian)
            .ok_or_else(|| serde::de::Error::custom("hessian rows have unequal length"))?;
        ScalarJet2::new(raw.value, DVector::from_vec(raw.gradient), hessian).map_err(serde::de::Error::custom)
    }
}

fn check_point(profile: &SymmetricProfile, p: &Point) -> Result<()> {
    if p.n() != profile.n() {
        return Err(CwError::DimensionMismatch { expected: profile.n(), got: p.n() });
    }
    Ok(())
}

/// Gram matrix of `g_S` at `p`.
pub fn metric_at(profile: &SymmetricProfile, p: &Point) -> Result<SymBilinear> {
    check_point(profile, p)?;
    let n = profile.n();
    let m = n + 2;
    let mut g = DMatrix::zeros(m, m);
    g[(0, 0)] = p.x.dot(&(profile.matrix() * &p.x));
    g[(0, m - 1)] = 1.0;
    g[(m - 1, 0)] = 1.0;
    for i in 1..=n {
        g[(i, i)] = 1.0;
    }
    Ok(SymBilinear::from_matrix_unchecked(g))
}

/// Inverse Gram matrix: `g^{tv} = 1`, `g^{vv} = −xᵀSx`, `g^{ij} = δ^{ij}`.
pub fn inverse_metric_at(profile: &SymmetricProfile, p: &Point) -> Result<DMatrix<f64>> {
    check_point(profile, p)?;
    let n = profile.n();
    let m = n + 2;
    let mut h = DMatrix::zeros(m, m);
    h[(m - 1, m - 1)] = -p.x.dot(&(profile.matrix() * &p.x));
    h[(0, m - 1)] = 1.0;
    h[(m - 1, 0)] = 1.0;
    for i in 1..=n {
        h[(i, i)] = 1.0;
    }
    Ok(h)
}

/// `Γ^k_{ij}` at `p`. Nonzero entries: `Γ^v_{ti} = Γ^v_{it} = (Sx)_i` and
/// `Γ^i_{tt} = −(Sx)_i`; `Γ^v_{tt}` vanishes.
pub fn christoffel_at(profile: &SymmetricProfile, p: &Point) -> Result<Tensor3> {
    check_point(profile, p)?;
    let n = profile.n();
    let v = n + 1;
    let sx = profile.matrix() * &p.x;
    let mut gamma = Tensor3::zero(n);
    for i in 0..n {
        gamma.set(v, 0, i + 1, sx[i]);
        gamma.set(v, i + 1, 0, sx[i]);
        gamma.set(i + 1, 0, 0, -sx[i]);
    }
    Ok(gamma)
}

/// `(A⊼B)(X,Y,Z,V) = A(X,Z)B(Y,V) + B(X,Z)A(Y,V) − A(X,V)B(Y,Z) − B(X,V)A(Y,Z)`.
pub fn kulkarni_nomizu(a: &SymBilinear, b: &SymBilinear) -> Result<CurvatureTensor4> {
    check_dims(a.n, b.n)?;
    let (am, bm) = (&a.components, &b.components);
    Ok(CurvatureTensor4::from_fn(a.n, |x, y, z, v| {
        am[(x, z)] * bm[(y, v)] + bm[(x, z)] * am[(y, v)] - am[(x, v)] * bm[(y, z)] - bm[(x, v)] * am[(y, z)]
    }))
}

/// `R = −S ⊼ (dt)²`.
pub fn riemann(profile: &SymmetricProfile) -> CurvatureTensor4 {
    let n = profile.n();
    let s = SymBilinear::transverse(profile.matrix());
    kulkarni_nomizu(&s, &SymBilinear::dt_squared(n)).expect("same dimension").scale(-1.0)
}

/// `Ric = −tr(S) (dt)²`.
pub fn ricci(profile: &SymmetricProfile) -> SymBilinear {
    SymBilinear::dt_squared(profile.n()).scale(-profile.trace())
}

/// Trace of the Ricci tensor; it vanishes because `g^{tt} = 0`.
pub fn scalar(profile: &SymmetricProfile) -> f64 {
    let h = inverse_metric_at(profile, &Point::origin(profile.n())).expect("matching dimension");
    h.component_mul(ricci(profile).matrix()).sum()
}

/// `𝖯 = Ric/(m − 2)` (the scalar curvature term drops out).
pub fn schouten(profile: &SymmetricProfile) -> SymBilinear {
    ricci(profile).scale(1.0 / profile.n() as f64)
}

/// `W = (tr(S)/n · I − S) ⊼ (dt)²`.
pub fn weyl(profile: &SymmetricProfile) -> CurvatureTensor4 {
    let n = profile.n();
    let mean = profile.trace() / n as f64;
    let trace_free = DMatrix::identity(n, n) * mean - profile.matrix();
    kulkarni_nomizu(&SymBilinear::transverse(&trace_free), &SymBilinear::dt_squared(n)).expect("same dimension")
}

/// `C(X,Y,Z) = (∇_Y 𝖯)(Z,X) − (∇_Z 𝖯)(Y,X)` at `p`, stored at `[X][Y][Z]`.
pub fn cotton_at(profile: &SymmetricProfile, p: &Point) -> Result<Tensor3> {
    let gamma = christoffel_at(profile, p)?;
    let pm = schouten(profile);
    let m = profile.dim();
    // 𝖯 has constant coordinate components, so ∇_a 𝖯_bc = −Γ^e_ab 𝖯_ec − Γ^e_ac 𝖯_be.
    let nabla = |a: usize, b: usize, c: usize| -> f64 {
        (0..m).map(|e| -gamma.get(e, a, b) * pm.get(e, c) - gamma.get(e, a, c) * pm.get(b, e)).sum()
    };
    let mut out = Tensor3::zero(profile.n());
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                out.set(x, y, z, nabla(y, z, x) - nabla(z, y, x));
            }
        }
    }
    Ok(out)
}

/// Cotton tensor evaluated at the point `(0, (1, …, 1), 0)`. The components
/// are independent of the point.
pub fn cotton(profile: &SymmetricProfile) -> Tensor3 {
    let n = profile.n();
    let p = Point::new(0.0, DVector::from_element(n, 1.0), 0.0);
    cotton_at(profile, &p).expect("matching dimension")
}

/// Curvature of `ĝ = e^{2f} g_S` at a point, given the 2-jet of `f` there.
#[derive(Debug, Clone, Serialize)]
pub struct ConformalChange {
    pub riemann_hat: CurvatureTensor4,
    pub ricci_hat: SymBilinear,
    pub scal_hat: f64,
    /// `∇df` with respect to `g_S`.
    pub hessian: SymBilinear,
    /// `|∇f|²` with respect to `g_S`.
    pub grad_norm_sq: f64,
    /// `Δf = −tr_g ∇df`.
    pub laplacian: f64,
}

/// `∇df = ∂²f − Γ^c ∂_c f`.
pub fn covariant_hessian(profile: &SymmetricProfile, p: &Point, jet: &ScalarJet2) -> Result<SymBilinear> {
    let m = profile.dim();
    if jet.dim() != m {
        return Err(CwError::DimensionMismatch { expected: m, got: jet.dim() });
    }
    let gamma = christoffel_at(profile, p)?;
    let h = DMatrix::from_fn(m, m, |a, b| {
        jet.hessian[(a, b)] - (0..m).map(|c| gamma.get(c, a, b) * jet.gradient[c]).sum::<f64>()
    });
    Ok(SymBilinear::from_matrix_unchecked(h))
}

pub fn conformal_change_at(profile: &SymmetricProfile, p: &Point, jet: &ScalarJet2) -> Result<ConformalChange> {
    let g = metric_at(profile, p)?;
    let h = inverse_metric_at(profile, p)?;
    if !h.iter().all(|c| c.is_finite()) {
        return Err(CwError::Singular("metric is degenerate at the point".into()));
    }
    let m = profile.dim();
    let mf = m as f64;
    let ndf = covariant_hessian(profile, p, jet)?;
    let df = &jet.gradient;
    let df2 = SymBilinear::from_matrix_unchecked(df * df.transpose());
    let grad_norm_sq = df.dot(&(&h * df));
    let laplacian = -h.component_mul(ndf.matrix()).sum();

    let inner = ndf.sub(&df2)?.add(&g.scale(0.5 * grad_norm_sq))?;
    let e2f = (2.0 * jet.value).exp();
    let riemann_hat = riemann(profile).sub(&kulkarni_nomizu(&g, &inner)?)?.scale(e2f);

    let ricci_hat = ricci(profile)
        .sub(&ndf.sub(&df2)?.scale(mf - 2.0))?
        .add(&g.scale(laplacian - (mf - 2.0) * grad_norm_sq))?;
    let scal_hat =
        (-2.0 * jet.value).exp() * (scalar(profile) + (mf - 1.0) * (2.0 * laplacian - (mf - 2.0) * grad_norm_sq));

    Ok(ConformalChange { riemann_hat, ricci_hat, scal_hat, hessian: ndf, grad_norm_sq, laplacian })
}

/// `Γ̂^k_{ij} = Γ^k_{ij} + δ^k_i ∂_j f + δ^k_j ∂_i f − g_ij ∇^k f`.
pub fn conformal_christoffel_at(profile: &SymmetricProfile, p: &Point, jet: &ScalarJet2) -> Result<Tensor3> {
    let m = profile.dim();
    if jet.dim() != m {
        return Err(CwError::DimensionMismatch { expected: m, got: jet.dim() });
    }
    let mut gamma = christoffel_at(profile, p)?;
    let g = metric_at(profile, p)?;
    let h = inverse_metric_at(profile, p)?;
    let grad_up = &h * &jet.gradient;
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                let mut extra = -g.get(i, j) * grad_up[k];
                if k == i {
                    extra += jet.gradient[j];
                }
                if k == j {
                    extra += jet.gradient[i];
                }
                gamma.set(k, i, j, gamma.get(k, i, j) + extra);
            }
        }
    }
    Ok(gamma)
}
