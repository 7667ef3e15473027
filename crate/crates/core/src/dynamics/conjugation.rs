use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::beta::BetaSolution;
use crate::error::{CwError, Result};
use crate::group::Homothety;
use crate::profile::{EigenBlock, SymmetricProfile};
use crate::sign::Sign;

/// Relative width of the resonance band `|(s/c)² − λ| ≤ tol·max(1, λ)`.
pub const RESONANCE_TOLERANCE: f64 = 1e-7;

/// Per-eigenspace determinant of the linear system solved by
/// [`solve_conjugation_beta`].
#[derive(Debug, Clone, Serialize)]
pub struct BlockDeterminant {
    pub eigenvalue: f64,
    pub det: f64,
    /// `|det M| / ∏ ‖column‖`, which lies in `[0, 1]`.
    pub relative_det: f64,
}

/// The matrix acting on the block initial data `(a₀, a₁)`. Rows of the
/// first half are scaled by `μ` on oscillating blocks.
fn block_matrix(block: &EigenBlock, a: &DMatrix<f64>, s: f64, c: f64) -> (DMatrix<f64>, f64) {
    let k = block.multiplicity;
    let q = &block.vectors;
    let a_blk = q.transpose() * a * q;
    let lambda = block.eigenvalue;
    let es = s.exp();
    let id = DMatrix::<f64>::identity(k, k);
    // y(t + c) = c00·y(t) + c01·ẏ(t), ẏ(t + c) = c10·y(t) + c11·ẏ(t).
    let (c00, c01, c10, c11, row_scale) = if lambda > 0.0 {
        let r = lambda.sqrt();
        let (sh, ch) = ((r * c).sinh(), (r * c).cosh());
        (ch, sh / r, r * sh, ch, 1.0)
    } else if lambda < 0.0 {
        let mu = (-lambda).sqrt();
        let (sn, cs) = (mu * c).sin_cos();
        (cs, sn / mu, -mu * sn, cs, mu)
    } else {
        (1.0, c, 0.0, 1.0, 1.0)
    };
    let mut m = DMatrix::zeros(2 * k, 2 * k);
    m.view_mut((0, 0), (k, k)).copy_from(&((&a_blk * (es * c00) - &id) * row_scale));
    m.view_mut((0, k), (k, k)).copy_from(&(&a_blk * (es * c01 * row_scale)));
    m.view_mut((k, 0), (k, k)).copy_from(&(&a_blk * (es * c10)));
    m.view_mut((k, k), (k, k)).copy_from(&(&a_blk * (es * c11) - &id));
    (m, row_scale)
}

fn check_resonance(profile: &SymmetricProfile, s: f64, c: f64) -> Result<()> {
    if c == 0.0 {
        return Ok(());
    }
    let ratio = (s / c).powi(2);
    for lambda in profile.positive_eigenvalues() {
        if (ratio - lambda).abs() <= RESONANCE_TOLERANCE * lambda.max(1.0) {
            return Err(CwError::Resonance(format!("(s/c)² = {ratio} is the eigenvalue {lambda} of S")));
        }
    }
    Ok(())
}

pub fn conjugation_block_determinants(
    profile: &SymmetricProfile,
    a: &DMatrix<f64>,
    s: f64,
    c: f64,
) -> Result<Vec<BlockDeterminant>> {
    profile.check_centraliser(a)?;
    Ok(profile
        .spectrum()
        .iter()
        .map(|block| {
            let (m, _) = block_matrix(block, a, s, c);
            let det = m.determinant();
            let norms: f64 = m.column_iter().map(|col| col.norm()).product();
            let relative_det = if norms > 0.0 { det.abs() / norms } else { 0.0 };
            BlockDeterminant { eigenvalue: block.eigenvalue, det, relative_det }
        })
        .collect())
}

/// Solves `e^s A β(t + c) − β(t) = β̂(t)` for `β ∈ V_S`, one eigenspace of
/// `S` at a time.
pub fn solve_conjugation_beta(
    profile: &Arc<SymmetricProfile>,
    a: &DMatrix<f64>,
    s: f64,
    c: f64,
    betahat: &BetaSolution,
) -> Result<BetaSolution> {
    profile.ensure_compatible(betahat.profile())?;
    profile.check_centraliser(a)?;
    if s == 0.0 {
        return Err(CwError::NotStrict(s));
    }
    check_resonance(profile, s, c)?;
    let n = profile.n();
    let mut beta0 = DVector::zeros(n);
    let mut beta1 = DVector::zeros(n);
    for block in profile.spectrum() {
        let k = block.multiplicity;
        let q = &block.vectors;
        let (m, row_scale) = block_matrix(block, a, s, c);
        let mut rhs = DVector::zeros(2 * k);
        rhs.rows_mut(0, k).copy_from(&(q.transpose() * betahat.beta0() * row_scale));
        rhs.rows_mut(k, k).copy_from(&(q.transpose() * betahat.beta1()));
        let sol = m.lu().solve(&rhs).ok_or_else(|| {
            CwError::Singular(format!("block for eigenvalue {} is singular", block.eigenvalue))
        })?;
        beta0 += q * sol.rows(0, k);
        beta1 += q * sol.rows(k, k);
    }
    BetaSolution::new(profile.clone(), beta0, beta1)
}

#[derive(Debug, Clone)]
pub struct NormalFormResult {
    /// Element of `Hei_n ⋊ ℤ₂` conjugating the input to `normal`.
    pub conjugator: Homothety,
    pub normal: Homothety,
    /// Size of the Heisenberg part of `conjugator ∘ φ ∘ conjugator⁻¹` before
    /// it was rounded to zero.
    pub residual: f64,
}

/// Conjugates a strict `φ` with `ε = +1` into `E(1) × C_{O(n)}(S) × ℝ` with
/// `c ≥ 0`.
pub fn normal_form(phi: &Homothety) -> Result<NormalFormResult> {
    if !phi.is_strict() {
        return Err(CwError::NotStrict(phi.s()));
    }
    if phi.eps() == Sign::Minus {
        return Err(CwError::Unsupported("normal form requires ε = +1".into()));
    }
    let profile = phi.profile().clone();
    let (s, c) = (phi.s(), phi.c());

    // ψ = (b', β') removes β when e^s A β'(t) − β'(t + c) = β(t); solve for
    // γ = β'(· + c) and shift back.
    let gamma = solve_conjugation_beta(&profile, phi.a(), s, -c, phi.beta())?;
    let beta_prime = gamma.shift(-c);
    let psi0 = Homothety::heisenberg(profile.clone(), 0.0, beta_prime.clone())?;
    let partial = phi.conjugate_by(&psi0)?;
    // A central element b' shifts b by b'(1 − e^{2s}).
    let b_prime = -partial.b() / (1.0 - (2.0 * s).exp());
    let mut conjugator = Homothety::heisenberg(profile.clone(), b_prime, beta_prime)?;
    let mut conjugated = phi.conjugate_by(&conjugator)?;

    if conjugated.c() < 0.0 {
        let n = profile.n();
        let rho = Homothety::euclidean(profile.clone(), 0.0, Sign::Minus, DMatrix::identity(n, n), 0.0)?;
        conjugator = rho.compose(&conjugator)?;
        conjugated = phi.conjugate_by(&conjugator)?;
    }

    let residual = conjugated.b().abs().max(conjugated.beta().beta0().amax()).max(conjugated.beta().beta1().amax());
    let normal = if residual <= RESONANCE_TOLERANCE {
        Homothety::euclidean(profile, conjugated.c(), conjugated.eps(), conjugated.a().clone(), conjugated.s())?
    } else {
        conjugated
    };
    Ok(NormalFormResult { conjugator, normal, residual })
}
