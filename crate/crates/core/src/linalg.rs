//! Small dense helpers shared across modules.

use nalgebra::{DMatrix, DVector};

pub(crate) fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

pub(crate) fn max_abs_vec(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// `max |AᵀA − I|`.
pub fn orthogonality_defect(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    max_abs(&(a.transpose() * a - DMatrix::identity(n, n)))
}

/// `max |AS − SA|`.
pub fn commutator_defect(a: &DMatrix<f64>, s: &DMatrix<f64>) -> f64 {
    max_abs(&(a * s - s * a))
}

/// Nearest orthogonal matrix (polar factor `U Vᵀ` of the SVD).
pub fn polar_orthogonalize(a: &DMatrix<f64>) -> DMatrix<f64> {
    let svd = a.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested Vᵀ");
    u * v_t
}

/// Returns the signed permutation `(target index, sign)` for each column if
/// `a` is a signed permutation matrix within `tol`.
pub fn as_signed_permutation(a: &DMatrix<f64>, tol: f64) -> Option<Vec<(usize, f64)>> {
    let n = a.ncols();
    if a.nrows() != n {
        return None;
    }
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut hit = None;
        for i in 0..n {
            let v = a[(i, j)];
            if (v.abs() - 1.0).abs() <= tol {
                if hit.is_some() {
                    return None;
                }
                hit = Some((i, v.signum()));
            } else if v.abs() > tol {
                return None;
            }
        }
        let (i, sign) = hit?;
        if seen[i] {
            return None;
        }
        seen[i] = true;
        out.push((i, sign));
    }
    Some(out)
}

/// Least-squares solve of `m y = rhs` through the SVD, with singular values
/// below `tol · σ_max` treated as zero. Also returns an orthonormal basis of
/// the numerical kernel and the residual `|m y − rhs|∞`.
pub(crate) struct LstsqSolution {
    pub solution: DVector<f64>,
    pub kernel: Vec<DVector<f64>>,
    pub residual: f64,
}

pub(crate) fn lstsq(m: &DMatrix<f64>, rhs: &DVector<f64>, tol: f64) -> LstsqSolution {
    let n = m.ncols();
    let svd = m.clone().svd(true, true);
    let u = svd.u.as_ref().expect("requested U");
    let v_t = svd.v_t.as_ref().expect("requested Vᵀ");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = tol * sigma_max.max(1.0);
    let mut y = DVector::zeros(n);
    let mut kernel = Vec::new();
    for k in 0..n {
        let sigma = if k < svd.singular_values.len() { svd.singular_values[k] } else { 0.0 };
        let v_k = v_t.row(k).transpose();
        if sigma > cutoff {
            let coeff = u.column(k).dot(rhs) / sigma;
            y += v_k * coeff;
        } else {
            kernel.push(v_k);
        }
    }
    let residual = max_abs_vec(&(m * &y - rhs));
    LstsqSolution { solution: y, kernel, residual }
}

pub(crate) fn matrix_to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().cloned().collect()).collect()
}

pub(crate) fn rows_to_matrix(rows: &[Vec<f64>]) -> Option<DMatrix<f64>> {
    let n = rows.len();
    let cols = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != cols) {
        return None;
    }
    Some(DMatrix::from_fn(n, cols, |i, j| rows[i][j]))
}
