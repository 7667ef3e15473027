//! The defining matrix `S` of a Cahen–Wallach metric
//! `g_S = 2 dv dt + xᵀSx dt² + |dx|²` and its spectral data.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{CwError, Result};
use crate::linalg::{commutator_defect, max_abs, orthogonality_defect};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// One eigenspace of `S`: eigenvalue, multiplicity and an orthonormal basis
/// stored as the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct EigenBlock {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub vectors: DMatrix<f64>,
}

/// Sign pattern of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceType {
    Real,
    Imaginary,
    Mixed,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    #[serde(rename = "type")]
    pub space_type: SpaceType,
    pub invertible: bool,
    pub conformally_flat: bool,
    pub lambda_max_sq: Option<f64>,
}

/// JSON shape `{"n": int, "S": [[real]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileSpec {
    pub n: usize,
    #[serde(rename = "S")]
    pub s: Vec<Vec<f64>>,
}

/// The matrix `S` together with its eigendecomposition.
#[derive(Debug, Clone)]
pub struct SymmetricProfile {
    n: usize,
    s: DMatrix<f64>,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
    blocks: Vec<EigenBlock>,
    tolerance: f64,
}

impl SymmetricProfile {
    pub fn new(s: DMatrix<f64>) -> Result<Self> {
        Self::with_tolerance(s, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(s: DMatrix<f64>, tolerance: f64) -> Result<Self> {
        let n = s.nrows();
        if n == 0 || s.ncols() != n {
            return Err(CwError::MalformedProfile(format!(
                "S must be a non-empty square matrix, got {}x{}",
                s.nrows(),
                s.ncols()
            )));
        }
        if !(tolerance > 0.0) || !tolerance.is_finite() {
            return Err(CwError::MalformedProfile(format!("tolerance must be positive, got {tolerance}")));
        }
        if s.iter().any(|v| !v.is_finite()) {
            return Err(CwError::MalformedProfile("S has non-finite entries".into()));
        }
        let asym = max_abs(&(&s - s.transpose()));
        if asym > tolerance {
            return Err(CwError::MalformedProfile(format!("S is not symmetric (defect {asym:.3e})")));
        }
        let sym = (&s + s.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym.clone());

        // Sort ascending so that clusters of equal eigenvalues are contiguous.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let eigenvectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);

        let mut blocks = Vec::new();
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && Self::same_eigenvalue(eigenvalues[end - 1], eigenvalues[end], tolerance) {
                end += 1;
            }
            let mean = eigenvalues[start..end].iter().sum::<f64>() / (end - start) as f64;
            let eigenvalue = if mean.abs() <= tolerance { 0.0 } else { mean };
            blocks.push(EigenBlock {
                eigenvalue,
                multiplicity: end - start,
                vectors: eigenvectors.columns(start, end - start).into_owned(),
            });
            start = end;
        }

        Ok(Self { n, s: sym, eigenvalues, eigenvectors, blocks, tolerance })
    }

    fn same_eigenvalue(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= 1e2 * tol * a.abs().max(b.abs()).max(1.0)
    }

    pub fn from_spec(spec: &ProfileSpec) -> Result<Self> {
        if spec.s.len() != spec.n || spec.s.iter().any(|row| row.len() != spec.n) {
            return Err(CwError::MalformedProfile(format!("S must be {0}x{0}", spec.n)));
        }
        let s = DMatrix::from_fn(spec.n, spec.n, |i, j| spec.s[i][j]);
        Self::new(s)
    }

    pub fn to_spec(&self) -> ProfileSpec {
        ProfileSpec { n: self.n, s: crate::linalg::matrix_to_rows(&self.s) }
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(diag)))
    }

    /// `S = λ·I_n`.
    pub fn scalar(n: usize, lambda: f64) -> Result<Self> {
        Self::new(DMatrix::identity(n, n) * lambda)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension `n + 2` of the underlying space.
    pub fn dim(&self) -> usize {
        self.n + 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.s
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Eigenvalues in ascending order, one per eigenvector column.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Orthonormal eigenvectors as columns, matching [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    pub fn spectrum(&self) -> &[EigenBlock] {
        &self.blocks
    }

    pub fn trace(&self) -> f64 {
        self.s.trace()
    }

    /// Largest positive eigenvalue, if any.
    pub fn lambda_max_sq(&self) -> Option<f64> {
        self.eigenvalues.iter().cloned().filter(|&l| l > self.tolerance).reduce(f64::max)
    }

    pub fn positive_eigenvalues(&self) -> Vec<f64> {
        self.blocks.iter().map(|b| b.eigenvalue).filter(|&l| l > self.tolerance).collect()
    }

    pub fn is_scalar(&self) -> bool {
        let mean = self.trace() / self.n as f64;
        max_abs(&(&self.s - DMatrix::identity(self.n, self.n) * mean)) <= self.tolerance
    }

    pub fn classify(&self) -> Classification {
        let tol = self.tolerance;
        let degenerate = self.eigenvalues.iter().any(|l| l.abs() <= tol);
        let any_pos = self.eigenvalues.iter().any(|&l| l > tol);
        let any_neg = self.eigenvalues.iter().any(|&l| l < -tol);
        let space_type = if degenerate {
            SpaceType::Degenerate
        } else if any_pos && any_neg {
            SpaceType::Mixed
        } else if any_pos {
            SpaceType::Real
        } else {
            SpaceType::Imaginary
        };
        Classification {
            space_type,
            invertible: !degenerate,
            conformally_flat: self.is_scalar(),
            lambda_max_sq: self.lambda_max_sq(),
        }
    }

    /// `S` rebuilt from its eigenspaces.
    pub fn reassemble(&self) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.n, self.n);
        for b in &self.blocks {
            out += &b.vectors * b.vectors.transpose() * b.eigenvalue;
        }
        out
    }

    /// Membership test for `C_{O(n)}(S)`.
    pub fn check_centraliser(&self, a: &DMatrix<f64>) -> Result<()> {
        if a.nrows() != self.n || a.ncols() != self.n {
            return Err(CwError::DimensionMismatch { expected: self.n, got: a.nrows() });
        }
        let orth = orthogonality_defect(a);
        if orth > self.tolerance {
            return Err(CwError::CentraliserViolation(format!("AᵀA − I defect {orth:.3e}")));
        }
        let comm = commutator_defect(a, &self.s);
        if comm > self.tolerance {
            return Err(CwError::CentraliserViolation(format!("AS − SA defect {comm:.3e}")));
        }
        Ok(())
    }

    /// Same `n` and the same matrix within tolerance.
    pub fn compatible(&self, other: &SymmetricProfile) -> bool {
        std::ptr::eq(self, other)
            || (self.n == other.n && max_abs(&(&self.s - &other.s)) <= self.tolerance.max(other.tolerance))
    }

    pub fn ensure_compatible(&self, other: &SymmetricProfile) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(CwError::IncompatibleProfile(format!(
                "profiles differ (n = {} vs {})",
                self.n, other.n
            )))
        }
    }
}
