//! Seeded random profiles, centraliser elements, homotheties and points for
//! randomized checks.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::StandardNormal;

use crate::beta::BetaSolution;
use crate::group::Homothety;
use crate::point::Point;
use crate::profile::SymmetricProfile;
use crate::sign::Sign;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vector(rng: &mut impl Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.sample(StandardNormal))
}

pub fn uniform_vector(rng: &mut impl Rng, n: usize, half_width: f64) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.random_range(-half_width..=half_width))
}

/// Haar-distributed element of `O(k)` from the QR decomposition of a
/// Gaussian matrix.
pub fn random_orthogonal(rng: &mut impl Rng, k: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(k, k, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..k {
        if r[(j, j)] < 0.0 {
            let mut col = q.column_mut(j);
            col *= -1.0;
        }
    }
    q
}

/// Symmetric `S` with spectral norm at most `bound`.
pub fn random_symmetric(rng: &mut impl Rng, n: usize, bound: f64) -> DMatrix<f64> {
    let q = random_orthogonal(rng, n);
    let d = DMatrix::from_diagonal(&uniform_vector(rng, n, bound));
    let s = &q * d * q.transpose();
    (&s + s.transpose()) * 0.5
}

pub fn random_profile(rng: &mut impl Rng, n: usize, bound: f64) -> Arc<SymmetricProfile> {
    Arc::new(SymmetricProfile::new(random_symmetric(rng, n, bound)).expect("symmetric by construction"))
}

/// Negative definite `S` with eigenvalues in `[−bound, −floor]`.
pub fn random_imaginary_profile(rng: &mut impl Rng, n: usize, floor: f64, bound: f64) -> Arc<SymmetricProfile> {
    let q = random_orthogonal(rng, n);
    let d = DMatrix::from_diagonal(&DVector::from_fn(n, |_, _| -rng.random_range(floor..=bound)));
    let s = &q * d * q.transpose();
    Arc::new(SymmetricProfile::new((&s + s.transpose()) * 0.5).expect("symmetric by construction"))
}

/// Random element of `C_{O(n)}(S)`: an independent orthogonal matrix on each
/// eigenspace.
pub fn random_centraliser_element(rng: &mut impl Rng, profile: &SymmetricProfile) -> DMatrix<f64> {
    let n = profile.n();
    let mut a = DMatrix::zeros(n, n);
    for block in profile.spectrum() {
        let o = random_orthogonal(rng, block.multiplicity);
        a += &block.vectors * o * block.vectors.transpose();
    }
    crate::linalg::polar_orthogonalize(&a)
}

pub fn random_beta(rng: &mut impl Rng, profile: &Arc<SymmetricProfile>, scale: f64) -> BetaSolution {
    let n = profile.n();
    BetaSolution::new(profile.clone(), uniform_vector(rng, n, scale), uniform_vector(rng, n, scale))
        .expect("dimensions match")
}

/// Ranges for [`random_homothety`].
#[derive(Debug, Clone)]
pub struct HomothetyRanges {
    pub b: f64,
    pub beta: f64,
    pub c: f64,
    pub s: f64,
    pub eps: Option<Sign>,
}

impl Default for HomothetyRanges {
    fn default() -> Self {
        Self { b: 1.0, beta: 1.0, c: 1.0, s: 0.5, eps: None }
    }
}

pub fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.random_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn random_homothety(rng: &mut impl Rng, profile: &Arc<SymmetricProfile>, r: &HomothetyRanges) -> Homothety {
    let b = rng.random_range(-r.b..=r.b);
    let beta = random_beta(rng, profile, r.beta);
    let c = rng.random_range(-r.c..=r.c);
    let eps = r.eps.unwrap_or_else(|| random_sign(rng));
    let a = random_centraliser_element(rng, profile);
    let s = if r.s > 0.0 { rng.random_range(-r.s..=r.s) } else { 0.0 };
    Homothety::new(profile.clone(), b, beta, c, eps, a, s).expect("valid by construction")
}

pub fn random_point(rng: &mut impl Rng, n: usize, half_width: f64) -> Point {
    Point::new(
        rng.random_range(-half_width..=half_width),
        uniform_vector(rng, n, half_width),
        rng.random_range(-half_width..=half_width),
    )
}
