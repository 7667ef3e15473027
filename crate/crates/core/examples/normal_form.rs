//! Conjugating a strict homothety to its normal form, and a resonant case.

use std::sync::Arc;

use cahen_wallach::dynamics::{conjugation_block_determinants, normal_form};
use cahen_wallach::{BetaSolution, CwError, Homothety, Sign, SymmetricProfile};
use nalgebra::DMatrix;

fn main() -> cahen_wallach::Result<()> {
    let p = Arc::new(SymmetricProfile::diagonal(&[-1.0])?);
    let beta = BetaSolution::from_slices(p.clone(), &[1.0], &[0.3])?;
    let phi = Homothety::new(p, 0.8, beta, std::f64::consts::PI, Sign::Plus, DMatrix::identity(1, 1), 2f64.ln())?;
    let nf = normal_form(&phi)?;
    let check = phi.conjugate_by(&nf.conjugator)?;
    println!("normal form: c={} s={} residual={:e}", nf.normal.c(), nf.normal.s(), nf.residual);
    println!("conjugated: b={:e} β zero: {}", check.b(), check.beta().is_zero(1e-10));

    let q = Arc::new(SymmetricProfile::diagonal(&[4.0])?);
    for d in conjugation_block_determinants(&q, &DMatrix::identity(1, 1), 2.0, 1.0)? {
        println!("λ² = {}: relative det = {:e}", d.eigenvalue, d.relative_det);
    }
    let resonant = Homothety::euclidean(q, 1.0, Sign::Plus, DMatrix::identity(1, 1), 2.0)?;
    match normal_form(&resonant) {
        Err(CwError::Resonance(msg)) => println!("resonant: {msg}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
