//! Composition, inversion and projection of homotheties.

use std::sync::Arc;

use cahen_wallach::group::homothety_factor_check;
use cahen_wallach::{BetaSolution, Homothety, Point, Sign, SymmetricProfile};
use nalgebra::DMatrix;

fn main() -> cahen_wallach::Result<()> {
    let p = Arc::new(SymmetricProfile::diagonal(&[-1.0, -2.0])?);
    let beta = BetaSolution::from_slices(p.clone(), &[0.5, -0.2], &[0.1, 0.4])?;
    let phi = Homothety::new(p.clone(), 0.3, beta, 0.7, Sign::Minus, DMatrix::identity(2, 2), 0.25)?;
    let psi = Homothety::euclidean(p.clone(), 0.2, Sign::Plus, DMatrix::identity(2, 2), -0.4)?;

    let q = Point::from_parts(0.1, &[0.2, 0.3], 0.4);
    let lhs = phi.compose(&psi)?.apply(&q)?;
    let rhs = phi.apply(&psi.apply(&q)?)?;
    println!("|(φ∘ψ)(q) − φ(ψ(q))| = {:e}", lhs.distance(&rhs));
    println!("|φ∘φ⁻¹ − id|        = {:e}", phi.compose(&phi.inverse())?.distance_to_identity());
    let pr = phi.compose(&psi)?.project();
    println!("projection of φ∘ψ:   c={:.3} eps={:?} s={:.3}", pr.c, pr.eps, pr.s);

    // Heisenberg commutator is central
    let a = Homothety::heisenberg(p.clone(), 0.0, BetaSolution::from_slices(p.clone(), &[1.0, 0.0], &[0.0, 0.0])?)?;
    let b = Homothety::heisenberg(p.clone(), 0.0, BetaSolution::from_slices(p.clone(), &[0.0, 0.0], &[1.0, 0.0])?)?;
    let comm = a.compose(&b)?.compose(&a.inverse())?.compose(&b.inverse())?;
    println!("[a, b]: b = {}, β = 0: {}", comm.b(), comm.beta().is_zero(1e-12));

    let pts: Vec<Point> = (0..5).map(|k| Point::from_parts(0.1 * k as f64, &[1.0, -0.5], 0.0)).collect();
    println!("factor check e^(2s): {:e}", homothety_factor_check(&phi, &pts, &[])?);
    Ok(())
}
