//! Orbit sequences γ^{−k} φ γ^k (0) and the necessary-condition report.

use std::sync::Arc;

use cahen_wallach::dynamics::{orbit_obstruction_sequence, pd_necessary_report};
use cahen_wallach::{BetaSolution, Homothety, Sign, SymmetricProfile};
use nalgebra::DMatrix;

fn main() -> cahen_wallach::Result<()> {
    let p = Arc::new(SymmetricProfile::diagonal(&[-1.0, -1.0])?);
    let gamma = Homothety::euclidean(p.clone(), 1.0, Sign::Plus, DMatrix::identity(2, 2), 0.5)?;
    let beta = BetaSolution::from_slices(p.clone(), &[1.0, 0.0], &[0.0, 1.0])?;
    let phi = Homothety::new(p.clone(), 1.0, beta, 0.3, Sign::Plus, DMatrix::identity(2, 2), 0.0)?;

    let r = orbit_obstruction_sequence(&gamma, &phi, 60)?;
    for (k, y) in r.sequence.iter().enumerate().step_by(10) {
        println!("k={k:2} y_k={:?}", y.to_vector().as_slice());
    }
    println!("limit {:?}, rate {:?} (e^(-1/2) = {:.6})", r.limit.to_vector().as_slice(), r.rate, (-0.5f64).exp());

    let report = pd_necessary_report(&[gamma, phi], 3)?;
    println!("{} words checked, {} obstructions", report.words_checked, report.obstructions.len());
    for o in report.obstructions.iter().take(5) {
        println!("  {:?}: {:?}", o.word, o.reason);
    }
    Ok(())
}
