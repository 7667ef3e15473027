//! Fixed points, essentiality and the rescaling of inessential homotheties.

use std::sync::Arc;

use cahen_wallach::dynamics::{fixed_point, inessential_rescaling, is_essential};
use cahen_wallach::{Homothety, Point, Sign, SymmetricProfile};
use nalgebra::DMatrix;

fn main() -> cahen_wallach::Result<()> {
    let p = Arc::new(SymmetricProfile::diagonal(&[1.0, -3.0])?);
    let id = DMatrix::identity(2, 2);
    let cases = [
        ("pure h_0.5", Homothety::pure(p.clone(), 0.5)),
        ("time flip", Homothety::euclidean(p.clone(), 1.0, Sign::Minus, id.clone(), 0.4)?),
        ("translating", Homothety::euclidean(p.clone(), 1.0, Sign::Plus, id.clone(), 0.4)?),
    ];
    for (label, phi) in cases {
        let fp = fixed_point(&phi);
        let point = fp.point.map(|q| q.to_vector().as_slice().to_vec());
        println!("{label:12} essential={} fixed point={point:?} ({:?})", is_essential(&phi)?, fp.reason);
        if let Ok(f) = inessential_rescaling(&phi) {
            let q = Point::from_parts(0.3, &[1.0, 2.0], -1.0);
            let residual = f.eval(&phi.apply(&q)?) - f.eval(&q) + phi.s();
            println!("{:12} f∘φ − f + s at a sample point = {residual:e}", "");
        }
    }
    Ok(())
}
