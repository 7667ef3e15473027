//! Closed-form curvature next to a finite-difference evaluation of the
//! Christoffel symbols.

use cahen_wallach::curvature::{christoffel_at, ricci, riemann, scalar, weyl};
use cahen_wallach::{Point, SymmetricProfile};

fn main() -> cahen_wallach::Result<()> {
    let p = SymmetricProfile::diagonal(&[1.0, 2.0, -0.5])?;
    let q = Point::from_parts(0.3, &[0.5, -1.0, 0.25], 2.0);

    let gamma = christoffel_at(&p, &q)?;
    let h = 1e-5;
    // Γ^v_{t1} = (Sx)_1 is linear in x
    let mut plus = q.clone();
    plus.x[0] += h;
    let mut minus = q.clone();
    minus.x[0] -= h;
    let d = (christoffel_at(&p, &plus)?.get(4, 0, 1) - christoffel_at(&p, &minus)?.get(4, 0, 1)) / (2.0 * h);
    println!("Γ^v_(t,x1) = {:.6}, ∂/∂x1 = {:.6} (S11 = 1)", gamma.get(4, 0, 1), d);

    println!("R(t,x1,t,x1) = {}", riemann(&p).get(0, 1, 0, 1));
    println!("Ric(t,t)     = {}", ricci(&p).get(0, 0));
    println!("scalar       = {}", scalar(&p));
    println!("W(t,x1,t,x1) = {:.6}", weyl(&p).get(0, 1, 0, 1));
    Ok(())
}
