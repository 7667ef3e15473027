//! The conformal maps to Minkowski space and the finite-time blow-up.

use cahen_wallach::curvature::metric_at;
use cahen_wallach::flat::{
    flatness_blowup_demo, g_minus, g_plus, minkowski_metric, pullback_metric, ImaginaryLocalMap, MinkowskiMap,
};
use cahen_wallach::{Point, Sign};

fn main() -> cahen_wallach::Result<()> {
    let n = 2;
    let q = Point::from_parts(0.4, &[1.0, -0.5], 2.0);
    let v = q.to_vector();

    let pulled = pullback_metric(&MinkowskiMap { n }, &minkowski_metric, &v)?;
    let expected = metric_at(&g_plus(n), &q)?.scale((2.0 * q.t).exp());
    println!("real type:      |Φ*g₀ − e^(2t) g| = {:e}", pulled.max_diff(&expected));

    let pulled = pullback_metric(&ImaginaryLocalMap { n }, &minkowski_metric, &v)?;
    let expected = metric_at(&g_minus(n), &q)?.scale(1.0 / q.t.cos().powi(2));
    println!("imaginary type: |Ψ*g₀ − g/cos²t| = {:e}", pulled.max_diff(&expected));

    let b = flatness_blowup_demo(Sign::Minus, 0.0, 3.0)?;
    println!("ẏ = y² + 1 blows up at t = {:?} (π/2 = {:.6})", b.blowup_t, std::f64::consts::FRAC_PI_2);
    Ok(())
}
