//! Runs the worked quotient examples and prints their checks.

use cahen_wallach::quotients::{
    verify_failed_3d_example, verify_imaginary_torus_example, verify_inessential_rescale_u,
    verify_real_lattice_example, verify_removed_fixed_points_example,
};
use cahen_wallach::report::Report;

fn show(r: &Report) {
    println!("{}: {}", r.example, if r.passed() { "all checks pass" } else { "some checks fail" });
    for c in &r.checks {
        println!("  {:32} {} residual {:.3e}", c.name, if c.pass { "ok  " } else { "FAIL" }, c.residual);
    }
}

fn main() -> cahen_wallach::Result<()> {
    show(&verify_imaginary_torus_example(50, 42)?);
    for r in 3..=5 {
        show(&verify_real_lattice_example(r, 50, 42)?);
    }
    show(&verify_failed_3d_example(50, 42)?);
    show(&verify_removed_fixed_points_example(50, 42)?);
    show(&verify_inessential_rescale_u(50, 42)?);
    Ok(())
}
