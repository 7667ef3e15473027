//! Explicit quotient constructions, checked numerically: each verifier
//! returns a [`Report`](crate::report::Report) of named residuals.

mod examples;
mod regions;

pub use examples::{
    removed_axis_factor, removed_axis_fundamental_region, removed_axis_neighbourhood, verify_failed_3d_example,
    verify_imaginary_torus_example, verify_inessential_rescale_u, verify_real_lattice_example,
    verify_removed_fixed_points_example,
};
pub use regions::{self_adjacency, BoxRegion, Interval};
