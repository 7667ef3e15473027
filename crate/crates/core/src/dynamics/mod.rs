//! Fixed points, essentiality, conjugation normal forms and the orbit
//! obstructions to properly discontinuous cocompact actions.

mod conjugation;
mod fixed_point;
mod obstruction;
mod rescaling;

pub use conjugation::{
    conjugation_block_determinants, normal_form, solve_conjugation_beta, BlockDeterminant, NormalFormResult,
    RESONANCE_TOLERANCE,
};
pub use fixed_point::{fixed_point, is_essential, torsion_fixed_point, FixedPointReason, FixedPointReport};
pub use obstruction::{
    centraliser_projection_demo, orbit_obstruction_sequence, pd_necessary_report, CentraliserDemoEntry,
    CentraliserDemoReport, Obstruction, ObstructionReason, OrbitReport, PdReport,
};
pub use rescaling::{inessential_rescaling, smooth_bump, InessentialRescaling};
