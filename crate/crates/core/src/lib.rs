pub mod beta;
pub mod cli;
pub mod curvature;
pub mod dynamics;
pub mod error;
pub mod flat;
pub mod group;
pub mod linalg;
pub mod ode;
pub mod point;
pub mod profile;
pub mod quotients;
pub mod report;
pub mod sampling;
pub mod sign;

pub use beta::{BetaSolution, BetaSpec};
pub use error::{CwError, Result};
pub use group::{GroupWord, Homothety, HomothetySpec};
pub use point::{Point, TangentVector};
pub use profile::{Classification, ProfileSpec, SpaceType, SymmetricProfile};
pub use sign::Sign;
