//! JSON input schemas of the subcommands.

use serde::Deserialize;

use crate::beta::BetaSpec;
use crate::curvature::ScalarJet2;
use crate::group::HomothetySpec;
use crate::point::Point;
use crate::profile::ProfileSpec;
use crate::quotients::Interval;
use crate::sign::Sign;

#[derive(Deserialize)]
pub struct PhiInput {
    pub profile: ProfileSpec,
    pub phi: HomothetySpec,
}

#[derive(Deserialize)]
pub struct PairInput {
    pub profile: ProfileSpec,
    pub phi: HomothetySpec,
    pub psi: HomothetySpec,
}

#[derive(Deserialize)]
pub struct ApplyInput {
    pub profile: ProfileSpec,
    pub phi: HomothetySpec,
    pub point: Point,
}

#[derive(Deserialize)]
pub struct ReparamSpec {
    pub c: f64,
    pub eps: Sign,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
}

fn zero_time() -> Vec<f64> {
    vec![0.0]
}

#[derive(Deserialize)]
pub struct BetaInput {
    pub profile: ProfileSpec,
    pub beta: BetaSpec,
    #[serde(default = "zero_time")]
    pub t: Vec<f64>,
    #[serde(default)]
    pub other: Option<BetaSpec>,
    #[serde(default)]
    pub reparam: Option<ReparamSpec>,
}

#[derive(Deserialize)]
pub struct CurvatureInput {
    #[serde(default)]
    pub profile: Option<ProfileSpec>,
    pub tensor: String,
    #[serde(default)]
    pub point: Option<Point>,
    #[serde(default, rename = "A")]
    pub a: Option<Vec<Vec<f64>>>,
    #[serde(default, rename = "B")]
    pub b: Option<Vec<Vec<f64>>>,
}

#[derive(Deserialize)]
pub struct ConformalInput {
    pub profile: ProfileSpec,
    #[serde(default)]
    pub point: Option<Point>,
    pub jet: ScalarJet2,
}

#[derive(Deserialize)]
pub struct FactorInput {
    pub profile: ProfileSpec,
    pub phi: HomothetySpec,
    #[serde(default)]
    pub points: Vec<Point>,
    #[serde(default)]
    pub vectors: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
pub struct CentralisesInput {
    pub profile: ProfileSpec,
    pub phi: HomothetySpec,
    #[serde(default)]
    pub eta: Option<HomothetySpec>,
    #[serde(default)]
    pub s: Option<f64>,
}

#[derive(Deserialize)]
pub struct TorsionInput {
    pub profile: ProfileSpec,
    pub phi: HomothetySpec,
    pub k: u32,
}

#[derive(Deserialize)]
pub struct RescalingInput {
    pub profile: ProfileSpec,
    pub phi: HomothetySpec,
    #[serde(default)]
    pub points: Vec<Point>,
}

#[derive(Deserialize)]
pub struct SolveBetaInput {
    pub profile: ProfileSpec,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub s: f64,
    pub c: f64,
    pub betahat: BetaSpec,
}

fn default_k_max() -> usize {
    60
}

#[derive(Deserialize)]
pub struct OrbitInput {
    pub profile: ProfileSpec,
    pub gamma: HomothetySpec,
    pub phi: HomothetySpec,
    #[serde(default = "default_k_max")]
    pub k_max: usize,
}

fn default_max_length() -> usize {
    3
}

#[derive(Deserialize)]
pub struct PdInput {
    pub profile: ProfileSpec,
    pub generators: Vec<HomothetySpec>,
    #[serde(default = "default_max_length")]
    pub max_length: usize,
}

#[derive(Deserialize)]
pub struct DemoInput {
    pub profile: ProfileSpec,
    pub eta: HomothetySpec,
    pub gammas: Vec<HomothetySpec>,
}

#[derive(Deserialize)]
pub struct PullbackInput {
    pub map: String,
    pub point: Point,
}

#[derive(Deserialize)]
pub struct RegionSpec {
    pub outer: Vec<Interval>,
    #[serde(default)]
    pub holes: Vec<Vec<Interval>>,
}

#[derive(Deserialize)]
pub struct AdjacencyInput {
    pub profile: ProfileSpec,
    pub region: RegionSpec,
    pub generators: Vec<HomothetySpec>,
    pub range: [i64; 2],
}
