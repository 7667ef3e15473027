//! Points `(t, x, v)` and tangent vectors in the coordinate frame
//! `(∂_t, ∂_1, …, ∂_n, ∂_v)`. Both serialize as flat arrays `[t, x…, v]`.

use nalgebra::DVector;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CwError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub t: f64,
    pub x: DVector<f64>,
    pub v: f64,
}

impl Point {
    pub fn new(t: f64, x: DVector<f64>, v: f64) -> Self {
        Self { t, x, v }
    }

    pub fn from_parts(t: f64, x: &[f64], v: f64) -> Self {
        Self::new(t, DVector::from_column_slice(x), v)
    }

    pub fn origin(n: usize) -> Self {
        Self::new(0.0, DVector::zeros(n), 0.0)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Parses `[t, x¹, …, xⁿ, v]`.
    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        if coords.len() < 3 {
            return Err(CwError::InvalidInput(format!(
                "a point needs at least 3 coordinates, got {}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(CwError::InvalidInput("point has non-finite coordinates".into()));
        }
        let m = coords.len();
        Ok(Self::from_parts(coords[0], &coords[1..m - 1], coords[m - 1]))
    }

    pub fn from_vector(coords: &DVector<f64>) -> Result<Self> {
        Self::from_slice(coords.as_slice())
    }

    pub fn to_vec(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n() + 2);
        out.push(self.t);
        out.extend(self.x.iter());
        out.push(self.v);
        out
    }

    pub fn to_vector(&self) -> DVector<f64> {
        DVector::from_vec(self.to_vec())
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.v.is_finite() && self.x.iter().all(|c| c.is_finite())
    }

    /// Max-norm distance in coordinates.
    pub fn distance(&self, other: &Point) -> f64 {
        (self.to_vector() - other.to_vector()).amax()
    }

    /// Euclidean norm of the coordinate vector.
    pub fn norm(&self) -> f64 {
        self.to_vector().norm()
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        // `+ 0.0` turns `-0.0` into `0.0`.
        self.to_vec().into_iter().map(|c| c + 0.0).collect::<Vec<_>>().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<f64>::deserialize(deserializer)?;
        Point::from_slice(&coords).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    pub dt: f64,
    pub dx: DVector<f64>,
    pub dv: f64,
}

impl TangentVector {
    pub fn new(dt: f64, dx: DVector<f64>, dv: f64) -> Self {
        Self { dt, dx, dv }
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        let p = Point::from_slice(coords)?;
        Ok(Self::new(p.t, p.x, p.v))
    }

    /// The `k`-th coordinate frame vector in dimension `n + 2`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut c = vec![0.0; n + 2];
        c[k] = 1.0;
        Self::from_vector(&DVector::from_vec(c))
    }

    pub fn from_vector(c: &DVector<f64>) -> Self {
        let m = c.len();
        Self::new(c[0], c.rows(1, m - 2).into_owned(), c[m - 1])
    }

    pub fn to_vector(&self) -> DVector<f64> {
        let mut out = Vec::with_capacity(self.dx.len() + 2);
        out.push(self.dt);
        out.extend(self.dx.iter());
        out.push(self.dv);
        DVector::from_vec(out)
    }
}

impl Serialize for TangentVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vector().as_slice().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TangentVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<f64>::deserialize(deserializer)?;
        TangentVector::from_slice(&coords).map_err(serde::de::Error::custom)
    }
}
