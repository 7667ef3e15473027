use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{CwError, Result};
use crate::group::{Homothety, GROUP_TOLERANCE};
use crate::linalg::as_signed_permutation;
use crate::sign::Sign;

/// Relative slack when comparing box faces.
pub const FACE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(CwError::InvalidInput(format!("interval [{lo}, {hi}] is not ordered")));
        }
        Ok(Self { lo, hi })
    }

    pub fn symmetric(r: f64) -> Self {
        Self { lo: -r, hi: r }
    }

    fn affine(&self, scale: f64, offset: f64) -> Self {
        let (a, b) = (scale * self.lo + offset, scale * self.hi + offset);
        Self { lo: a.min(b), hi: a.max(b) }
    }
}

/// An open box with closed boxes removed, in coordinates `(t, x, v)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxRegion {
    pub outer: Vec<Interval>,
    pub holes: Vec<Vec<Interval>>,
}

impl BoxRegion {
    pub fn new(outer: Vec<Interval>, holes: Vec<Vec<Interval>>) -> Result<Self> {
        if outer.len() < 3 {
            return Err(CwError::InvalidInput("a region needs at least three coordinates".into()));
        }
        for iv in outer.iter().chain(holes.iter().flatten()) {
            Interval::new(iv.lo, iv.hi)?;
        }
        if holes.iter().any(|h| h.len() != outer.len()) {
            return Err(CwError::DimensionMismatch {
                expected: outer.len(),
                got: holes.iter().map(Vec::len).find(|&l| l != outer.len()).unwrap_or(0),
            });
        }
        Ok(Self { outer, holes })
    }

    /// `(t0, t1) × ((−a, a)ⁿ × (−b, b)) ∖ ([−p, p]ⁿ × [−q, q])`, with the
    /// hole spanning the `t`-range of the outer box.
    pub fn annular_slab(n: usize, t: (f64, f64), a: f64, b: f64, p: f64, q: f64) -> Result<Self> {
        let mut outer = vec![Interval::new(t.0, t.1)?];
        outer.extend(std::iter::repeat_n(Interval::symmetric(a), n));
        outer.push(Interval::symmetric(b));
        let mut hole = vec![Interval::new(t.0 - 1.0, t.1 + 1.0)?];
        hole.extend(std::iter::repeat_n(Interval::symmetric(p), n));
        hole.push(Interval::symmetric(q));
        Self::new(outer, vec![hole])
    }

    pub fn dim(&self) -> usize {
        self.outer.len()
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.len() == self.dim()
            && self.outer.iter().zip(p).all(|(iv, &c)| iv.lo < c && c < iv.hi)
            && !self.holes.iter().any(|h| h.iter().zip(p).all(|(iv, &c)| iv.lo <= c && c <= iv.hi))
    }

    /// Image under a homothety with `ε = +1`, `β = 0` and `A` a signed
    /// permutation.
    pub fn image(&self, phi: &Homothety) -> Result<Self> {
        if self.dim() != phi.n() + 2 {
            return Err(CwError::DimensionMismatch { expected: phi.n() + 2, got: self.dim() });
        }
        let perm = axis_box_data(phi)?;
        let map = |boxes: &[Interval]| {
            let n = phi.n();
            let mut out = boxes.to_vec();
            out[0] = boxes[0].affine(1.0, phi.c());
            for (j, &(i, sign)) in perm.iter().enumerate() {
                out[1 + i] = boxes[1 + j].affine(sign * phi.s().exp(), 0.0);
            }
            out[n + 1] = boxes[n + 1].affine((2.0 * phi.s()).exp(), phi.b());
            out
        };
        Ok(Self { outer: map(&self.outer), holes: self.holes.iter().map(|h| map(h)).collect() })
    }

    /// Whether the two regions share a point. Both are open, so a common
    /// point exists iff one lies at the midpoint of a cell of the grid cut
    /// out by all box faces.
    pub fn intersects(&self, other: &BoxRegion) -> bool {
        self.fattened().intersects_exact(&other.fattened())
    }

    /// Shrinks the outer box and grows the holes by a relative `FACE_TOL`, so
    /// faces that agree up to rounding count as coincident.
    fn fattened(&self) -> Self {
        let pad = |iv: &Interval, sign: f64| {
            let (dl, dh) = (FACE_TOL * iv.lo.abs().max(1.0), FACE_TOL * iv.hi.abs().max(1.0));
            Interval { lo: iv.lo + sign * dl, hi: iv.hi - sign * dh }
        };
        Self {
            outer: self.outer.iter().map(|iv| pad(iv, 1.0)).collect(),
            holes: self.holes.iter().map(|h| h.iter().map(|iv| pad(iv, -1.0)).collect()).collect(),
        }
    }

    fn intersects_exact(&self, other: &BoxRegion) -> bool {
        let m = self.dim();
        let mut axes: Vec<Vec<f64>> = Vec::with_capacity(m);
        for k in 0..m {
            let lo = self.outer[k].lo.max(other.outer[k].lo);
            let hi = self.outer[k].hi.min(other.outer[k].hi);
            if lo >= hi {
                return false;
            }
            let mut cuts = vec![lo, hi];
            for h in self.holes.iter().chain(&other.holes) {
                cuts.extend([h[k].lo, h[k].hi].into_iter().filter(|&c| lo < c && c < hi));
            }
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();
            axes.push(cuts.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect());
        }
        let mut idx = vec![0usize; m];
        let mut p = vec![0.0; m];
        loop {
            for k in 0..m {
                p[k] = axes[k][idx[k]];
            }
            if self.contains(&p) && other.contains(&p) {
                return true;
            }
            let mut k = 0;
            loop {
                if k == m {
                    return false;
                }
                idx[k] += 1;
                if idx[k] < axes[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

fn axis_box_data(phi: &Homothety) -> Result<Vec<(usize, f64)>> {
    if phi.eps() != Sign::Plus || !phi.beta().is_zero(GROUP_TOLERANCE) {
        return Err(CwError::Unsupported("generator must have ε = +1 and β = 0".into()));
    }
    as_signed_permutation(phi.a(), GROUP_TOLERANCE)
        .ok_or_else(|| CwError::Unsupported("rotation part is not a signed permutation".into()))
}

/// Exponent tuples `(i₁, …, i_k)` in `range^k` for which
/// `g₁^{i₁} ⋯ g_k^{i_k}` maps the region onto a set meeting it.
pub fn self_adjacency(
    region: &BoxRegion,
    generators: &[Homothety],
    range: RangeInclusive<i64>,
) -> Result<BTreeSet<Vec<i64>>> {
    for g in generators {
        axis_box_data(g)?;
    }
    let Some(first) = generators.first() else {
        return Ok(BTreeSet::from([Vec::new()]));
    };
    let mut out = BTreeSet::new();
    let mut exps = vec![*range.start(); generators.len()];
    if range.is_empty() {
        return Ok(out);
    }
    loop {
        let mut phi = Homothety::identity(first.profile().clone());
        for (g, &e) in generators.iter().zip(&exps) {
            phi = phi.compose(&g.pow(e))?;
        }
        if region.image(&phi)?.intersects(region) {
            out.insert(exps.clone());
        }
        let mut k = 0;
        loop {
            if k == exps.len() {
                return Ok(out);
            }
            exps[k] += 1;
            if exps[k] <= *range.end() {
                break;
            }
            exps[k] = *range.start();
            k += 1;
        }
    }
}
