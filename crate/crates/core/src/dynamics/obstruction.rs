use serde::Serialize;

use crate::error::{CwError, Result};
use crate::group::{GroupWord, Homothety, GROUP_TOLERANCE};
use crate::point::Point;
use crate::sign::Sign;

/// Threshold on `‖y_K − (c_φ, 0, 0)‖` for declaring convergence.
const ORBIT_CONVERGENCE: f64 = 1e-6;
const RATE_WINDOW: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub sequence: Vec<Point>,
    pub limit: Point,
    /// Fitted per-step contraction factor of the transverse block.
    pub rate: Option<f64>,
    pub converged: bool,
    pub final_distance: f64,
}

/// `y_k = γ^{−k} φ γ^k (0)` for `k = 1..=K`, with `γ ∈ E(1) × C_{O(n)}(S) × ℝ`.
pub fn orbit_obstruction_sequence(gamma: &Homothety, phi: &Homothety, k_max: usize) -> Result<OrbitReport> {
    gamma.profile().ensure_compatible(phi.profile())?;
    if !gamma.heisenberg_part_vanishes(GROUP_TOLERANCE) || gamma.eps() != Sign::Plus {
        return Err(CwError::Precondition("γ must have b = 0, β = 0 and ε = +1".into()));
    }
    let n = phi.n();
    let origin = Point::origin(n);
    let mut sequence = Vec::with_capacity(k_max);
    for k in 1..=k_max as i64 {
        let q = phi.apply(&gamma.pow(k).apply(&origin)?)?;
        sequence.push(gamma.pow(-k).apply(&q)?);
    }
    let limit = Point::new(phi.c(), nalgebra::DVector::zeros(n), 0.0);
    let final_distance = sequence.last().map_or(f64::INFINITY, |y| y.distance(&limit));
    let rate = fit_rate(&sequence);
    Ok(OrbitReport { sequence, limit, rate, converged: final_distance <= ORBIT_CONVERGENCE, final_distance })
}

/// Least-squares slope of `log ‖x_k‖` over window maxima, exponentiated.
fn fit_rate(seq: &[Point]) -> Option<f64> {
    let samples: Vec<(f64, f64)> = seq
        .chunks(RATE_WINDOW)
        .enumerate()
        .filter_map(|(w, chunk)| {
            chunk
                .iter()
                .enumerate()
                .map(|(i, y)| ((w * RATE_WINDOW + i + 1) as f64, y.x.norm()))
                .filter(|(_, r)| *r > 0.0 && r.is_finite())
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(k, r)| (k, r.ln()))
        })
        .collect();
    if samples.len() < 2 {
        return None;
    }
    let m = samples.len() as f64;
    let mx = samples.iter().map(|s| s.0).sum::<f64>() / m;
    let my = samples.iter().map(|s| s.1).sum::<f64>() / m;
    let sxx: f64 = samples.iter().map(|s| (s.0 - mx).powi(2)).sum();
    let sxy: f64 = samples.iter().map(|s| (s.0 - mx) * (s.1 - my)).sum();
    Some((sxy / sxx).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionReason {
    /// `ε = −1` or `c = 0`: the element fixes a point.
    FixedPoint,
    /// `(s/c)² > λ²_max`.
    Inequality,
    /// `S` has no positive eigenvalue, so strict elements are excluded.
    ImaginaryType,
}

#[derive(Debug, Clone, Serialize)]
pub struct Obstruction {
    pub word: Vec<(usize, i64)>,
    pub reason: ObstructionReason,
    pub s: f64,
    pub c: f64,
    pub eps: Sign,
}

#[derive(Debug, Clone, Serialize)]
pub struct PdReport {
    pub obstructions: Vec<Obstruction>,
    pub words_checked: usize,
    pub max_length: usize,
    pub lambda_max_sq: Option<f64>,
}

/// Freely reduced words of length `1..=max_len` in the generators and their
/// inverses, as merged `(index, exponent)` runs.
fn reduced_words(count: usize, max_len: usize) -> Vec<Vec<(usize, i64)>> {
    let letters: Vec<(usize, i64)> = (0..count).flat_map(|i| [(i, 1), (i, -1)]).collect();
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.last().is_some_and(|&last| last.0 == l.0 && last.1 == -l.1) {
                    continue;
                }
                let mut nw = w.clone();
                nw.push(l);
                next.push(nw);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter().map(|w| merge_runs(&w)).collect()
}

fn merge_runs(word: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = Vec::new();
    for &(i, e) in word {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += e,
            _ => out.push((i, e)),
        }
    }
    out
}

/// Necessary conditions for a group generated by `generators` to act
/// properly discontinuously and cocompactly. The report lists violations; an
/// empty list decides nothing.
pub fn pd_necessary_report(generators: &[Homothety], max_len: usize) -> Result<PdReport> {
    let Some(first) = generators.first() else {
        return Ok(PdReport { obstructions: Vec::new(), words_checked: 0, max_length: max_len, lambda_max_sq: None });
    };
    let profile = first.profile().clone();
    let lambda_max = profile.lambda_max_sq();
    let mut obstructions = Vec::new();
    let words = reduced_words(generators.len(), max_len);
    for letters in &words {
        let g = GroupWord::new(generators.to_vec(), letters.clone())?.evaluate(profile.clone());
        if !g.is_strict() {
            continue;
        }
        let reason = if g.eps() == Sign::Minus || g.c().abs() <= GROUP_TOLERANCE {
            Some(ObstructionReason::FixedPoint)
        } else {
            match lambda_max {
                None => Some(ObstructionReason::ImaginaryType),
                Some(l) if (g.s() / g.c()).powi(2) > l => Some(ObstructionReason::Inequality),
                Some(_) => None,
            }
        };
        if let Some(reason) = reason {
            obstructions.push(Obstruction { word: letters.clone(), reason, s: g.s(), c: g.c(), eps: g.eps() });
        }
    }
    Ok(PdReport { obstructions, words_checked: words.len(), max_length: max_len, lambda_max_sq: lambda_max })
}

#[derive(Debug, Clone, Serialize)]
pub struct CentraliserDemoEntry {
    pub c: f64,
    pub norm_at_origin: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CentraliserDemoReport {
    pub entries: Vec<CentraliserDemoEntry>,
    /// Distinct elements have distinct projections.
    pub injective: bool,
    pub min_projection_gap: f64,
    /// `‖γ_n(0)‖ / |c_n|` stays bounded along the sequence and the last
    /// orbit point is closer to the origin than the first.
    pub converges: bool,
}

/// For `η` strict, fixing the origin and with `ε = +1`, the projection
/// restricted to the centraliser of `η` is injective and `c_n → 0` forces
/// `γ_n(0) → 0`. Checks both on the supplied sequence.
pub fn centraliser_projection_demo(eta: &Homothety, gammas: &[Homothety]) -> Result<CentraliserDemoReport> {
    if !eta.is_strict() {
        return Err(CwError::NotStrict(eta.s()));
    }
    if eta.eps() != Sign::Plus {
        return Err(CwError::Precondition("η must have ε = +1".into()));
    }
    let origin = Point::origin(eta.n());
    if eta.apply(&origin)?.distance(&origin) > GROUP_TOLERANCE {
        return Err(CwError::Precondition("η must fix the origin".into()));
    }
    for (i, g) in gammas.iter().enumerate() {
        if !g.centralises(eta)? {
            return Err(CwError::Precondition(format!("γ_{i} does not centralise η")));
        }
    }
    let mut injective = true;
    let mut min_gap = f64::INFINITY;
    for i in 0..gammas.len() {
        for j in (i + 1)..gammas.len() {
            let gap = gammas[i].project().distance(&gammas[j].project());
            min_gap = min_gap.min(gap);
            if gap <= GROUP_TOLERANCE && !gammas[i].approx_eq(&gammas[j], GROUP_TOLERANCE) {
                injective = false;
            }
        }
    }
    let entries: Vec<CentraliserDemoEntry> = gammas
        .iter()
        .map(|g| {
            let norm = g.apply(&origin).map(|p| p.norm()).unwrap_or(f64::NAN);
            CentraliserDemoEntry { c: g.c(), norm_at_origin: norm, ratio: norm / g.c().abs() }
        })
        .collect();
    let converges = match (entries.first(), entries.last()) {
        (Some(first), Some(last)) if entries.len() >= 3 => {
            let third = entries.len() / 3;
            let head = entries[..third.max(1)].iter().map(|e| e.ratio).fold(0.0, f64::max);
            let tail = entries[entries.len() - third.max(1)..].iter().map(|e| e.ratio).fold(0.0, f64::max);
            tail <= 2.0 * head + 1e-12 && last.norm_at_origin < first.norm_at_origin
        }
        _ => false,
    };
    Ok(CentraliserDemoReport { entries, injective, min_projection_gap: min_gap, converges })
}
