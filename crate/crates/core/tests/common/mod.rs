//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use cahen_wallach::curvature::metric_at;
use cahen_wallach::{Point, SymmetricProfile};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

/// Gram matrix written out directly from the line element.
pub fn metric_by_hand(s: &DMatrix<f64>, coords: &[f64]) -> DMatrix<f64> {
    let n = s.nrows();
    let m = n + 2;
    let x = DVector::from_column_slice(&coords[1..=n]);
    let mut g = DMatrix::zeros(m, m);
    g[(0, 0)] = (x.transpose() * s * &x)[(0, 0)];
    g[(0, m - 1)] = 1.0;
    g[(m - 1, 0)] = 1.0;
    for i in 1..=n {
        g[(i, i)] = 1.0;
    }
    g
}

fn library_metric(profile: &SymmetricProfile, coords: &[f64]) -> DMatrix<f64> {
    metric_at(profile, &Point::from_slice(coords).unwrap()).unwrap().matrix().clone()
}

/// `Γ^k_ij` from central differences of the metric and the Koszul formula,
/// stored as `gamma[k][i][j]`.
pub fn fd_christoffel(profile: &SymmetricProfile, coords: &[f64], h: f64) -> Vec<Vec<Vec<f64>>> {
    let m = coords.len();
    let dg: Vec<DMatrix<f64>> = (0..m)
        .map(|c| {
            let mut up = coords.to_vec();
            let mut dn = coords.to_vec();
            up[c] += h;
            dn[c] -= h;
            (library_metric(profile, &up) - library_metric(profile, &dn)) / (2.0 * h)
        })
        .collect();
    let ginv = library_metric(profile, coords).try_inverse().expect("metric is invertible");
    let mut out = vec![vec![vec![0.0; m]; m]; m];
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                out[k][i][j] = 0.5
                    * (0..m)
                        .map(|l| ginv[(k, l)] * (dg[i][(l, j)] + dg[j][(l, i)] - dg[l][(i, j)]))
                        .sum::<f64>();
            }
        }
    }
    out
}

/// `R_abcd = g(R(∂a, ∂b)∂d, ∂c)` from finite differences of the
/// finite-difference Christoffel symbols.
pub fn brute_riemann(profile: &SymmetricProfile, coords: &[f64]) -> Vec<f64> {
    let m = coords.len();
    let h = 1e-3;
    let gam = fd_christoffel(profile, coords, 1e-4);
    let dgam: Vec<Vec<Vec<Vec<f64>>>> = (0..m)
        .map(|a| {
            let mut up = coords.to_vec();
            let mut dn = coords.to_vec();
            up[a] += h;
            dn[a] -= h;
            let (gu, gd) = (fd_christoffel(profile, &up, 1e-4), fd_christoffel(profile, &dn, 1e-4));
            (0..m)
                .map(|e| (0..m).map(|b| (0..m).map(|d| (gu[e][b][d] - gd[e][b][d]) / (2.0 * h)).collect()).collect())
                .collect()
        })
        .collect();
    // up[e][d][a][b] = (R(∂a, ∂b)∂d)^e
    let up = |e: usize, d: usize, a: usize, b: usize| -> f64 {
        dgam[a][e][b][d] - dgam[b][e][a][d]
            + (0..m).map(|f| gam[e][a][f] * gam[f][b][d] - gam[e][b][f] * gam[f][a][d]).sum::<f64>()
    };
    let g = library_metric(profile, coords);
    let mut out = vec![0.0; m * m * m * m];
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    out[((a * m + b) * m + c) * m + d] = (0..m).map(|e| g[(c, e)] * up(e, d, a, b)).sum();
                }
            }
        }
    }
    out
}

pub fn idx4(m: usize, a: usize, b: usize, c: usize, d: usize) -> usize {
    ((a * m + b) * m + c) * m + d
}

/// `Ric_bd = Σ_a R^a_{d a b}`, raised with the inverse metric.
pub fn brute_ricci(profile: &SymmetricProfile, coords: &[f64], riem: &[f64]) -> DMatrix<f64> {
    let m = coords.len();
    let ginv = library_metric(profile, coords).try_inverse().unwrap();
    DMatrix::from_fn(m, m, |b, d| {
        let mut acc = 0.0;
        for a in 0..m {
            for c in 0..m {
                // R^a_{d a b} = g^{ac} R_{a b c d}
                acc += ginv[(a, c)] * riem[idx4(m, a, b, c, d)];
            }
        }
        acc
    })
}

pub fn trace_with(ginv: &DMatrix<f64>, t: &DMatrix<f64>) -> f64 {
    ginv.component_mul(t).sum()
}

/// Kulkarni-Nomizu product written independently of the library.
pub fn kn(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Vec<f64> {
    let m = a.nrows();
    let mut out = vec![0.0; m * m * m * m];
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                for v in 0..m {
                    out[idx4(m, x, y, z, v)] = a[(x, z)] * b[(y, v)] + a[(y, v)] * b[(x, z)]
                        - a[(x, v)] * b[(y, z)]
                        - a[(y, z)] * b[(x, v)];
                }
            }
        }
    }
    out
}

/// Classic fixed-step RK4 for `β̈ = Sβ`; returns `(β(t), β̇(t))`.
pub fn rk4_beta(s: &DMatrix<f64>, b0: &DVector<f64>, b1: &DVector<f64>, t: f64, h: f64) -> (DVector<f64>, DVector<f64>) {
    let steps = (t.abs() / h).ceil().max(1.0) as usize;
    let dt = t / steps as f64;
    let (mut y, mut yd) = (b0.clone(), b1.clone());
    let f = |y: &DVector<f64>, yd: &DVector<f64>| (yd.clone(), s * y);
    for _ in 0..steps {
        let (k1y, k1v) = f(&y, &yd);
        let (k2y, k2v) = f(&(&y + &k1y * (dt / 2.0)), &(&yd + &k1v * (dt / 2.0)));
        let (k3y, k3v) = f(&(&y + &k2y * (dt / 2.0)), &(&yd + &k2v * (dt / 2.0)));
        let (k4y, k4v) = f(&(&y + &k3y * dt), &(&yd + &k3v * dt));
        y += (k1y + k2y * 2.0 + k3y * 2.0 + k4y) * (dt / 6.0);
        yd += (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (dt / 6.0);
    }
    (y, yd)
}

/// Central-difference Jacobian of a vector function.
pub fn fd_jacobian(f: impl Fn(&DVector<f64>) -> DVector<f64>, p: &DVector<f64>, h: f64) -> DMatrix<f64> {
    let m = p.len();
    let rows = f(p).len();
    let mut j = DMatrix::zeros(rows, m);
    for c in 0..m {
        let mut up = p.clone();
        let mut dn = p.clone();
        up[c] += h;
        dn[c] -= h;
        j.set_column(c, &((f(&up) - f(&dn)) / (2.0 * h)));
    }
    j
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

pub fn profile(diag: &[f64]) -> Arc<SymmetricProfile> {
    Arc::new(SymmetricProfile::diagonal(diag).unwrap())
}

/// Symmetric `n×n` matrix from `n(n+1)/2` upper-triangle entries.
pub fn sym_from(n: usize, upper: &[f64]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            m[(i, j)] = upper[k];
            m[(j, i)] = upper[k];
            k += 1;
        }
    }
    m
}

/// Strategy for invertible symmetric profiles with `n ≤ max_n`, entries in
/// `[−bound, bound]` and every eigenvalue at least `gap` away from zero.
pub fn arb_profile(max_n: usize, bound: f64, gap: f64) -> impl Strategy<Value = Arc<SymmetricProfile>> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), prop::collection::vec(-bound..bound, n * (n + 1) / 2)))
        .prop_filter_map("eigenvalues too close to zero", move |(n, upper)| {
            let s = sym_from(n, &upper);
            let ev = s.clone().symmetric_eigenvalues();
            if ev.iter().all(|l| l.abs() >= gap) {
                SymmetricProfile::new(s).ok().map(Arc::new)
            } else {
                None
            }
        })
}
