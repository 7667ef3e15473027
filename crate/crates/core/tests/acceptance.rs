//! End-to-end acceptance suite. Each test prints `criterion N: PASS|FAIL`.

mod common;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cahen_wallach::curvature::{inverse_metric_at, metric_at, ricci, riemann, scalar, weyl};
use cahen_wallach::dynamics::{
    conjugation_block_determinants, fixed_point, inessential_rescaling, is_essential, normal_form,
    orbit_obstruction_sequence,
};
use cahen_wallach::flat::{
    conjugated_inversion, conjugated_translation, flatness_blowup_demo, g_minus, g_plus, geodesic_witness_residual,
    minkowski_metric, pullback_metric, ImaginaryLocalMap, MinkowskiMap, SmoothMap,
};
use cahen_wallach::group::{apply, compose, homothety_factor_check, inverse};
use cahen_wallach::quotients::{
    removed_axis_neighbourhood, self_adjacency, verify_failed_3d_example, verify_imaginary_torus_example,
    verify_inessential_rescale_u, verify_real_lattice_example, verify_removed_fixed_points_example,
};
use cahen_wallach::report::Report;
use cahen_wallach::sampling::{
    random_beta, random_centraliser_element, random_homothety, random_imaginary_profile, random_point,
    random_profile, random_symmetric, rng, HomothetyRanges,
};
use cahen_wallach::{CwError, Homothety, Point, Sign, SymmetricProfile};
use common::{brute_ricci, brute_riemann, fd_jacobian, idx4, kn, trace_with};
use nalgebra::DMatrix;
use rand::Rng;
use serde_json::{json, Value};

/// Runs `body`, which returns the list of failed conditions, and prints the verdict.
fn criterion(n: u32, budget_secs: u64, body: impl FnOnce() -> Vec<String>) {
    let start = Instant::now();
    let mut failures = body();
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(budget_secs) {
        failures.push(format!("runtime {elapsed:.2?} exceeds {budget_secs} s"));
    }
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n}: {verdict} ({elapsed:.2?})");
    for f in &failures {
        println!("  - {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:?}");
}

fn expect(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn max_entry_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn criterion_1_curvature_oracle() {
    criterion(1, 10, || {
        let mut f = Vec::new();
        let mut r = rng(101);
        for case in 0..20 {
            let n = 1 + case % 5;
            let p = random_profile(&mut r, n, 4.0);
            let q = random_point(&mut r, n, 1.5);
            let c = q.to_vector();
            let c = c.as_slice();
            let m = n + 2;
            let br = brute_riemann(&p, c);
            let bric = brute_ricci(&p, c, &br);
            let g = metric_at(&p, &q).unwrap();
            let ginv = inverse_metric_at(&p, &q).unwrap();
            let bscal = trace_with(&ginv, &bric);
            let schouten = (&bric - g.matrix() * (bscal / (2.0 * (m - 1) as f64))) / n as f64;
            let gp = kn(g.matrix(), &schouten);
            let bweyl: Vec<f64> = br.iter().zip(&gp).map(|(a, b)| a - b).collect();
            let dr = max_entry_diff(riemann(&p).components(), &br);
            let dric = (ricci(&p).matrix() - &bric).amax();
            let dw = max_entry_diff(weyl(&p).components(), &bweyl);
            let sc = scalar(&p).abs();
            expect(&mut f, dr <= 1e-5, || format!("case {case}: riemann deviation {dr:e}"));
            expect(&mut f, dric <= 1e-5, || format!("case {case}: ricci deviation {dric:e}"));
            expect(&mut f, dw <= 1e-5, || format!("case {case}: weyl deviation {dw:e}"));
            expect(&mut f, sc <= 1e-8, || format!("case {case}: scalar {sc:e}"));
            // index layout sanity: R(t, x1, t, x1) = −S11
            let r0 = br[idx4(m, 0, 1, 0, 1)];
            expect(&mut f, (r0 + p.matrix()[(0, 0)]).abs() <= 1e-5, || format!("case {case}: R_t1t1 {r0}"));
        }
        f
    });
}

#[test]
fn criterion_2_conformal_flatness() {
    criterion(2, 5, || {
        let mut f = Vec::new();
        let mut r = rng(202);
        for case in 0..50 {
            let n = 2 + case % 4;
            let sigma = r.random_range(0.2..3.0) * if r.random_bool(0.5) { 1.0 } else { -1.0 };
            let base = DMatrix::identity(n, n) * sigma;
            let perturbed = case % 2 == 1;
            let s = if perturbed {
                let e = random_symmetric(&mut r, n, 1.0);
                let e = &e - DMatrix::identity(n, n) * (e.trace() / n as f64);
                let norm = e.symmetric_eigenvalues().amax();
                &base + e * (1e-3 / norm)
            } else {
                base
            };
            let p = SymmetricProfile::new(s).unwrap();
            let w = weyl(&p).max_abs();
            let flat = p.classify().conformally_flat;
            if perturbed {
                expect(&mut f, w > 1e-4, || format!("case {case}: perturbed ‖W‖ = {w:e}"));
                expect(&mut f, !flat, || format!("case {case}: perturbed profile classified flat"));
            } else {
                expect(&mut f, w <= 1e-12, || format!("case {case}: scalar ‖W‖ = {w:e}"));
                expect(&mut f, flat, || format!("case {case}: scalar profile not classified flat"));
            }
        }
        f
    });
}

#[test]
fn criterion_3_group_faithfulness() {
    criterion(3, 10, || {
        let mut f = Vec::new();
        let mut r = rng(303);
        let close = |a: &Point, b: &Point| a.distance(b) <= 1e-8 * b.norm().max(1.0);
        for case in 0..200 {
            let n = 1 + case % 4;
            let p = random_profile(&mut r, n, 3.0);
            let ranges = HomothetyRanges::default();
            let phi = random_homothety(&mut r, &p, &ranges);
            let psi = random_homothety(&mut r, &p, &ranges);
            let q = random_point(&mut r, n, 2.0);
            let lhs = apply(&compose(&phi, &psi).unwrap(), &q).unwrap();
            let rhs = apply(&phi, &apply(&psi, &q).unwrap()).unwrap();
            expect(&mut f, close(&lhs, &rhs), || format!("triple {case}: {}", lhs.distance(&rhs)));
            let inv = inverse(&phi);
            let back = apply(&inv, &apply(&phi, &q).unwrap()).unwrap();
            let d = compose(&phi, &inv).unwrap().distance_to_identity();
            expect(&mut f, close(&back, &q) && d <= 1e-8, || format!("inverse {case}: {d:e}"));
        }
        for case in 0..40 {
            let n = 1 + case % 4;
            let p = random_profile(&mut r, n, 3.0);
            let phi = random_homothety(&mut r, &p, &HomothetyRanges::default());
            let pts: Vec<Point> = (0..10).map(|_| random_point(&mut r, n, 2.0)).collect();
            let dev = homothety_factor_check(&phi, &pts, &[]).unwrap();
            expect(&mut f, dev <= 1e-8, || format!("factor {case}: {dev:e}"));
        }
        f
    });
}

#[test]
fn criterion_4_fixed_points_and_essentiality() {
    criterion(4, 20, || {
        let mut f = Vec::new();
        let mut r = rng(404);
        for case in 0..100 {
            let n = 1 + case % 3;
            let p = random_profile(&mut r, n, 3.0);
            let eps = if case % 2 == 0 { Sign::Plus } else { Sign::Minus };
            let mut phi = random_homothety(&mut r, &p, &HomothetyRanges { eps: Some(eps), c: 2.0, ..Default::default() });
            let s = phi.s().signum() * phi.s().abs().max(0.1);
            let c = if (case / 2) % 2 == 0 { 0.0 } else { phi.c().signum() * phi.c().abs().max(0.1) };
            phi = Homothety::new(p.clone(), phi.b(), phi.beta().clone(), c, eps, phi.a().clone(), s).unwrap();
            let fp = fixed_point(&phi);
            let should = eps == Sign::Minus || c == 0.0;
            expect(&mut f, fp.exists == should, || format!("case {case}: exists = {} for eps {eps:?}, c {c}", fp.exists));
            if let Some(q) = &fp.point {
                let d = phi.apply(q).unwrap().distance(q);
                expect(&mut f, d <= 1e-8 * q.norm().max(1.0), || format!("case {case}: fixed point residual {d:e}"));
            }
            let essential = is_essential(&phi).unwrap();
            expect(&mut f, essential == fp.exists, || format!("case {case}: essential = {essential}"));
            match inessential_rescaling(&phi) {
                Ok(resc) => {
                    expect(&mut f, !essential, || format!("case {case}: rescaling of an essential element"));
                    let worst = (0..100)
                        .map(|_| {
                            let q = random_point(&mut r, n, 3.0);
                            (resc.eval(&phi.apply(&q).unwrap()) - resc.eval(&q) + phi.s()).abs()
                        })
                        .fold(0.0, f64::max);
                    expect(&mut f, worst <= 1e-8, || format!("case {case}: rescaling residual {worst:e}"));
                }
                Err(e) => expect(&mut f, essential, || format!("case {case}: no rescaling for inessential element: {e}")),
            }
        }
        f
    });
}

fn positive_eigenvalue(p: &SymmetricProfile) -> Option<f64> {
    p.spectrum().iter().map(|b| b.eigenvalue).find(|&l| l > 0.0)
}

#[test]
fn criterion_5_normal_forms() {
    criterion(5, 10, || {
        let mut f = Vec::new();
        let mut r = rng(505);
        let mut done = 0;
        while done < 50 {
            let n = 1 + done % 3;
            let p = random_profile(&mut r, n, 3.0);
            let mut phi = random_homothety(&mut r, &p, &HomothetyRanges { eps: Some(Sign::Plus), c: 2.0, ..Default::default() });
            if phi.s().abs() < 0.05 {
                continue;
            }
            let dets = conjugation_block_determinants(&p, phi.a(), phi.s(), phi.c()).unwrap();
            if dets.iter().any(|d| d.relative_det <= 1e-6) {
                continue;
            }
            phi = phi.with_b(phi.b() + 0.5);
            match normal_form(&phi) {
                Ok(nf) => {
                    let conj = phi.conjugate_by(&nf.conjugator).unwrap();
                    let ok = conj.b().abs() <= 1e-7 * (1.0 + phi.b().abs())
                        && conj.beta().is_zero(1e-7)
                        && nf.normal.c() >= 0.0
                        && nf.residual <= 1e-7;
                    expect(&mut f, ok, || format!("normal form {done}: b {:e}, residual {:e}", conj.b(), nf.residual));
                }
                Err(e) => f.push(format!("normal form {done}: {e}")),
            }
            done += 1;
        }
        let mut resonant = 0;
        while resonant < 10 {
            let n = 1 + resonant % 3;
            let p = random_profile(&mut r, n, 3.0);
            let Some(mu) = positive_eigenvalue(&p) else { continue };
            let c = r.random_range(0.3..2.0);
            let s = mu.sqrt() * c * if resonant % 2 == 0 { 1.0 } else { -1.0 };
            let a = random_centraliser_element(&mut r, &p);
            let beta = random_beta(&mut r, &p, 1.0);
            let phi = Homothety::new(p.clone(), 0.3, beta, c, Sign::Plus, a, s).unwrap();
            let res = normal_form(&phi);
            expect(&mut f, matches!(res, Err(CwError::Resonance(_))), || {
                format!("resonant input {resonant}: {:?}", res.as_ref().err())
            });
            resonant += 1;
        }
        for case in 0..40 {
            let n = 1 + case % 4;
            let p = random_profile(&mut r, n, 3.0);
            let c = r.random_range(0.3..2.0);
            let resonant_case = case % 2 == 0;
            let s = match (resonant_case, positive_eigenvalue(&p)) {
                (true, Some(mu)) => mu.sqrt() * c,
                _ => r.random_range(0.1..2.0),
            };
            let a = DMatrix::identity(n, n);
            for d in conjugation_block_determinants(&p, &a, s, c).unwrap() {
                let expected = d.eigenvalue > 0.0 && (s * s - d.eigenvalue * c * c).abs() <= 1e-8 * (s * s).max(1.0);
                expect(&mut f, (d.relative_det <= 1e-8) == expected, || {
                    format!("determinant case {case}: λ² = {}, s = {s}, c = {c}, rel det {:e}", d.eigenvalue, d.relative_det)
                });
            }
        }
        f
    });
}

#[test]
fn criterion_6_obstruction_dynamics() {
    criterion(6, 10, || {
        let mut f = Vec::new();
        let mut r = rng(606);
        for case in 0..20 {
            let n = 1 + case % 3;
            let p = random_imaginary_profile(&mut r, n, 0.2, 3.0);
            let sg = r.random_range(0.4..1.5);
            let a = random_centraliser_element(&mut r, &p);
            let gamma = Homothety::euclidean(p.clone(), r.random_range(0.3..2.0), Sign::Plus, a, sg).unwrap();
            let phi = random_homothety(&mut r, &p, &HomothetyRanges { eps: Some(Sign::Plus), ..Default::default() });
            let rep = orbit_obstruction_sequence(&gamma, &phi, 60).unwrap();
            let expected = Point::from_parts(phi.c(), &vec![0.0; n], 0.0);
            let d = rep.limit.distance(&expected);
            expect(&mut f, rep.converged && d <= 1e-6, || format!("pair {case}: limit off by {d:e}"));
            match rep.rate {
                Some(rate) => expect(&mut f, (rate / (-sg).exp() - 1.0).abs() <= 0.1, || {
                    format!("pair {case}: rate {rate} vs {}", (-sg).exp())
                }),
                None => f.push(format!("pair {case}: no rate")),
            }
        }
        f
    });
}

#[test]
fn criterion_7_minkowski_map() {
    criterion(7, 5, || {
        let mut f = Vec::new();
        let mut r = rng(707);
        let n = 2;
        for case in 0..50 {
            let q = random_point(&mut r, n, 1.4);
            let v = q.to_vector();
            let pulled = pullback_metric(&MinkowskiMap { n }, &minkowski_metric, &v).unwrap();
            let exp = metric_at(&g_plus(n), &q).unwrap().scale((2.0 * q.t).exp());
            let d = pulled.max_diff(&exp) / exp.max_abs().max(1.0);
            expect(&mut f, d <= 1e-9, || format!("minkowski point {case}: {d:e}"));
            let pulled = pullback_metric(&ImaginaryLocalMap { n }, &minkowski_metric, &v).unwrap();
            let exp = metric_at(&g_minus(n), &q).unwrap().scale(1.0 / q.t.cos().powi(2));
            let d = pulled.max_diff(&exp) / exp.max_abs().max(1.0);
            expect(&mut f, d <= 1e-9, || format!("strip point {case}: {d:e}"));
        }
        let m = MinkowskiMap { n };
        for case in 0..10 {
            let c = r.random_range(-1.0..1.0);
            let q = random_point(&mut r, n, 1.0);
            let lhs = m.forward(&Homothety::translation(g_plus(n), c).apply(&q).unwrap().to_vector()).unwrap();
            let rhs = conjugated_translation(n, c).forward(&m.forward(&q.to_vector()).unwrap()).unwrap();
            let d = (lhs - rhs).amax();
            expect(&mut f, d <= 1e-8, || format!("conjugated translation {case}: {d:e}"));
            let mut w = random_point(&mut r, n, 1.0).to_vector();
            w[0] = r.random_range(0.5..3.0);
            let eta = conjugated_inversion(n);
            let j = fd_jacobian(|x| eta.eval(x), &w, 1e-6);
            let pulled = j.transpose() * minkowski_metric(&eta.eval(&w)).unwrap().matrix() * j;
            let exp = minkowski_metric(&w).unwrap().matrix() / (4.0 * w[0] * w[0]);
            let d = (pulled - exp).amax();
            expect(&mut f, d <= 1e-8, || format!("conjugated inversion {case}: {d:e}"));
        }
        for k in 0..20 {
            let s = -0.45 + 0.25 * k as f64;
            let d = geodesic_witness_residual(n, s).unwrap();
            expect(&mut f, d <= 1e-6, || format!("geodesic witness s = {s}: {d:e}"));
        }
        let b = flatness_blowup_demo(Sign::Minus, 0.0, 3.0).unwrap();
        match b.blowup_t {
            Some(t) => expect(&mut f, (t - std::f64::consts::FRAC_PI_2).abs() <= 1e-3, || format!("blowup at {t}")),
            None => f.push("no blowup detected".into()),
        }
        f
    });
}

fn report_failures(f: &mut Vec<String>, r: &Report) {
    for c in r.failures() {
        f.push(format!("{}: check {} failed (residual {:e})", r.example, c.name, c.residual));
    }
}

#[test]
fn criterion_8_worked_examples() {
    criterion(8, 15, || {
        let mut f = Vec::new();
        report_failures(&mut f, &verify_imaginary_torus_example(50, 42).unwrap());
        let rho = (3.0 + 5.0_f64.sqrt()) / 2.0;
        for r in 3..=5 {
            let rep = verify_real_lattice_example(r, 50, 42).unwrap();
            report_failures(&mut f, &rep);
            let rec = rep.check("recurrence").map(|c| c.residual).unwrap_or(f64::INFINITY);
            expect(&mut f, rec <= 1e-9, || format!("r = {r}: recurrence residual {rec:e}"));
        }
        // ρ^{1−2k} by direct group arithmetic
        let l = rho.ln();
        let p = Arc::new(SymmetricProfile::scalar(2, l * l).unwrap());
        let gh = Homothety::euclidean(p.clone(), 1.0, Sign::Plus, DMatrix::identity(2, 2), l).unwrap();
        let alpha = Homothety::heisenberg(p.clone(), rho, cahen_wallach::BetaSolution::zero(p)).unwrap();
        for k in 1..=6 {
            let g = gh.pow(-k).compose(&alpha).unwrap().compose(&gh.pow(k)).unwrap();
            let want = rho.powi(1 - 2 * k as i32);
            expect(&mut f, (g.b() / want - 1.0).abs() <= 1e-9, || format!("k = {k}: b = {} vs {want}", g.b()));
        }
        report_failures(&mut f, &verify_failed_3d_example(50, 42).unwrap());
        report_failures(&mut f, &verify_removed_fixed_points_example(50, 42).unwrap());
        report_failures(&mut f, &verify_inessential_rescale_u(50, 42).unwrap());
        let gp = Arc::new(SymmetricProfile::scalar(2, 1.0).unwrap());
        let gens = [Homothety::translation(gp.clone(), 1.0), Homothety::pure(gp, 2.0_f64.ln())];
        let set = self_adjacency(&removed_axis_neighbourhood(2).unwrap(), &gens, -4..=4).unwrap();
        let want: BTreeSet<Vec<i64>> = (-2..=2).flat_map(|i| (-2..=2).map(move |j| vec![i, j])).collect();
        expect(&mut f, set == want, || format!("self-adjacency has {} elements", set.len()));
        f
    });
}

struct Fixture {
    name: &'static str,
    args: Vec<String>,
    input: Option<Value>,
    raw: Option<&'static str>,
    code: i32,
    kind: Option<&'static str>,
}

fn fx(name: &'static str, args: &[&str], input: Option<Value>, code: i32) -> Fixture {
    Fixture { name, args: args.iter().map(|s| s.to_string()).collect(), input, raw: None, code, kind: None }
}

fn cw(args: &[String], input: Option<&Path>) -> (i32, Value, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cw-lab"));
    cmd.env_remove("CW_LAB_SEED");
    let mut all = args.to_vec();
    if let Some(p) = input {
        all.insert(1, p.to_str().unwrap().to_string());
    }
    let o = cmd.args(&all).output().unwrap();
    let out = serde_json::from_slice(&o.stdout).unwrap_or(Value::Null);
    (o.status.code().unwrap_or(-1), out, String::from_utf8_lossy(&o.stderr).into_owned())
}

fn homothety_json(n: usize, b: f64, beta0: &[f64], beta1: &[f64], c: f64, eps: i32, s: f64) -> Value {
    let a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    json!({"b": b, "beta0": beta0, "beta1": beta1, "c": c, "eps": eps, "A": a, "s": s})
}

#[test]
fn criterion_9_cli_contract() {
    criterion(9, 60, || {
        let mut f = Vec::new();
        let dir = tempfile::TempDir::new().unwrap();
        let prof = json!({"n": 2, "S": [[-1.0, 0.0], [0.0, -2.0]]});
        let prof1 = json!({"n": 1, "S": [[1.0]]});
        let phi = homothety_json(2, 0.3, &[0.5, -0.2], &[0.1, 0.4], 0.7, -1, 0.25);
        let psi = homothety_json(2, -0.1, &[0.0, 1.0], &[0.2, 0.0], 0.2, 1, -0.4);
        let iso = homothety_json(2, 0.3, &[0.5, -0.2], &[0.1, 0.4], 0.7, 1, 0.0);
        let strict = homothety_json(2, 0.3, &[0.5, -0.2], &[0.1, 0.4], 0.7, 1, 0.25);
        let pure = homothety_json(2, 0.0, &[0.0, 0.0], &[0.0, 0.0], 0.0, 1, 0.5);
        let resonant = homothety_json(1, 0.0, &[0.0], &[0.0], 1.0, 1, 1.0);
        let mut malformed = fx("malformed json", &["classify"], None, 2);
        malformed.raw = Some("{\"n\": 2, \"S\": [[1, 0]");
        malformed.kind = Some("parse");
        let fixtures = vec![
            fx("classify", &["classify"], Some(prof.clone()), 0),
            fx("classify mixed", &["classify"], Some(json!({"n": 2, "S": [[1.0, 0.0], [0.0, -1.0]]})), 0),
            malformed,
            Fixture { kind: Some("malformed-profile"), ..fx("asymmetric profile", &["classify"], Some(json!({"n": 2, "S": [[1.0, 2.0], [0.0, 1.0]]})), 2) },
            fx("beta", &["beta"], Some(json!({"profile": prof, "beta": {"beta0": [1.0, 0.0], "beta1": [0.0, 1.0]}, "t": [0.0, 0.5], "other": {"beta0": [0.0, 1.0], "beta1": [1.0, 0.0]}, "reparam": {"c": 0.3, "eps": -1, "A": [[1.0, 0.0], [0.0, 1.0]]}})), 0),
            fx("curvature weyl", &["curvature"], Some(json!({"profile": prof, "tensor": "weyl"})), 0),
            fx("curvature kn", &["curvature"], Some(json!({"tensor": "kulkarni-nomizu", "A": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], "B": [[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 2.0]]})), 0),
            fx("conformal change", &["conformal-change"], Some(json!({"profile": prof1, "point": [0.5, 0.2, 0.1], "jet": {"value": 0.5, "gradient": [1.0, 0.0, 0.0], "hessian": [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]}})), 0),
            fx("apply", &["apply"], Some(json!({"profile": prof, "phi": phi, "point": [0.1, 0.2, 0.3, 0.4]})), 0),
            Fixture { kind: Some("dimension-mismatch"), ..fx("apply wrong dim", &["apply"], Some(json!({"profile": prof, "phi": phi, "point": [0.1, 0.2, 0.3]})), 2) },
            fx("compose", &["compose"], Some(json!({"profile": prof, "phi": phi, "psi": psi})), 0),
            fx("inverse", &["inverse"], Some(json!({"profile": prof, "phi": phi})), 0),
            fx("project", &["project"], Some(json!({"profile": prof, "phi": phi})), 0),
            fx("factor check", &["factor-check"], Some(json!({"profile": prof, "phi": phi})), 0),
            fx("centralises", &["centralises"], Some(json!({"profile": prof, "phi": pure, "eta": pure, "s": 0.5})), 0),
            fx("fixed point", &["fixed-point"], Some(json!({"profile": prof, "phi": phi})), 0),
            fx("torsion fixed point", &["torsion-fixed-point"], Some(json!({"profile": prof, "phi": homothety_json(2, 0.0, &[0.0, 0.0], &[0.0, 0.0], 0.0, -1, 0.0), "k": 2})), 0),
            fx("essential", &["essential"], Some(json!({"profile": prof, "phi": pure})), 0),
            fx("rescaling", &["rescaling"], Some(json!({"profile": prof, "phi": strict, "points": [[0.0, 0.0, 0.0, 0.0]]})), 0),
            Fixture { kind: Some("precondition"), ..fx("rescaling of essential", &["rescaling"], Some(json!({"profile": prof, "phi": pure})), 3) },
            fx("solve beta", &["solve-beta"], Some(json!({"profile": prof, "A": [[1.0, 0.0], [0.0, 1.0]], "s": 0.5, "c": 1.0, "betahat": {"beta0": [1.0, 0.0], "beta1": [0.0, 1.0]}})), 0),
            fx("normal form", &["normal-form"], Some(json!({"profile": prof, "phi": strict})), 0),
            Fixture { kind: Some("resonance"), ..fx("normal form resonant", &["normal-form"], Some(json!({"profile": prof1, "phi": resonant})), 3) },
            fx("orbit", &["orbit"], Some(json!({"profile": prof, "gamma": homothety_json(2, 0.0, &[0.0, 0.0], &[0.0, 0.0], 1.0, 1, 0.8), "phi": iso})), 0),
            fx("pd report", &["pd-report"], Some(json!({"profile": prof, "generators": [strict, psi], "max_length": 2})), 0),
            fx("centraliser demo", &["centraliser-demo"], Some(json!({"profile": prof, "eta": pure, "gammas": [homothety_json(2, 0.0, &[0.0, 0.0], &[0.0, 0.0], 1.0, 1, 0.05)]})), 0),
            fx("pullback check", &["pullback-check"], Some(json!({"map": "minkowski", "point": [0.3, 1.0, -1.0, 0.5]})), 0),
            fx("flat report", &["pullback-check", "--samples", "10"], None, 0),
            fx("blowup", &["blowup"], None, 0),
            fx("verify real lattice", &["verify-example", "real-lattice", "--r", "4", "--samples", "10"], None, 0),
            Fixture { kind: Some("precondition"), ..fx("real lattice r = 2", &["verify-example", "real-lattice", "--r", "2"], None, 3) },
            fx("verify torus", &["verify-example", "imaginary-torus", "--samples", "10"], None, 1),
            fx("self adjacency", &["self-adjacency"], Some(json!({"profile": {"n": 1, "S": [[1.0]]}, "region": {"outer": [{"lo": 0.0, "hi": 1.0}, {"lo": -2.0, "hi": 2.0}, {"lo": -4.0, "hi": 4.0}], "holes": [[{"lo": -1.0, "hi": 2.0}, {"lo": -1.0, "hi": 1.0}, {"lo": -1.0, "hi": 1.0}]]}, "generators": [homothety_json(1, 0.0, &[0.0], &[0.0], 1.0, 1, 0.0), homothety_json(1, 0.0, &[0.0], &[0.0], 0.0, 1, 2.0_f64.ln())], "range": [-3, 3]})), 0),
            Fixture { kind: Some("parse"), ..fx("unknown subcommand", &["frobnicate"], None, 2) },
        ];
        let mut covered = BTreeSet::new();
        for (i, fix) in fixtures.iter().enumerate() {
            let path: Option<PathBuf> = match (&fix.input, fix.raw) {
                (_, Some(raw)) => {
                    let p = dir.path().join(format!("f{i}.json"));
                    std::fs::write(&p, raw).unwrap();
                    Some(p)
                }
                (Some(v), None) => {
                    let p = dir.path().join(format!("f{i}.json"));
                    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
                    Some(p)
                }
                (None, None) => None,
            };
            let (code, out, err) = cw(&fix.args, path.as_deref());
            covered.insert(fix.args[0].clone());
            expect(&mut f, code == fix.code, || format!("{}: exit {code}, expected {} ({err})", fix.name, fix.code));
            if let Some(kind) = fix.kind {
                let got: Value = serde_json::from_str(err.trim()).unwrap_or(Value::Null);
                expect(&mut f, got["error"]["kind"] == kind, || format!("{}: error {err}", fix.name));
            } else {
                expect(&mut f, !out.is_null(), || format!("{}: stdout is not JSON", fix.name));
            }
        }
        let subs: BTreeSet<String> = cahen_wallach::cli::subcommand_names().into_iter().collect();
        let missing: Vec<_> = subs.difference(&covered).collect();
        expect(&mut f, missing.is_empty(), || format!("subcommands without a fixture: {missing:?}"));

        // output schemas feed back as input schemas
        let write = |name: &str, v: &Value| {
            let p = dir.path().join(name);
            std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
            p
        };
        let args = |s: &str| vec![s.to_string()];
        let (_, inv, _) = cw(&args("inverse"), Some(&write("inv.json", &json!({"profile": prof, "phi": phi}))));
        let (_, id, _) = cw(&args("compose"), Some(&write("id.json", &json!({"profile": prof, "phi": phi, "psi": inv}))));
        let (code, back, _) = cw(&args("inverse"), Some(&write("id2.json", &json!({"profile": prof, "phi": id}))));
        let near_zero = |v: &Value, k: &str| v[k].as_f64().map(|x| x.abs() <= 1e-12).unwrap_or(false);
        expect(&mut f, code == 0 && ["b", "c", "s"].iter().all(|k| near_zero(&back, k)), || format!("compose/inverse round trip: {back}"));
        let (_, nf, _) = cw(&args("normal-form"), Some(&write("nf.json", &json!({"profile": prof, "phi": strict}))));
        let (code, _, err) = cw(&args("apply"), Some(&write("nfa.json", &json!({"profile": prof, "phi": nf["conjugator"], "point": [0.0, 0.0, 0.0, 0.0]}))));
        expect(&mut f, code == 0, || format!("normal-form conjugator does not re-parse: {err}"));
        let (_, b, _) = cw(&args("solve-beta"), Some(&write("sb.json", &json!({"profile": prof, "A": [[1.0, 0.0], [0.0, 1.0]], "s": 0.5, "c": 1.0, "betahat": {"beta0": [1.0, 0.0], "beta1": [0.0, 1.0]}}))));
        let (code, _, err) = cw(&args("beta"), Some(&write("sb2.json", &json!({"profile": prof, "beta": b["beta"]}))));
        expect(&mut f, code == 0, || format!("solve-beta output does not re-parse: {err}"));
        let (_, cls, _) = cw(&args("classify"), Some(&write("c1.json", &prof)));
        expect(&mut f, cls["type"] == "imaginary", || format!("classify: {cls}"));

        // determinism
        let a = cw(&["verify-example".into(), "failed3d".into(), "--seed".into(), "5".into()], None);
        let b = cw(&["verify-example".into(), "failed3d".into(), "--seed".into(), "5".into()], None);
        expect(&mut f, a.1 == b.1, || "verify-example output is not deterministic".into());
        f
    });
}
