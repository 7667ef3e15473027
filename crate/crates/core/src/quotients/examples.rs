use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::beta::BetaSolution;
use crate::curvature::metric_at;
use crate::dynamics::orbit_obstruction_sequence;
use crate::error::{CwError, Result};
use crate::flat::{pullback_metric, FnMap};
use crate::group::Homothety;
use crate::point::Point;
use crate::profile::SymmetricProfile;
use crate::report::{Check, Report};
use crate::sampling;
use crate::sign::Sign;

use super::regions::{self_adjacency, BoxRegion};

const POINT_TOL: f64 = 1e-9;

fn vec4(a: f64, b: f64, c: f64, d: f64) -> DVector<f64> {
    DVector::from_vec(vec![a, b, c, d])
}

fn to_point(p: &DVector<f64>) -> Point {
    Point::from_vector(p).expect("at least three coordinates")
}

fn act(phi: &Homothety, p: &DVector<f64>) -> DVector<f64> {
    phi.apply(&to_point(p)).expect("dimension matches").to_vector()
}

/// Largest `|lhs(p) − rhs(p)|∞` over the samples.
fn max_gap(samples: &[DVector<f64>], lhs: impl Fn(&DVector<f64>) -> DVector<f64>, rhs: impl Fn(&DVector<f64>) -> DVector<f64>) -> f64 {
    samples.iter().map(|p| (lhs(p) - rhs(p)).amax()).fold(0.0, f64::max)
}

/// `max |φ*g − λ g|` at the samples, for a map given pointwise.
fn conformal_defect(profile: &Arc<SymmetricProfile>, map: &FnMap, factor: f64, samples: &[DVector<f64>]) -> Result<f64> {
    let target = |q: &DVector<f64>| metric_at(profile, &Point::from_vector(q)?);
    let mut worst = 0.0_f64;
    for p in samples {
        let pulled = pullback_metric(map, &target, p)?;
        worst = worst.max(pulled.max_diff(&target(p)?.scale(factor)));
    }
    Ok(worst)
}

fn rotation(u: f64, x: f64, y: f64) -> (f64, f64) {
    let (s, c) = u.sin_cos();
    (c * x - s * y, s * x + c * y)
}

/// `f(u, x, y, v) = (u, R(u)(x, y), −v − xy)`.
fn torus_chart(p: &DVector<f64>) -> DVector<f64> {
    let (a, b) = rotation(p[0], p[1], p[2]);
    vec4(p[0], a, b, -p[3] - p[1] * p[2])
}

fn torus_chart_inv(q: &DVector<f64>) -> DVector<f64> {
    let (a, b) = rotation(-q[0], q[1], q[2]);
    vec4(q[0], a, b, -q[3] - a * b)
}

/// The imaginary-type torus quotient of `(ℝ⁴, g_{−I})` by `⟨γ, η, ζ⟩`.
pub fn verify_imaginary_torus_example(samples: usize, seed: u64) -> Result<Report> {
    let mut rng = sampling::rng(seed);
    let mut report = Report::new("imaginary-torus");
    let profile = Arc::new(SymmetricProfile::scalar(2, -1.0)?);
    let gamma = Homothety::translation(profile.clone(), FRAC_PI_2);
    let eta = Homothety::heisenberg(profile.clone(), 1.0, BetaSolution::zero(profile.clone()))?;
    let zeta_beta = BetaSolution::from_slices(profile.clone(), &[1.0, 0.0], &[0.0, 1.0])?;
    let zeta = Homothety::heisenberg(profile.clone(), 0.0, zeta_beta.clone())?;
    let pts: Vec<DVector<f64>> = (0..samples).map(|_| sampling::uniform_vector(&mut rng, 4, 2.0)).collect();
    let conj = |phi: &Homothety| {
        let phi = phi.clone();
        move |p: &DVector<f64>| torus_chart_inv(&act(&phi, &torus_chart(p)))
    };

    let round = max_gap(&pts, |p| torus_chart_inv(&torus_chart(p)), |p| p.clone())
        .max(max_gap(&pts, |p| torus_chart(&torus_chart_inv(p)), |p| p.clone()));
    report.push(Check::within("chart_round_trip", round, POINT_TOL));

    let at = conj(&gamma)(&vec4(0.0, 1.0, 0.0, 0.0));
    report.push(Check::within("gamma_at_sample_point", (at - vec4(FRAC_PI_2, 0.0, -1.0, 0.0)).amax(), POINT_TOL));
    let displayed_gamma = |p: &DVector<f64>| vec4(p[0] + FRAC_PI_2, p[2], -p[1], p[3]);
    report.push(Check::within("conjugate_gamma", max_gap(&pts, conj(&gamma), displayed_gamma), POINT_TOL));
    report.push(Check::within(
        "conjugate_eta",
        max_gap(&pts, conj(&eta), |p| vec4(p[0], p[1], p[2], p[3] - 1.0)),
        POINT_TOL,
    ));
    report.push(Check::within(
        "conjugate_zeta",
        max_gap(&pts, conj(&zeta), |p| vec4(p[0], p[1] + 1.0, p[2], p[3])),
        POINT_TOL,
    ));

    // Λ = ⟨γ⁴, ζ, γ⁻¹ζγ, η⟩ should conjugate to ⟨2πe₁, e₂, e₃, −e₄⟩.
    let zeta_conj = gamma.inverse().compose(&zeta)?.compose(&gamma)?;
    let lattice = [
        ("lattice_gamma4", gamma.pow(4), vec4(4.0 * FRAC_PI_2, 0.0, 0.0, 0.0)),
        ("lattice_zeta", zeta.clone(), vec4(0.0, 1.0, 0.0, 0.0)),
        ("lattice_conjugated_zeta", zeta_conj.clone(), vec4(0.0, 0.0, 1.0, 0.0)),
        ("lattice_eta", eta.clone(), vec4(0.0, 0.0, 0.0, -1.0)),
    ];
    for (name, g, shift) in lattice {
        report.push(Check::within(name, max_gap(&pts, conj(&g), |p| p + &shift), POINT_TOL));
    }

    // γ^k acts on the chart by a translation for k = 4 only.
    let mut index_ok = true;
    let mut index_res = 0.0_f64;
    for k in 1..=4 {
        let g = conj(&gamma.pow(k));
        let disp: Vec<DVector<f64>> = pts.iter().map(|p| g(p) - p).collect();
        let spread = disp.iter().map(|d| (d - &disp[0]).amax()).fold(0.0, f64::max);
        if k < 4 {
            index_ok &= spread > 1e-3;
        } else {
            index_res = spread.max((&disp[0] - vec4(4.0 * FRAC_PI_2, 0.0, 0.0, 0.0)).amax());
        }
    }
    report.push(Check::flag("index_four", index_ok && index_res <= POINT_TOL, index_res));

    // Group law against pointwise composition, and the commutator of ζ with
    // its γ-conjugate is central with b = 2ω.
    let prod = zeta.compose(&zeta_conj)?;
    let law = max_gap(&pts, |p| act(&prod, p), |p| act(&zeta, &act(&zeta_conj, p)));
    let comm = prod.compose(&zeta.inverse())?.compose(&zeta_conj.inverse())?;
    let omega = zeta_beta.symplectic_form(zeta_conj.beta())?;
    let central = comm.beta().beta0().amax().max(comm.beta().beta1().amax());
    let comm_res = law.max(central).max((comm.b() - 2.0 * omega).abs());
    report.push(Check::within("omega_consistency", comm_res, POINT_TOL));

    report.diagnose(Check::flag("commutator_is_trivial", comm.b().abs() <= POINT_TOL, comm.b()));
    let corrected = |p: &DVector<f64>| vec4(p[0] + FRAC_PI_2, p[2], -p[1], p[3] + 2.0 * p[1] * p[2]);
    report.diagnose(Check::within("conjugate_gamma_with_v_shift_2xy", max_gap(&pts, conj(&gamma), corrected), POINT_TOL));
    let displayed_zeta = FnMap::new(4, |p| {
        let (c, s) = (p[0].cos(), p[0].sin());
        vec4(p[0], p[1] + c, p[2] + s, p[3] - (c * p[1] + s * p[2]))
    });
    let defect = conformal_defect(&profile, &displayed_zeta, 1.0, &pts[..pts.len().min(10)])?;
    report.diagnose(Check::within("displayed_zeta_isometry_defect", defect, 1e-6));
    report.commentary = Some(
        "ζ and γ⁻¹ζγ generate a Heisenberg group with central commutator 2ω ≠ 0, \
         so no chart turns both into translations; the conjugate of γ carries an extra v-shift 2xy."
            .into(),
    );
    Ok(report)
}

/// The real-type lattice built from `x² − r x + 1`, and the failure of its
/// homothetic variant to be discrete.
pub fn verify_real_lattice_example(r: u32, samples: usize, seed: u64) -> Result<Report> {
    if r < 3 {
        return Err(CwError::Precondition(format!("r = {r}: x² − rx + 1 needs r ≥ 3 for distinct real roots")));
    }
    let mut rng = sampling::rng(seed);
    let mut report = Report::new("real-lattice");
    let rf = r as f64;
    let disc = (rf * rf - 4.0).sqrt();
    let rho = (rf + disc) / 2.0;
    let rho_inv = (rf - disc) / 2.0;
    let l = rho.ln();
    report.push(Check::within("vieta", (rho * rho_inv - 1.0).abs().max((rho * rho - rf * rho + 1.0).abs() / rho), 1e-12));

    let profile = Arc::new(SymmetricProfile::scalar(2, l * l)?);
    let beta = BetaSolution::from_slices(profile.clone(), &[1.0, 1.0], &[l, -l])?;
    let beta_hat = beta.shift(1.0);
    let mut ts = vec![0.0, 0.3, 1.7];
    ts.extend((0..samples).map(|_| rng.random_range(-2.0..2.0)));
    let recurrence = ts
        .iter()
        .map(|&t| (beta_hat.evaluate(t + 1.0) - beta_hat.evaluate(t) * rf + beta.evaluate(t)).amax())
        .fold(0.0, f64::max);
    report.push(Check::within("recurrence", recurrence, 1e-9));
    let closed = ts
        .iter()
        .map(|&t| (beta.evaluate(t) - DVector::from_vec(vec![rho.powf(t), rho.powf(-t)])).amax() / rho.powf(t.abs()))
        .fold(0.0, f64::max);
    report.push(Check::within("beta_closed_form", closed, 1e-12));

    let stable = beta.shift(1.0).distance(&beta_hat)
        .max(beta_hat.shift(1.0).distance(&beta.neg().add(&beta_hat.scale(rf))?))
        .max(beta_hat.shift(-1.0).distance(&beta))
        .max(beta.shift(-1.0).distance(&beta.scale(rf).add(&beta_hat.neg())?));
    report.push(Check::within("shift_stability", stable, 1e-9));
    report.push(Check::within("lagrangian", beta.symplectic_form(&beta_hat)?.abs(), 1e-9));
    let det = beta.beta0()[0] * beta_hat.beta0()[1] - beta.beta0()[1] * beta_hat.beta0()[0];
    report.push(Check::flag("independent_initial_values", det.abs() > 1e-6, det));

    // φ = γ^k ∘ (α^l η^n η̂^m) against its closed form.
    let alpha1 = Homothety::heisenberg(profile.clone(), 1.0, BetaSolution::zero(profile.clone()))?;
    let eta = Homothety::heisenberg(profile.clone(), 0.0, beta.clone())?;
    let eta_hat = Homothety::heisenberg(profile.clone(), 0.0, beta_hat.clone())?;
    let gamma1 = Homothety::translation(profile.clone(), 1.0);
    let (mut general, mut all_minus_gap) = (0.0_f64, 0.0_f64);
    for _ in 0..samples.max(1) {
        let [k, li, m, ni] = [0; 4].map(|_| rng.random_range(-2..=2_i64));
        let phi = gamma1.pow(k).compose(&alpha1.pow(li).compose(&eta.pow(ni))?.compose(&eta_hat.pow(m))?)?;
        let p = sampling::uniform_vector(&mut rng, 4, 1.0);
        let (t, x, y, v) = (p[0], p[1], p[2], p[3]);
        let (nf, mf) = (ni as f64, m as f64);
        let (a1, a2) = (nf + mf * rho, nf + mf / rho);
        let (e1, e2) = (rho.powf(t), rho.powf(-t));
        let (gx, gy) = (a1 * x * e1 + 0.5 * a1 * a1 * e1 * e1, a2 * y * e2 + 0.5 * a2 * a2 * e2 * e2);
        let image = act(&phi, &p);
        // The ρ^{−t} mode has β̇ = −ln ρ · β, so its term enters with a plus.
        let expected = vec4(t + k as f64, x + e1 * a1, y + e2 * a2, v + li as f64 - l * (gx - gy));
        general = general.max((&image - &expected).amax() / expected.amax().max(1.0));
        let all_minus = vec4(expected[0], expected[1], expected[2], v + li as f64 - l * (gx + gy));
        all_minus_gap = all_minus_gap.max((&image - &all_minus).amax() / all_minus.amax().max(1.0));
    }
    report.push(Check::within("general_element", general, 1e-9));
    report.diagnose(Check::within("general_element_same_sign_terms", all_minus_gap, 1e-9));

    // γ̂ = (t + 1, ρx, ρ²v) and α_ρ: γ̂^{−k} α_ρ γ̂^k = α_{ρ^{1−2k}}.
    let gamma_hat = Homothety::euclidean(profile.clone(), 1.0, Sign::Plus, DMatrix::identity(2, 2), l)?;
    let alpha_rho = Homothety::heisenberg(profile.clone(), rho, BetaSolution::zero(profile.clone()))?;
    let (mut b_err, mut min_dist) = (0.0_f64, f64::INFINITY);
    let mut last_orbit = f64::INFINITY;
    for k in 1..=30 {
        let g = gamma_hat.pow(-k).compose(&alpha_rho)?.compose(&gamma_hat.pow(k))?;
        let expected = rho.powi(1 - 2 * k as i32);
        b_err = b_err.max((g.b() - expected).abs() / expected).max(g.beta().beta0().amax());
        min_dist = min_dist.min(g.distance_to_identity());
        last_orbit = g.apply(&Point::origin(2))?.norm();
    }
    report.push(Check::within("conjugate_b_parameter", b_err, 1e-9));
    report.push(Check::flag("not_discrete", min_dist < 1e-3, min_dist));
    report.push(Check::within("orbit_of_origin", last_orbit, 1e-3));
    Ok(report)
}

/// `f(t, y, z) = (t, e^t y, e^{2t}(z − y²/2))`.
fn slab_chart(p: &DVector<f64>) -> DVector<f64> {
    DVector::from_vec(vec![p[0], p[0].exp() * p[1], (2.0 * p[0]).exp() * (p[2] - p[1] * p[1] / 2.0)])
}

fn slab_chart_inv(q: &DVector<f64>) -> DVector<f64> {
    DVector::from_vec(vec![q[0], (-q[0]).exp() * q[1], (-2.0 * q[0]).exp() * (q[2] + q[1] * q[1] / 2.0)])
}

/// The three-dimensional real-type attempt on `(ℝ³, g_1)`.
pub fn verify_failed_3d_example(samples: usize, seed: u64) -> Result<Report> {
    let mut rng = sampling::rng(seed);
    let mut report = Report::new("failed-3d");
    let k = 1.0;
    let profile = Arc::new(SymmetricProfile::scalar(1, 1.0)?);
    let gamma = Homothety::euclidean(profile.clone(), 1.0, Sign::Plus, DMatrix::identity(1, 1), 1.0)?;
    let eta = Homothety::heisenberg(profile.clone(), 0.0, BetaSolution::from_slices(profile.clone(), &[k], &[k])?)?;
    let zeta = Homothety::heisenberg(profile.clone(), 0.0, BetaSolution::from_slices(profile.clone(), &[k], &[-k])?)?;
    let displayed_zeta = move |p: &DVector<f64>| {
        let e = (-p[0]).exp();
        DVector::from_vec(vec![p[0], p[1] + k * e, p[2] - k * e * (p[1] + 0.5 * k * e)])
    };
    let pts: Vec<DVector<f64>> = (0..samples).map(|_| sampling::uniform_vector(&mut rng, 3, 1.0)).collect();
    let conj = |phi: &Homothety| {
        let phi = phi.clone();
        move |p: &DVector<f64>| slab_chart_inv(&act(&phi, &slab_chart(p)))
    };

    let round = max_gap(&pts, |p| slab_chart_inv(&slab_chart(p)), |p| p.clone())
        .max(max_gap(&pts, |p| slab_chart(&slab_chart_inv(p)), |p| p.clone()));
    report.push(Check::within("chart_round_trip", round, POINT_TOL));
    report.push(Check::within(
        "conjugate_gamma",
        max_gap(&pts, conj(&gamma), |p| DVector::from_vec(vec![p[0] + 1.0, p[1], p[2]])),
        POINT_TOL,
    ));
    report.push(Check::within(
        "conjugate_eta",
        max_gap(&pts, conj(&eta), |p| DVector::from_vec(vec![p[0], p[1] + k, p[2]])),
        POINT_TOL,
    ));
    let zeta_conj = |p: &DVector<f64>| slab_chart_inv(&displayed_zeta(&slab_chart(p)));
    let zeta_target = |p: &DVector<f64>| DVector::from_vec(vec![p[0], p[1] + k * (-2.0 * p[0]).exp(), p[2]]);
    report.push(Check::within("conjugate_zeta", max_gap(&pts, zeta_conj, zeta_target), POINT_TOL));
    let at = zeta_conj(&DVector::from_vec(vec![1.0, 0.0, 0.0]));
    report.push(Check::within(
        "zeta_at_sample_point",
        (at - DVector::from_vec(vec![1.0, (-2.0_f64).exp(), 0.0])).amax(),
        POINT_TOL,
    ));

    // γ^{−i} ζ γ^i (0) = (0, k e^{−2i}, k² e^{−4i}/2).
    let orbit = orbit_obstruction_sequence(&gamma, &zeta, 20)?;
    let closed = orbit
        .sequence
        .iter()
        .enumerate()
        .map(|(i, y)| {
            let e = (-2.0 * (i + 1) as f64).exp();
            ((y.x[0] - k * e) / e).abs().max(y.t.abs()).max((y.v - 0.5 * k * k * e * e).abs() / (e * e))
        })
        .fold(0.0, f64::max);
    report.push(Check::within("decay_closed_form", closed, 1e-9));
    let rate_err = orbit.rate.map_or(f64::INFINITY, |r| (r / (-2.0_f64).exp() - 1.0).abs());
    report.push(Check::within("decay_rate", rate_err, 1e-6));
    report.push(Check::flag("orbit_collapses", orbit.converged, orbit.final_distance));

    let map = FnMap::new(3, displayed_zeta);
    let defect = conformal_defect(&profile, &map, 1.0, &pts[..pts.len().min(10)])?;
    report.diagnose(Check::within("displayed_zeta_isometry_defect", defect, 1e-6));
    let z_shift = max_gap(&pts, conj(&zeta), zeta_target);
    report.diagnose(Check::within("isometric_zeta_conjugate_residual", z_shift, POINT_TOL));
    Ok(report)
}

/// `f(t, x, v) = (‖x‖⁴ + v²)^{−1/2}`, defined off the axis `{x = 0, v = 0}`.
pub fn removed_axis_factor(p: &Point) -> Result<f64> {
    let q = p.x.norm_squared().powi(2) + p.v * p.v;
    if q <= 1e-300 {
        return Err(CwError::Domain("the axis x = 0, v = 0 is removed".into()));
    }
    Ok(q.powf(-0.5))
}

fn removed_axis_generators(n: usize) -> Result<Vec<Homothety>> {
    let profile = Arc::new(SymmetricProfile::scalar(n, 1.0)?);
    Ok(vec![Homothety::translation(profile.clone(), 1.0), Homothety::pure(profile, 2.0_f64.ln())])
}

/// The region `V` around the closure of the fundamental region.
pub fn removed_axis_neighbourhood(n: usize) -> Result<BoxRegion> {
    BoxRegion::annular_slab(n, (-1.0, 2.0), 4.0, 16.0, 0.5, 0.25)
}

/// The fundamental region `R`.
pub fn removed_axis_fundamental_region(n: usize) -> Result<BoxRegion> {
    BoxRegion::annular_slab(n, (0.0, 1.0), 2.0, 4.0, 1.0, 1.0)
}

/// The quotient of `ℝ^{n+2}` minus the `t`-axis by `⟨t + 1, h_{ln 2}⟩`:
/// finite self-adjacency and the invariant rescaling `f·g`.
pub fn verify_removed_fixed_points_example(samples: usize, seed: u64) -> Result<Report> {
    let n = 2;
    let mut report = Report::new("removed-fixed-points");
    let gens = removed_axis_generators(n)?;
    let expected: BTreeSet<Vec<i64>> = (-2..=2).flat_map(|i| (-2..=2).map(move |j| vec![i, j])).collect();
    let v_set = self_adjacency(&removed_axis_neighbourhood(n)?, &gens, -4..=4)?;
    report.push(Check::flag("self_adjacency_neighbourhood", v_set == expected, v_set.len() as f64));
    let r_set = self_adjacency(&removed_axis_fundamental_region(n)?, &gens, -4..=4)?;
    report.push(Check::flag("self_adjacency_fundamental", r_set == BTreeSet::from([vec![0, 0]]), r_set.len() as f64));
    let symmetric = v_set.iter().all(|e| v_set.contains(&e.iter().map(|i| -i).collect::<Vec<_>>()));
    report.push(Check::flag("adjacency_symmetric", symmetric, 0.0));
    let inessential = verify_inessential_rescale_u(samples, seed)?;
    report.checks.extend(inessential.checks);
    report.commentary = Some(
        "Scope: finite self-adjacency of the stated regions and invariance of f·g under E(1) × C(S) × ℝ on U. \
         Nothing here decides whether conformal transformations of the quotient are essential."
            .into(),
    );
    Ok(report)
}

/// `φ*(f g) = f g` on `U` for random `φ ∈ E(1) × C_{O(n)}(S) × ℝ`.
pub fn verify_inessential_rescale_u(samples: usize, seed: u64) -> Result<Report> {
    let mut rng = sampling::rng(seed);
    let mut report = Report::new("inessential-rescale");

    let plane = Arc::new(SymmetricProfile::scalar(2, 1.0)?);
    let h = Homothety::pure(plane, 2.0_f64.ln());
    let p = Point::from_parts(0.0, &[1.0, 0.0], 1.0);
    let lhs = removed_axis_factor(&h.apply(&p)?)? * (2.0 * h.s()).exp();
    report.push(Check::within("factor_at_sample_point", (lhs - removed_axis_factor(&p)?).abs(), 1e-12));

    let mut worst = 0.0_f64;
    let mut shift = 0.0_f64;
    for _ in 0..samples {
        let n = rng.random_range(1..=3);
        let profile = if rng.random_bool(0.5) {
            Arc::new(SymmetricProfile::scalar(n, rng.random_range(-2.0..2.0))?)
        } else {
            sampling::random_profile(&mut rng, n, 2.0)
        };
        let a = sampling::random_centraliser_element(&mut rng, &profile);
        let eps = sampling::random_sign(&mut rng);
        let phi = Homothety::euclidean(
            profile.clone(),
            rng.random_range(-2.0..2.0),
            eps,
            a,
            rng.random_range(-1.0..1.0),
        )?;
        let mut pt = sampling::random_point(&mut rng, n, 1.5);
        while pt.x.norm_squared().powi(2) + pt.v * pt.v < 1e-2 {
            pt = sampling::random_point(&mut rng, n, 1.5);
        }
        let target = |q: &DVector<f64>| {
            let qp = Point::from_vector(q)?;
            Ok(metric_at(&profile, &qp)?.scale(removed_axis_factor(&qp)?))
        };
        let pulled = pullback_metric(&phi, &target, &pt.to_vector())?;
        let own = target(&pt.to_vector())?;
        worst = worst.max(pulled.max_diff(&own) / own.max_abs().max(1.0));
        let tr = Homothety::translation(profile.clone(), rng.random_range(-5.0..5.0));
        shift = shift.max((removed_axis_factor(&tr.apply(&pt)?)? - removed_axis_factor(&pt)?).abs());
    }
    report.push(Check::within("rescaled_metric_invariant", worst, 1e-8));
    report.push(Check::within("translation_invariant", shift, 1e-12));
    let guard = removed_axis_factor(&Point::from_parts(0.7, &[0.0, 0.0], 0.0));
    report.push(Check::flag("axis_excluded", matches!(guard, Err(CwError::Domain(_))), 0.0));
    let near = removed_axis_factor(&Point::from_parts(0.0, &[1e-4, 0.0], 1e-8))?;
    report.push(Check::flag("blows_up_near_axis", near > 1e7, near));
    Ok(report)
}
