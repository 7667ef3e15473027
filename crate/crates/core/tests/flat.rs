mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use cahen_wallach::curvature::{conformal_change_at, metric_at};
use cahen_wallach::flat::{
    conjugated_inversion, conjugated_translation, finite_difference_jacobian, flat_model_report, flatness_blowup_demo,
    g_minus, g_plus, geodesic_witness_residual, imaginary_rescaling_jet, minkowski_metric, pullback_metric,
    real_rescaling_jet, FnMap, ImaginaryLocalMap, MinkowskiMap, SmoothMap,
};
use cahen_wallach::{CwError, Homothety, Point, Sign};
use common::fd_jacobian;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn v(c: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(c)
}

/// `Jᵀ G J` with a finite-difference `J`.
fn fd_pullback(f: impl Fn(&DVector<f64>) -> DVector<f64>, g: &DMatrix<f64>, p: &DVector<f64>) -> DMatrix<f64> {
    let j = fd_jacobian(f, p, 1e-6);
    j.transpose() * g * j
}

#[test]
fn minkowski_origin() {
    let q = MinkowskiMap { n: 2 }.forward(&v(&[0.0, 0.0, 0.0, 0.0])).unwrap();
    assert_eq!(q, v(&[0.5, 0.0, 0.0, 0.0]));
}

#[test]
fn minkowski_inverse_needs_half_space() {
    let m = MinkowskiMap { n: 1 };
    assert!(matches!(m.inverse_eval(&v(&[0.0, 1.0, 1.0])), Some(Err(CwError::Domain(_)))));
    assert!(matches!(m.inverse_eval(&v(&[-1.0, 1.0, 1.0])), Some(Err(CwError::Domain(_)))));
}

#[test]
fn strip_origin_and_boundary() {
    let m = ImaginaryLocalMap { n: 2 };
    assert_eq!(m.forward(&v(&[0.0, 0.0, 0.0, 0.0])).unwrap(), v(&[0.0, 0.0, 0.0, 0.0]));
    assert!(matches!(m.forward(&v(&[FRAC_PI_2, 0.0, 0.0, 0.0])), Err(CwError::Domain(_))));
    assert!(matches!(m.forward(&v(&[-2.0, 0.0, 0.0, 0.0])), Err(CwError::Domain(_))));
    let near = m.forward(&v(&[FRAC_PI_2 - 1e-8, 1.0, 0.0, 0.0])).unwrap();
    assert!(near.norm() > 1e7);
}

#[test]
fn identity_pullback() {
    let id = FnMap::new(3, |p| p.clone());
    let target = |q: &DVector<f64>| metric_at(&g_plus(1), &Point::from_vector(q)?);
    let p = v(&[0.3, 0.7, -0.2]);
    let pulled = pullback_metric(&id, &target, &p).unwrap();
    assert!(pulled.max_diff(&target(&p).unwrap()) <= 1e-9);
}

#[test]
fn pullback_of_minkowski_example() {
    let m = MinkowskiMap { n: 2 };
    let p = v(&[0.4, 1.0, -0.5, 2.0]);
    let pulled = pullback_metric(&m, &minkowski_metric, &p).unwrap();
    let expected = metric_at(&g_plus(2), &Point::from_vector(&p).unwrap()).unwrap().scale((0.8_f64).exp());
    assert!(pulled.max_diff(&expected) <= 1e-9);
}

#[test]
fn blowup_examples() {
    let r = flatness_blowup_demo(Sign::Minus, 0.0, 3.0).unwrap();
    assert!((r.blowup_t.unwrap() - FRAC_PI_2).abs() <= 1e-3);
    let r = flatness_blowup_demo(Sign::Minus, 1.0, 3.0).unwrap();
    assert!((r.blowup_t.unwrap() - FRAC_PI_4).abs() <= 1e-3);
    let r = flatness_blowup_demo(Sign::Minus, 0.0, 1.0).unwrap();
    assert!(r.blowup_t.is_none());
    let r = flatness_blowup_demo(Sign::Plus, 0.0, 3.0).unwrap();
    assert!(r.ricci_flat_residual.unwrap() <= 1e-10);
}

#[test]
fn geodesic_witness() {
    for k in 0..=54 {
        let s = -0.4 + 0.1 * k as f64;
        assert!(geodesic_witness_residual(2, s).unwrap() <= 1e-6);
    }
    // the curve leaves every compact set as s → −1/2
    assert!((0.5 * (2.0 * (-0.5 + 1e-12) + 1.0_f64).ln()).abs() > 10.0);
    assert!(geodesic_witness_residual(2, -0.5).is_err());
}

#[test]
fn conjugated_translation_matches_time_shift() {
    let n = 2;
    let m = MinkowskiMap { n };
    let c = 0.35;
    let shift = Homothety::translation(g_plus(n), c);
    for p in [[0.1, 0.3, -1.0, 2.0], [-1.2, 0.0, 0.5, -0.7]] {
        let p = v(&p);
        let lhs = m.forward(&shift.to_vector_map(&p)).unwrap();
        let rhs = conjugated_translation(n, c).forward(&m.forward(&p).unwrap()).unwrap();
        assert!((lhs - rhs).amax() <= 1e-9);
    }
}

#[test]
fn inversion_is_conformal() {
    let n = 2;
    let eta = conjugated_inversion(n);
    for q in [[0.7, 0.2, -0.3, 1.0], [2.5, -1.0, 0.4, -0.6]] {
        let q = v(&q);
        let pulled = fd_pullback(|x| eta.eval(x), minkowski_metric(&eta.eval(&q)).unwrap().matrix(), &q);
        let expected = minkowski_metric(&q).unwrap().matrix() / (4.0 * q[0] * q[0]);
        assert!((pulled - expected).amax() <= 1e-8);
    }
    assert!(eta.forward(&v(&[0.0, 1.0, 1.0, 1.0])).is_err());
}

#[test]
fn flat_report_passes() {
    let r = flat_model_report(2, 30, 42).unwrap();
    assert!(r.passed(), "{:?}", r.failures());
}

trait VectorMap {
    fn to_vector_map(&self, p: &DVector<f64>) -> DVector<f64>;
}

impl VectorMap for Homothety {
    fn to_vector_map(&self, p: &DVector<f64>) -> DVector<f64> {
        self.apply(&Point::from_vector(p).unwrap()).unwrap().to_vector()
    }
}

fn arb_coords(n: usize, t_half: f64) -> impl Strategy<Value = DVector<f64>> {
    (-t_half..t_half, prop::collection::vec(-2.0f64..2.0, n + 1)).prop_map(|(t, rest)| {
        let mut c = vec![t];
        c.extend(rest);
        DVector::from_vec(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn minkowski_pullback(p in arb_coords(2, 1.5)) {
        let m = MinkowskiMap { n: 2 };
        let pulled = pullback_metric(&m, &minkowski_metric, &p).unwrap();
        let expected = metric_at(&g_plus(2), &Point::from_vector(&p).unwrap()).unwrap().scale((2.0 * p[0]).exp());
        prop_assert!(pulled.max_diff(&expected) <= 1e-9 * expected.max_abs().max(1.0));
        let oracle = fd_pullback(|x| m.eval(x), minkowski_metric(&m.eval(&p)).unwrap().matrix(), &p);
        prop_assert!((oracle - expected.matrix()).amax() <= 1e-5 * expected.max_abs().max(1.0));
    }

    #[test]
    fn minkowski_round_trip(p in arb_coords(3, 2.0)) {
        let m = MinkowskiMap { n: 3 };
        let back = m.inverse_eval(&m.forward(&p).unwrap()).unwrap().unwrap();
        prop_assert!((back - &p).amax() <= 1e-10);
    }

    #[test]
    fn strip_pullback(p in arb_coords(2, 1.4)) {
        let m = ImaginaryLocalMap { n: 2 };
        let pulled = pullback_metric(&m, &minkowski_metric, &p).unwrap();
        let expected = metric_at(&g_minus(2), &Point::from_vector(&p).unwrap()).unwrap().scale(1.0 / p[0].cos().powi(2));
        prop_assert!(pulled.max_diff(&expected) <= 1e-9 * expected.max_abs().max(1.0));
        let back = m.inverse_eval(&m.forward(&p).unwrap()).unwrap().unwrap();
        prop_assert!((back - &p).amax() <= 1e-9);
    }

    #[test]
    fn analytic_and_fd_jacobians_agree(p in arb_coords(2, 1.2)) {
        for map in [&MinkowskiMap { n: 2 } as &dyn SmoothMap, &ImaginaryLocalMap { n: 2 }] {
            let an = map.analytic_jacobian(&p).unwrap();
            let fd = finite_difference_jacobian(map, &p, 1e-6);
            prop_assert!((an - fd).amax() <= 1e-5 * map.eval(&p).amax().max(1.0));
        }
    }

    #[test]
    fn rescaled_metrics_are_flat(p in arb_coords(2, 1.4)) {
        let pt = Point::from_vector(&p).unwrap();
        let real = conformal_change_at(&g_plus(2), &pt, &real_rescaling_jet(2, p[0])).unwrap();
        prop_assert!(real.riemann_hat.max_abs() <= 1e-7);
        let imag = conformal_change_at(&g_minus(2), &pt, &imaginary_rescaling_jet(2, p[0])).unwrap();
        prop_assert!(imag.riemann_hat.max_abs() <= 1e-7 * (1.0 / p[0].cos().powi(2)).max(1.0));
    }
}
