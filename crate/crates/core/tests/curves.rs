mod common;

use lanespline::{
    basis, make_clamped_uniform_knots, BSplineCurve, BezierCurve, LaneCurve, Point2, PolynomialCurve,
};
use proptest::prelude::*;

fn ctrl_strategy(min: usize, max: usize) -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::vec((-500.0..500.0f64, -500.0..500.0f64), min..=max)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point2::new(x, y)).collect())
}

fn curve_strategy() -> impl Strategy<Value = BSplineCurve> {
    (1usize..=5)
        .prop_flat_map(|p| (Just(p), ctrl_strategy(p + 1, 20)))
        .prop_map(|(p, c)| BSplineCurve::new(p, c).unwrap())
}

#[test]
fn knot_layout_for_eight_cubic() {
    let k = make_clamped_uniform_knots(7, 3).unwrap();
    assert_eq!(
        k.values(),
        &[0.0, 0.0, 0.0, 0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.0, 1.0, 1.0]
    );
    assert_eq!(k.values(), common::knots(7, 3).as_slice());
}

#[test]
fn invalid_construction() {
    assert!(make_clamped_uniform_knots(2, 3).is_err());
    assert!(make_clamped_uniform_knots(3, 0).is_err());
    assert!(BSplineCurve::new(3, vec![Point2::ZERO; 3]).is_err());
    assert!(BSplineCurve::new(1, vec![Point2::new(f64::NAN, 0.0), Point2::ZERO]).is_err());
    let c = BSplineCurve::new(1, vec![Point2::ZERO, Point2::new(1.0, 0.0)]).unwrap();
    assert!(c.evaluate(1.0 + 1e-12).is_err());
    assert!(c.evaluate(-1e-12).is_err());
}

#[test]
fn last_basis_closes_at_one() {
    for (n, p) in [(7, 3), (3, 3), (10, 1), (19, 5)] {
        let k = make_clamped_uniform_knots(n, p).unwrap();
        assert_eq!(basis(n, p, 1.0, &k).unwrap(), 1.0);
        for i in 0..n {
            assert_eq!(basis(i, p, 1.0, &k).unwrap(), 0.0);
        }
        assert_eq!(basis(0, p, 0.0, &k).unwrap(), 1.0);
        assert!(basis(n + 1, p, 0.5, &k).is_err());
    }
}

proptest! {
    #[test]
    fn partition_of_unity_and_support(n in 1usize..20, p_raw in 1usize..=5, u in 0.0..=1.0f64) {
        let p = p_raw.min(n);
        let k = make_clamped_uniform_knots(n, p).unwrap();
        let t = k.values();
        let mut sum = 0.0;
        for i in 0..=n {
            let b = basis(i, p, u, &k).unwrap();
            prop_assert!(b >= 0.0);
            let inside = t[i] <= u && (u < t[i + p + 1] || (u == 1.0 && t[i + p + 1] == 1.0));
            if !inside {
                prop_assert_eq!(b, 0.0);
            }
            sum += b;
        }
        prop_assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matches_de_boor(c in curve_strategy(), u in 0.0..=1.0f64) {
        let got = c.evaluate(u).unwrap();
        let want = common::de_boor(c.control_points(), c.degree(), u);
        prop_assert!(got.distance(want) < 1e-9);
    }

    #[test]
    fn endpoints_interpolate(c in curve_strategy()) {
        let pts = c.control_points();
        prop_assert_eq!(c.evaluate(0.0).unwrap(), pts[0]);
        prop_assert_eq!(c.evaluate(1.0).unwrap(), pts[pts.len() - 1]);
    }

    #[test]
    fn convex_hull_of_active_points(c in curve_strategy(), u in 0.0..=1.0f64) {
        let (first, w) = c.basis_row(u).unwrap();
        let active = &c.control_points()[first..first + w.len()];
        let q = c.evaluate(u).unwrap();
        let (lo_x, hi_x) = active.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |a, p| (a.0.min(p.x), a.1.max(p.x)));
        let (lo_y, hi_y) = active.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |a, p| (a.0.min(p.y), a.1.max(p.y)));
        let eps = 1e-9;
        prop_assert!(q.x >= lo_x - eps && q.x <= hi_x + eps);
        prop_assert!(q.y >= lo_y - eps && q.y <= hi_y + eps);
    }

    #[test]
    fn affine_invariance(c in curve_strategy(), u in 0.0..=1.0f64, a in -2.0..2.0f64, b in -2.0..2.0f64, tx in -100.0..100.0f64, ty in -100.0..100.0f64) {
        let f = |p: Point2| Point2::new(a * p.x + b * p.y + tx, -b * p.x + a * p.y + ty);
        let moved = c.with_control_points(c.control_points().iter().map(|&p| f(p)).collect()).unwrap();
        let lhs = moved.evaluate(u).unwrap();
        let rhs = f(c.evaluate(u).unwrap());
        prop_assert!(lhs.distance(rhs) < 1e-8);
    }

    // Moving P_i leaves every point with u outside [t_i, t_{i+p+1}) bit-identical.
    #[test]
    fn local_edit_is_local(c in curve_strategy(), pick in 0usize..20, dx in -50.0..50.0f64, u in 0.0..=1.0f64) {
        let n = c.control_points().len() - 1;
        let i = pick % (n + 1);
        let mut pts = c.control_points().to_vec();
        pts[i].x += dx;
        let edited = c.with_control_points(pts).unwrap();
        let t = c.knots().values();
        let p = c.degree();
        let covered = t[i] <= u && (u < t[i + p + 1] || (u == 1.0 && i == n));
        if !covered {
            prop_assert_eq!(edited.evaluate(u).unwrap(), c.evaluate(u).unwrap());
        }
    }

    #[test]
    fn bezier_matches_de_casteljau(c in ctrl_strategy(2, 8), u in 0.0..=1.0f64) {
        let b = BezierCurve::new(c.clone()).unwrap();
        prop_assert!(b.evaluate(u).unwrap().distance(common::de_casteljau(&c, u)) < 1e-9);
    }

    #[test]
    fn clamped_uniform_with_no_interior_is_bezier(c in ctrl_strategy(3, 6), u in 0.0..=1.0f64) {
        let k = c.len() - 1;
        let s = BSplineCurve::new(k, c.clone()).unwrap();
        let b = BezierCurve::new(c).unwrap();
        prop_assert!(s.evaluate(u).unwrap().distance(b.evaluate(u).unwrap()) < 1e-12 * 1000.0);
    }

    #[test]
    fn sampling_is_ordered_and_hits_endpoints(c in curve_strategy(), n in 2usize..400) {
        let s = c.sample(n).unwrap();
        prop_assert_eq!(s.len(), n);
        prop_assert_eq!(s.first(), c.evaluate(0.0).unwrap());
        prop_assert_eq!(s.last(), c.evaluate(1.0).unwrap());
    }

    #[test]
    fn polynomial_normalized_round_trip(a in prop::collection::vec(-5.0..5.0f64, 1..5), y0 in 0.0..300.0f64, len in 10.0..400.0f64, t in 0.0..=1.0f64) {
        let p = PolynomialCurve::from_normalized(&a, y0, y0 + len).unwrap();
        let back = p.normalized_coefficients();
        for (x, y) in a.iter().zip(&back) {
            prop_assert!((x - y).abs() < 1e-6 * (1.0 + x.abs()));
        }
        let q = p.evaluate(t).unwrap();
        let s = (q.y - y0) / len;
        let want: f64 = a.iter().enumerate().map(|(j, c)| c * s.powi(j as i32)).sum();
        prop_assert!((q.x - want).abs() < 1e-6 * (1.0 + want.abs()));
    }
}

#[test]
fn sample_rejects_single_point() {
    let c = BSplineCurve::new(1, vec![Point2::ZERO, Point2::new(1.0, 1.0)]).unwrap();
    assert!(c.sample(1).is_err());
    assert!(c.sample(0).is_err());
}
