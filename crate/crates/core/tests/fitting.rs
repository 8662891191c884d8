use lanespline::fit::{
    fit_bspline_at_parameters, fit_bspline_least_squares, fit_by_gradient_descent, locality_experiment,
    parameterize, AlignedHalf, DescentConfig, FitConfig, LocalityScenario, Parameterization,
};
use lanespline::synth::{random_lane_bspline, rng, tusimple_rows, SineLane};
use lanespline::{BSplineCurve, Curve, LaneCurve, LossWeights, Point2, Polyline};
use proptest::prelude::*;

fn sse(c: &BSplineCurve, pts: &[Point2], params: &[f64]) -> f64 {
    pts.iter()
        .zip(params)
        .map(|(q, &u)| c.evaluate(u).unwrap().distance_squared(*q))
        .sum()
}

fn uniform() -> FitConfig {
    FitConfig {
        parameterization: Parameterization::Uniform,
        ..Default::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn least_squares_is_optimal(seed in 0u64..100_000, which in 0usize..8, axis: bool, delta in prop_oneof![Just(-0.1), Just(0.1)]) {
        let lane = SineLane::random(&mut rng(seed));
        let pts = lane.points(&tusimple_rows()).unwrap();
        let rep = fit_bspline_least_squares(&pts, &FitConfig::default()).unwrap();
        let params = parameterize(pts.points(), Parameterization::ChordLength).unwrap();
        let base = sse(&rep.curve, pts.points(), &params);
        let mut cp = rep.curve.control_points().to_vec();
        if axis { cp[which].x += delta } else { cp[which].y += delta }
        let moved = rep.curve.with_control_points(cp).unwrap();
        prop_assert!(sse(&moved, pts.points(), &params) >= base);
    }

    #[test]
    fn sinusoid_lanes_fit_within_a_pixel(seed in 0u64..100_000) {
        let lane = SineLane::random(&mut rng(seed));
        let pts = lane.points(&tusimple_rows()).unwrap();
        let rep = fit_bspline_least_squares(&pts, &FitConfig::default()).unwrap();
        prop_assert!(rep.rms_error < 1.0, "rms {}", rep.rms_error);
        prop_assert!(rep.max_error >= rep.rms_error);
        prop_assert_eq!(rep.residuals.len(), 48);
    }

    #[test]
    fn uniform_round_trip(seed in 0u64..100_000, m in 8usize..200) {
        let c = random_lane_bspline(&mut rng(seed), 8, 1640.0, 590.0).unwrap();
        let pts = c.sample(m).unwrap();
        let rep = fit_bspline_least_squares(&pts, &uniform()).unwrap();
        for (a, b) in rep.curve.control_points().iter().zip(c.control_points()) {
            prop_assert!(a.distance(*b) < 1e-6);
        }
        prop_assert!(rep.rms_error < 1e-6);
    }

    // samples taken at the chord-length parameters of some other point set
    #[test]
    fn exact_at_given_parameters(seed in 0u64..100_000) {
        let mut r = rng(seed);
        let c = random_lane_bspline(&mut r, 8, 1640.0, 590.0).unwrap();
        let labels = SineLane::random(&mut r).points(&tusimple_rows()).unwrap();
        let t = parameterize(labels.points(), Parameterization::ChordLength).unwrap();
        let pts: Vec<Point2> = t.iter().map(|&u| c.evaluate(u).unwrap()).collect();
        let rep = fit_bspline_at_parameters(&pts, &t, 8, 3).unwrap();
        prop_assert!(rep.rms_error < 1e-6);
    }

    #[test]
    fn chord_parameters_are_monotone(seed in 0u64..100_000) {
        let pts = SineLane::random(&mut rng(seed)).points(&tusimple_rows()).unwrap();
        let t = parameterize(pts.points(), Parameterization::ChordLength).unwrap();
        prop_assert_eq!(t[0], 0.0);
        prop_assert_eq!(t[t.len() - 1], 1.0);
        prop_assert!(t.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn fit_rejects_bad_input() {
    let few = Polyline::from_xy(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]).unwrap();
    assert!(fit_bspline_least_squares(&few, &FitConfig::default()).is_err());
    let same = Polyline::new(vec![Point2::new(5.0, 5.0); 20]).unwrap();
    assert!(fit_bspline_least_squares(&same, &FitConfig::default()).is_err());
    // eight points bunched into one knot span cannot pin eight control points
    let bunched: Vec<Point2> = (0..8).map(|k| Point2::new(k as f64, 0.0)).collect();
    let t: Vec<f64> = (0..8).map(|k| 0.01 * k as f64).collect();
    assert!(fit_bspline_at_parameters(&bunched, &t, 8, 3).is_err());
    let bad = FitConfig {
        n_control: 3,
        ..Default::default()
    };
    let pts = SineLane::random(&mut rng(1)).points(&tusimple_rows()).unwrap();
    assert!(fit_bspline_least_squares(&pts, &bad).is_err());
}

#[test]
fn descent_reduces_loss_on_shifted_lane() {
    let target_curve = random_lane_bspline(&mut rng(3), 8, 1640.0, 590.0).unwrap();
    let target = target_curve.sample(300).unwrap();
    let init = target_curve
        .with_control_points(
            target_curve
                .control_points()
                .iter()
                .map(|p| Point2::new(p.x + 6.0, p.y))
                .collect(),
        )
        .unwrap();
    let cfg = DescentConfig {
        step_size: 5.0,
        steps: 50,
        ..Default::default()
    };
    let tr = fit_by_gradient_descent(&Curve::BSpline(init), &target, &cfg).unwrap();
    let l = tr.losses();
    assert_eq!(l.len(), 51);
    assert!(l[50] < 0.5 * l[0], "{} -> {}", l[0], l[50]);
}

#[test]
fn descent_validates_config() {
    let c = random_lane_bspline(&mut rng(0), 8, 1640.0, 590.0).unwrap();
    let target = c.sample(300).unwrap();
    for cfg in [
        DescentConfig {
            step_size: 0.0,
            ..Default::default()
        },
        DescentConfig {
            step_size: f64::NAN,
            ..Default::default()
        },
        DescentConfig {
            n_dis: 1,
            ..Default::default()
        },
        DescentConfig {
            weights: LossWeights {
                lambda_reg: -1.0,
                ..LossWeights::regression_only()
            },
            ..Default::default()
        },
    ] {
        assert!(fit_by_gradient_descent(&Curve::BSpline(c.clone()), &target, &cfg).is_err());
    }
}

#[test]
fn locality_ordering_both_halves() {
    for aligned in [AlignedHalf::Lower, AlignedHalf::Upper] {
        let r = locality_experiment(&LocalityScenario {
            aligned,
            ..Default::default()
        })
        .unwrap();
        assert!(r.locality_holds);
        assert!(r.bspline.aligned_displacement < r.bezier.aligned_displacement);
        assert!(r.bspline.aligned_displacement < r.polynomial.aligned_displacement);
        for rep in [&r.polynomial, &r.bezier, &r.bspline] {
            assert!(rep.loss_reduction > 0.0, "{:?} {}", rep.kind, rep.loss_reduction);
            assert!(rep.offset_displacement > 0.0);
        }
        assert!(r.aligned_gradient_norm < 1e-12 * r.offset_gradient_norm.max(1.0));
    }
}

#[test]
fn locality_ratio_does_not_depend_on_step() {
    let at = |step_size| {
        locality_experiment(&LocalityScenario {
            step_size,
            ..Default::default()
        })
        .unwrap()
    };
    let (a, b) = (at(0.01), at(0.1));
    assert!((a.ratio_bspline_bezier / b.ratio_bspline_bezier - 1.0).abs() < 1e-6);
    assert!((a.ratio_bspline_polynomial / b.ratio_bspline_polynomial - 1.0).abs() < 1e-6);
}

#[test]
fn locality_json_round_trip() {
    let r = locality_experiment(&LocalityScenario::default()).unwrap();
    let back: lanespline::fit::LocalityReport =
        serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
}
