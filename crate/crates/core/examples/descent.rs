//! Gradient descent on control points: pull a laterally shifted lane back
//! onto its target with the full loss suite.

use lanespline::fit::{fit_by_gradient_descent, DescentConfig};
use lanespline::synth::{random_lane_bspline, rng};
use lanespline::{Curve, LaneCurve, LossWeights, Point2};

fn main() -> lanespline::Result<()> {
    let target_curve = random_lane_bspline(&mut rng(4), 8, 1640.0, 590.0)?;
    let target = target_curve.sample(300)?;
    let init = target_curve.with_control_points(
        target_curve
            .control_points()
            .iter()
            .map(|p| Point2::new(p.x + 8.0, p.y - 5.0))
            .collect(),
    )?;
    let cfg = DescentConfig {
        step_size: 2.0,
        steps: 200,
        weights: LossWeights::new(1.0, 1.0, 0.001, 0.0)?,
        ..Default::default()
    };
    let tr = fit_by_gradient_descent(&Curve::BSpline(init), &target, &cfg)?;
    for s in tr.steps.iter().step_by(25) {
        println!(
            "step {:>3}  total {:.5}  reg {:.5}  start {:.3}",
            s.step, s.loss.l_total, s.loss.l_reg, s.loss.l_start
        );
    }
    let end = tr.last().curve.start_point();
    println!(
        "start point {:?} -> {:?} (target {:?})",
        tr.initial().curve.start_point(),
        end,
        target_curve.start_point()
    );
    Ok(())
}
