//! Build a lane as a cubic B-spline, sample it, and compare it with the
//! Bézier and polynomial forms of the same shape.

use lanespline::fit::{fit_bezier_at_parameters, parameterize, Parameterization};
use lanespline::{make_clamped_uniform_knots, BSplineCurve, LaneCurve, Point2, PolynomialCurve};

fn main() -> lanespline::Result<()> {
    // bottom of the image first
    let ctrl = vec![
        Point2::new(620.0, 590.0),
        Point2::new(640.0, 530.0),
        Point2::new(668.0, 470.0),
        Point2::new(700.0, 410.0),
        Point2::new(725.0, 360.0),
        Point2::new(742.0, 320.0),
        Point2::new(751.0, 290.0),
        Point2::new(755.0, 270.0),
    ];
    let lane = BSplineCurve::new(3, ctrl.clone())?;
    println!("knots {:?}", make_clamped_uniform_knots(7, 3)?.values());
    println!("start {:?}  end {:?}", lane.start_point(), lane.evaluate(1.0)?);

    let pts = lane.sample(9)?;
    for (k, p) in pts.points().iter().enumerate() {
        println!("  u = {:.3}  ({:8.3}, {:8.3})", k as f64 / 8.0, p.x, p.y);
    }

    // moving the last control point leaves the first 60% of the lane untouched
    let mut moved = ctrl.clone();
    moved[7].x += 40.0;
    let edited = lane.with_control_points(moved)?;
    let same = (0..=100)
        .map(|k| k as f64 / 100.0)
        .filter(|&u| edited.evaluate(u).unwrap() == lane.evaluate(u).unwrap())
        .count();
    println!("{same} of 101 sample points unchanged after editing P_7");

    let dense = lane.sample(200)?;
    let t = parameterize(dense.points(), Parameterization::Uniform)?;
    let bez = fit_bezier_at_parameters(dense.points(), &t, 3)?;
    let poly = PolynomialCurve::fit_least_squares(dense.points(), 3)?;
    println!("cubic Bézier fit start {:?}", bez.start_point());
    println!("cubic x(y) fit at y = 400: x = {:.3}", poly.x_at(400.0));
    Ok(())
}
