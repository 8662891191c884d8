//! Fit 8-control cubic B-splines to Tusimple-style row annotations and
//! check how closely they reproduce the labels.

use lanespline::dataset::{build_ground_truth, Frame, ImageSize, LaneAnnotation};
use lanespline::fit::{fit_bspline_least_squares, FitConfig, Parameterization};
use lanespline::synth::{rng, tusimple_rows, SineLane};
use lanespline::LaneCurve;

fn main() -> lanespline::Result<()> {
    let rows = tusimple_rows();
    let mut r = rng(0);
    let lanes: Vec<_> = (0..4).map(|_| SineLane::random(&mut r)).collect();

    println!("{:<5} {:>12} {:>12}", "lane", "chord rms", "uniform rms");
    for (i, lane) in lanes.iter().enumerate() {
        let pts = lane.points(&rows)?;
        let chord = fit_bspline_least_squares(&pts, &FitConfig::default())?;
        let uniform = fit_bspline_least_squares(
            &pts,
            &FitConfig {
                parameterization: Parameterization::Uniform,
                ..Default::default()
            },
        )?;
        println!("{i:<5} {:>12.4} {:>12.4}", chord.rms_error, uniform.rms_error);
    }

    // whole frames: raw points stay in file order, the fitted curve starts at the bottom
    let frame = Frame {
        image_size: ImageSize {
            width: 1280,
            height: 720,
        },
        lanes: lanes
            .iter()
            .map(|l| LaneAnnotation::new(l.points(&rows).unwrap(), "clips/0/20.jpg"))
            .collect(),
        scenario_tag: Some("synthetic".into()),
    };
    let gt = build_ground_truth(&frame, &FitConfig::default())?;
    let first = &gt.lanes[0];
    let curve = first.fitted.as_ref().unwrap();
    println!(
        "\nlane 0: raw starts at y = {}, curve starts at y = {:.1}, rms {:.4}",
        first.raw_points.first().y,
        curve.start_point().y,
        first.fit_rms.unwrap()
    );
    println!("{}", serde_json::to_string(curve).unwrap());
    Ok(())
}
