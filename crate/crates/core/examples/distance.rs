//! Segment-based curve distance. A lane that overshoots the ground truth
//! scores much closer than one that runs parallel to it, while pairing
//! points by parameter rates both the same.

use lanespline::distance::symmetric_distance_with_radius;
use lanespline::{normalize_distance, ExtendedRadius, Point2, Polyline, N_DIS};

fn line(a: Point2, b: Point2) -> Polyline {
    Polyline::new(
        (0..N_DIS)
            .map(|k| a.lerp(b, k as f64 / (N_DIS - 1) as f64))
            .collect(),
    )
    .unwrap()
}

fn matched(p: &Polyline, q: &Polyline) -> f64 {
    p.points()
        .iter()
        .zip(q.points())
        .map(|(a, b)| a.distance(*b))
        .sum::<f64>()
        / p.len() as f64
}

fn main() -> lanespline::Result<()> {
    let r = ExtendedRadius::new(9.0)?;
    let gt = line(Point2::new(0.0, 0.0), Point2::new(100.0, 0.0));
    let longer = line(Point2::new(0.0, 0.0), Point2::new(120.0, 0.0));
    let shifted = line(Point2::new(0.0, 10.0), Point2::new(100.0, 10.0));

    println!(
        "{:<10} {:>10} {:>10} {:>10} {:>10}",
        "pred", "matched", "gt->pred", "pred->gt", "symmetric"
    );
    for (name, pred) in [("longer", &longer), ("shifted", &shifted)] {
        let d = symmetric_distance_with_radius(&gt, pred, r);
        println!(
            "{name:<10} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            matched(&gt, pred),
            d.d_a_to_b,
            d.d_b_to_a,
            d.d_symmetric
        );
    }

    println!("\nnormalized score (r = 9)");
    for d in [0.0, 4.5, 9.0, 18.0, 36.0, 1000.0] {
        println!("  d = {d:>6}  ->  {:+.4}", normalize_distance(d, r)?);
    }
    Ok(())
}
