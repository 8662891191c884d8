//! The loss terms on a few hand-made predictions, including one that
//! collapses to a single point and one that sprouts a long stray tail.

use lanespline::loss::regression_loss_sample_gradient;
use lanespline::{
    focal_cls_loss, length_loss, regression_loss, start_point_loss, symmetric_distance, total_loss,
    ExtendedRadius, LossTerms, LossWeights, Point2, Polyline,
};

fn vertical(x: f64, y0: f64, y1: f64, n: usize) -> Polyline {
    Polyline::new(
        (0..n)
            .map(|k| Point2::new(x, y0 + (y1 - y0) * k as f64 / (n - 1) as f64))
            .collect(),
    )
    .unwrap()
}

fn main() -> lanespline::Result<()> {
    let r = ExtendedRadius::default();
    let w = LossWeights::default();
    let gt = vertical(300.0, 590.0, 250.0, 300);

    let mut tail = vertical(302.0, 590.0, 250.0, 250).into_points();
    tail.extend((1..=50).map(|k| Point2::new(302.0 + 4.0 * k as f64, 250.0 - 2.0 * k as f64)));

    let cases = [
        ("close", vertical(303.0, 588.0, 252.0, 300)),
        ("short", vertical(300.0, 590.0, 420.0, 300)),
        ("collapsed", Polyline::new(vec![Point2::new(300.0, 420.0); 300])?),
        ("stray tail", Polyline::new(tail)?),
    ];
    println!(
        "{:<11} {:>8} {:>8} {:>8} {:>9} {:>8}",
        "pred", "pred->gt", "L_reg", "L_len", "L_start", "total"
    );
    for (name, pred) in &cases {
        let parts = LossTerms {
            reg: regression_loss(&gt, pred, r),
            length: length_loss(&gt, pred)?,
            start: start_point_loss(gt.first(), pred.first()),
            cls: focal_cls_loss(0.8, true, 0.25, 2.0)?,
        };
        let b = total_loss(parts, &w)?;
        println!(
            "{name:<11} {:>8.3} {:>8.4} {:>8.4} {:>9.3} {:>8.4}",
            symmetric_distance(&gt, pred).d_b_to_a,
            b.l_reg,
            b.l_length,
            b.l_start,
            b.l_total
        );
    }

    // the gradient pushes each sample of a shifted prediction back towards x = 300
    let g = regression_loss_sample_gradient(&gt, &cases[0].1, r)?;
    println!("\ngradient at sample 150 of the close prediction: {:?}", g[150]);
    Ok(())
}
