//! CULane-style IoU matching and Tusimple-style point accuracy on small
//! hand-made frames.

use lanespline::metrics::{
    iou_matrix, lane_iou, match_and_score, tusimple_accuracy, Canvas, IouConfig, TusimpleConfig,
};
use lanespline::Polyline;

fn v(x: f64) -> Polyline {
    Polyline::from_xy(&[(x, 590.0), (x + 40.0, 250.0)]).unwrap()
}

fn main() -> lanespline::Result<()> {
    let cfg = IouConfig::for_canvas(1640, 590);
    let gts = [v(300.0), v(700.0), v(1100.0)];
    let preds = [v(305.0), v(712.0), v(760.0), v(1400.0)];

    println!("stroke width {} px", cfg.stroke_width);
    for (p, row) in iou_matrix(&preds, &gts, &cfg)?.iter().enumerate() {
        println!(
            "pred {p}: {}",
            row.iter()
                .map(|x| format!("{x:.3}"))
                .collect::<Vec<_>>()
                .join("  ")
        );
    }
    let r = match_and_score(&preds, &gts, &cfg)?;
    println!(
        "tp {} fp {} fn {}  precision {:.3} recall {:.3} F1 {:.3}",
        r.tp, r.fp, r.fn_, r.precision, r.recall, r.f1
    );

    let strip = |x| Polyline::from_xy(&[(x, -50.0), (x, 350.0)]).unwrap();
    let iou = lane_iou(
        &strip(100.0),
        &strip(115.0),
        30.0,
        Canvas {
            width: 400,
            height: 300,
        },
    )?;
    println!("\nhalf-overlapping strips: IoU {iou:.4}");

    let h = [400.0, 450.0, 500.0, 550.0];
    let gt = vec![vec![200.0, 210.0, 220.0, 230.0], vec![600.0, 590.0, -2.0, -2.0]];
    let pred = vec![vec![205.0, 215.0, 245.0, 230.0], vec![600.0, 591.0, 580.0, 570.0]];
    let t = tusimple_accuracy(&pred, &gt, &h, &TusimpleConfig::default())?;
    println!(
        "Tusimple: accuracy {:.4} fp {:.3} fn {:.3} F1 {:.3}",
        t.accuracy, t.fp_rate, t.fn_rate, t.f1
    );
    Ok(())
}
