//! Border reference points, label assignment for ground-truth start
//! points, and Fast NMS against classic sequential NMS.

use lanespline::assign::{assign_labels, make_reference_points, Border};
use lanespline::nms::{fast_nms, sequential_nms, NmsConfig, ScoredCurve};
use lanespline::{BSplineCurve, Point2};

fn vertical(x: f64, confidence: f64) -> ScoredCurve {
    ScoredCurve {
        curve: BSplineCurve::new(
            3,
            (0..4).map(|i| Point2::new(x, 500.0 - 100.0 * i as f64)).collect(),
        )
        .unwrap(),
        confidence,
    }
}

fn main() -> lanespline::Result<()> {
    let refs = make_reference_points(60, 1640.0, 590.0)?;
    println!(
        "left {}  bottom {}  right {}",
        refs.count(Border::Left),
        refs.count(Border::Bottom),
        refs.count(Border::Right)
    );

    let starts = [
        Point2::new(820.0, 590.0),
        Point2::new(0.0, 400.0),
        Point2::new(1500.0, 560.0),
    ];
    for a in assign_labels(&starts, &refs, 3)? {
        let where_: Vec<_> = a.proposal_indices.iter().map(|&i| refs.border_of[i]).collect();
        println!(
            "gt {} -> {:?} {:?} at {:.1?}",
            a.gt_index, a.proposal_indices, where_, a.distances
        );
    }

    // A-B and B-C overlap, A-C do not
    let chain = [vertical(100.0, 0.9), vertical(110.0, 0.8), vertical(120.0, 0.7)];
    let cfg = NmsConfig {
        distance_threshold: 25.0,
        ..Default::default()
    };
    println!("\nfast NMS keeps       {:?}", fast_nms(&chain, &cfg)?);
    println!("sequential NMS keeps {:?}", sequential_nms(&chain, &cfg)?);
    Ok(())
}
