//! Target and initial lane agree on the lower part and disagree at the top.
//! One gradient step on the regression loss, three representations: how
//! far does the already-correct part move?

use lanespline::fit::{locality_experiment, AlignedHalf, LocalityScenario};

fn main() -> lanespline::Result<()> {
    for aligned in [AlignedHalf::Lower, AlignedHalf::Upper] {
        let rep = locality_experiment(&LocalityScenario {
            aligned,
            ..Default::default()
        })?;
        println!("aligned half: {aligned:?} (split at y = {:.1})", rep.split_y);
        println!(
            "  {:<11} {:>14} {:>14} {:>12}",
            "curve", "aligned disp", "offset disp", "loss drop"
        );
        for r in [&rep.polynomial, &rep.bezier, &rep.bspline] {
            println!(
                "  {:<11} {:>14.4e} {:>14.4e} {:>12.3e}",
                format!("{:?}", r.kind),
                r.aligned_displacement,
                r.offset_displacement,
                r.loss_reduction
            );
        }
        println!(
            "  bspline/bezier {:.4}  bspline/polynomial {:.4}  holds: {}\n",
            rep.ratio_bspline_bezier, rep.ratio_bspline_polynomial, rep.locality_holds
        );
    }
    Ok(())
}
