//! Read CULane `.lines.txt` and Tusimple JSON lines, canonicalize, fit,
//! and write back out.

use lanespline::dataset::{
    build_ground_truth, frame_to_tusimple, parse_culane_frame, parse_tusimple_line, write_culane_lines,
};
use lanespline::fit::FitConfig;
use lanespline::Polyline;

const CULANE: &str = "\
532.1 590 571.3 560 610.8 530 650.2 500 689.9 470 729.5 440 769.0 410 808.6 380
1210.4 590 1160.9 560 1111.6 530 1062.0 500 1012.7 470 963.1 440 913.8 410
";

const TUSIMPLE: &str = r#"{"lanes": [[-2, -2, 612, 598, 585, 571, 557, 544], [-2, 700, 716, 731, 747, 763, 778, 794]], "h_samples": [400, 420, 440, 460, 480, 500, 520, 540], "raw_file": "clips/0530/1492626047222176976_0/20.jpg"}"#;

fn main() -> lanespline::Result<()> {
    let frame = parse_culane_frame(CULANE, "driver_23/00000.lines.txt")?;
    println!(
        "CULane: {} lanes, {}x{}",
        frame.lanes.len(),
        frame.image_size.width,
        frame.image_size.height
    );
    let gt = build_ground_truth(&frame, &FitConfig::default())?;
    for (i, l) in gt.lanes.iter().enumerate() {
        println!(
            "  lane {i}: {} points, rms {:.3}, reduced {}",
            l.raw_points.len(),
            l.fit_rms.unwrap(),
            l.reduced_fit
        );
    }

    let ts = parse_tusimple_line(TUSIMPLE)?;
    println!("Tusimple: {} lanes", ts.lanes.len());
    // labels run top to bottom; canonical order starts at the bottom
    let canon = ts.canonicalized();
    println!(
        "  first point raw {:?}, canonical {:?}",
        ts.lanes[0].raw_points.first(),
        canon.lanes[0].raw_points.first()
    );

    let lanes: Vec<Polyline> = ts.lanes.iter().map(|l| l.raw_points.clone()).collect();
    print!("as CULane text:\n{}", write_culane_lines(&lanes));
    let rows: Vec<f64> = (0..8).map(|i| 400.0 + 20.0 * i as f64).collect();
    let back = frame_to_tusimple(&ts, &rows, "clips/0530/1492626047222176976_0/20.jpg");
    println!("back to Tusimple: {}", serde_json::to_string(&back).unwrap());
    Ok(())
}
