//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use lanespline::{BSplineCurve, Point2, Polyline};

/// Clamped uniform knots built directly: `p + 1` zeros, interior `j / (n - p + 1)`,
/// `p + 1` ones.
pub fn knots(n: usize, p: usize) -> Vec<f64> {
    let mut k = vec![0.0; p + 1];
    for j in 1..=(n - p) {
        k.push(j as f64 / (n - p + 1) as f64);
    }
    k.extend(std::iter::repeat_n(1.0, p + 1));
    k
}

/// de Boor's triangular scheme.
pub fn de_boor(ctrl: &[Point2], p: usize, u: f64) -> Point2 {
    let n = ctrl.len() - 1;
    let t = knots(n, p);
    // span: largest k with t[k] <= u < t[k+1], clamped to the last non-empty span
    let mut k = p;
    while k < n && u >= t[k + 1] {
        k += 1;
    }
    let mut d: Vec<Point2> = (0..=p).map(|j| ctrl[j + k - p]).collect();
    for r in 1..=p {
        for j in (r..=p).rev() {
            let i = j + k - p;
            let denom = t[i + p + 1 - r] - t[i];
            let alpha = if denom == 0.0 { 0.0 } else { (u - t[i]) / denom };
            d[j] = d[j - 1] * (1.0 - alpha) + d[j] * alpha;
        }
    }
    d[p]
}

/// de Casteljau evaluation of a Bézier curve.
pub fn de_casteljau(ctrl: &[Point2], u: f64) -> Point2 {
    let mut d = ctrl.to_vec();
    for r in 1..d.len() {
        for j in 0..d.len() - r {
            d[j] = d[j] * (1.0 - u) + d[j + 1] * u;
        }
    }
    d[0]
}

/// Brute-force distance from `q` to a curve given by `m` dense samples,
/// using squared distances to the sample points only.
pub fn dense_nearest(q: Point2, dense: &[Point2]) -> f64 {
    dense
        .iter()
        .map(|p| (p.x - q.x).powi(2) + (p.y - q.y).powi(2))
        .fold(f64::INFINITY, f64::min)
        .sqrt()
}

/// Central-difference gradient of `f` at the control points of `c`.
pub fn finite_difference(c: &BSplineCurve, h: f64, f: impl Fn(&BSplineCurve) -> f64) -> Vec<Point2> {
    let base = c.control_points().to_vec();
    let mut g = vec![Point2::ZERO; base.len()];
    for i in 0..base.len() {
        for axis in 0..2 {
            let mut plus = base.clone();
            let mut minus = base.clone();
            if axis == 0 {
                plus[i].x += h;
                minus[i].x -= h;
            } else {
                plus[i].y += h;
                minus[i].y -= h;
            }
            let d = (f(&c.with_control_points(plus).unwrap()) - f(&c.with_control_points(minus).unwrap()))
                / (2.0 * h);
            if axis == 0 {
                g[i].x = d;
            } else {
                g[i].y = d;
            }
        }
    }
    g
}

/// Sequential NMS written from scratch: walk candidates by score and keep
/// each one that is far enough from every kept one.
pub fn sequential_nms_oracle(
    scores: &[f64],
    dist: &dyn Fn(usize, usize) -> f64,
    tau: f64,
    conf: f64,
) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).filter(|&i| scores[i] >= conf).collect();
    idx.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap().then(a.cmp(&b)));
    let mut kept: Vec<usize> = Vec::new();
    for j in idx {
        if kept.iter().all(|&i| dist(i, j) >= tau) {
            kept.push(j);
        }
    }
    kept
}

/// Maximum number of matched pairs with IoU at or above the threshold,
/// by exhaustive search.
pub fn max_matching(iou: &[Vec<f64>], thresh: f64) -> usize {
    fn go(p: usize, iou: &[Vec<f64>], used: &mut Vec<bool>, thresh: f64) -> usize {
        if p == iou.len() {
            return 0;
        }
        let mut best = go(p + 1, iou, used, thresh);
        for g in 0..used.len() {
            if !used[g] && iou[p][g] >= thresh {
                used[g] = true;
                best = best.max(1 + go(p + 1, iou, used, thresh));
                used[g] = false;
            }
        }
        best
    }
    let n_gt = iou.first().map_or(0, Vec::len);
    go(0, iou, &mut vec![false; n_gt], thresh)
}

/// Pixel mask of a stroke by testing every pixel center of the canvas.
pub fn brute_mask(poly: &Polyline, width: f64, w: u32, h: u32) -> Vec<bool> {
    let pts: Vec<Point2> = poly
        .points()
        .iter()
        .map(|p| Point2::new((p.x + 0.5).floor(), (p.y + 0.5).floor()))
        .collect();
    let mut m = vec![false; (w * h) as usize];
    for j in 0..h {
        for i in 0..w {
            let c = Point2::new(i as f64 + 0.5, j as f64 + 0.5);
            let near = pts
                .windows(2)
                .map(|s| lanespline::distance::point_to_segment(c, s[0], s[1]))
                .fold(f64::INFINITY, f64::min);
            m[(j * w + i) as usize] = near <= width / 2.0;
        }
    }
    m
}

pub fn max_abs(v: &[Point2]) -> f64 {
    v.iter().map(|p| p.x.abs().max(p.y.abs())).fold(0.0, f64::max)
}

/// Writes one input file per CLI subcommand into `dir` and returns the
/// argument lists (without the program name) that exercise each of them.
pub fn cli_fixtures(dir: &std::path::Path) -> Vec<Vec<String>> {
    use lanespline::dataset::{frame_to_tusimple, Frame, ImageSize, LaneAnnotation};
    use lanespline::synth::{random_lane_bspline, rng, tusimple_rows, SineLane};

    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let mut r = rng(11);
    let a = random_lane_bspline(&mut r, 8, 1640.0, 590.0).unwrap();
    let b = random_lane_bspline(&mut r, 8, 1640.0, 590.0).unwrap();
    std::fs::write(p("a.json"), serde_json::to_string(&a).unwrap()).unwrap();
    std::fs::write(p("b.json"), serde_json::to_string(&b).unwrap()).unwrap();

    let lanes: Vec<Polyline> = (0..3)
        .map(|_| {
            let c = random_lane_bspline(&mut r, 8, 1640.0, 590.0).unwrap();
            lanespline::LaneCurve::sample(&c, 30).unwrap()
        })
        .collect();
    std::fs::write(
        p("frame.lines.txt"),
        lanespline::dataset::write_culane_lines(&lanes),
    )
    .unwrap();
    let shifted: Vec<Polyline> = lanes
        .iter()
        .map(|l| l.map(|q| Point2::new(q.x + 8.0, q.y)).unwrap())
        .collect();
    std::fs::create_dir_all(dir.join("gt")).unwrap();
    std::fs::create_dir_all(dir.join("pred")).unwrap();
    std::fs::write(
        dir.join("gt/0001.lines.txt"),
        lanespline::dataset::write_culane_lines(&lanes),
    )
    .unwrap();
    std::fs::write(
        dir.join("pred/0001.lines.txt"),
        lanespline::dataset::write_culane_lines(&shifted[..2]),
    )
    .unwrap();

    let rows = tusimple_rows();
    let frame = |lanes: Vec<Polyline>| Frame {
        image_size: ImageSize {
            width: 1280,
            height: 720,
        },
        lanes: lanes.into_iter().map(|l| LaneAnnotation::new(l, "")).collect(),
        scenario_tag: None,
    };
    let sines: Vec<Polyline> = (0..3)
        .map(|_| SineLane::random(&mut r).points(&rows).unwrap())
        .collect();
    let moved: Vec<Polyline> = sines
        .iter()
        .map(|l| l.map(|q| Point2::new(q.x + 12.0, q.y)).unwrap())
        .collect();
    let gt = serde_json::to_string(&frame_to_tusimple(&frame(sines), &rows, "clips/0/1.jpg")).unwrap();
    let pr = serde_json::to_string(&frame_to_tusimple(&frame(moved), &rows, "clips/0/1.jpg")).unwrap();
    std::fs::write(p("gt.jsonl"), gt + "\n").unwrap();
    std::fs::write(p("pred.jsonl"), pr + "\n").unwrap();

    std::fs::write(p("starts.json"), "[[820, 590], [10, 300], [1600, 200]]").unwrap();
    let cands: Vec<_> = [(0.0, 0.9), (5.0, 0.8), (300.0, 0.7), (2.0, 0.3)]
        .iter()
        .map(|&(dx, conf)| {
            let c = a
                .with_control_points(
                    a.control_points()
                        .iter()
                        .map(|q| Point2::new(q.x + dx, q.y))
                        .collect(),
                )
                .unwrap();
            serde_json::json!({"curve": c, "confidence": conf})
        })
        .collect();
    std::fs::write(p("cands.json"), serde_json::to_string(&cands).unwrap()).unwrap();
    std::fs::write(p("cfg.txt"), "# test defaults\nn_dis = 120\nradius = 7.5\n").unwrap();

    let v = |s: &[&str]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        v(&["fit", "--input", &p("frame.lines.txt"), "--n-control", "8"]),
        v(&["fit", "--input", &p("gt.jsonl"), "--pretty"]),
        v(&["sample", "--curve", &p("a.json"), "--n", "25"]),
        v(&["dist", "--a", &p("a.json"), "--b", &p("b.json")]),
        v(&[
            "--config",
            &p("cfg.txt"),
            "dist",
            "--a",
            &p("a.json"),
            "--b",
            &p("b.json"),
            "--pretty",
        ]),
        v(&[
            "loss",
            "--gt",
            &p("a.json"),
            "--pred",
            &p("b.json"),
            "--conf",
            "0.7",
        ]),
        v(&["assign", "--starts", &p("starts.json"), "--k", "3"]),
        v(&["nms", "--input", &p("cands.json")]),
        v(&["eval-culane", "--pred", &p("pred"), "--gt", &p("gt")]),
        v(&[
            "eval-tusimple",
            "--pred",
            &p("pred.jsonl"),
            "--gt",
            &p("gt.jsonl"),
        ]),
        v(&["demo-locality", "--pretty"]),
        v(&["demo-locality", "--aligned", "upper", "--csv", &p("trace.csv")]),
        v(&["config", "show"]),
    ]
}

/// Runs the library entry point and captures its output.
pub fn run_cli(args: &[String]) -> (i32, Vec<u8>, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["lanespline".to_string()];
    argv.extend_from_slice(args);
    let code = lanespline::cli::run(argv, &mut out, &mut err);
    (code, out, err)
}
