//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards `std::env::args` and the standard streams.
//!
//! Results go to stdout as JSON, or as aligned text tables with
//! `--pretty`. Exit codes: 0 success, 1 usage error, 2 data error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::assign::{assign_labels, make_reference_points};
use crate::config::Config;
use crate::curve::{Curve, LaneCurve};
use crate::dataset::{canonicalize_lane, parse_culane_lines, parse_tusimple_record, CULANE_SIZE};
use crate::distance::{symmetric_distance_with_radius, ExtendedRadius};
use crate::error::Error;
use crate::fit::{
    fit_bspline_least_squares, locality_experiment, AlignedHalf, FitConfig, LocalityScenario,
    Parameterization,
};
use crate::loss::{
    focal_cls_loss, length_loss, regression_loss, start_point_loss, total_loss, LossTerms, LossWeights,
};
use crate::metrics::{
    match_and_score, tusimple_frame_counts, EvalResult, IouConfig, TusimpleConfig, TusimpleCounts,
};
use crate::nms::{fast_nms, NmsConfig, ScoredCurve};
use crate::point::{Point2, Polyline};

#[derive(Parser, Debug)]
#[command(name = "lanespline", version, about = "B-spline lane geometry toolkit")]
struct Cli {
    /// Defaults file with `key = value` lines; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Least-squares B-spline fit of every lane in an annotation file.
    Fit(FitArgs),
    /// Sample a curve into a polyline.
    Sample(SampleArgs),
    /// Directed, symmetric and normalized distances between two curves.
    Dist(DistArgs),
    /// Loss breakdown of a prediction against a ground truth.
    Loss(LossArgs),
    /// Assign ground-truth start points to border reference points.
    Assign(AssignArgs),
    /// Fast NMS over scored curves.
    Nms(NmsArgs),
    /// IoU-matched precision / recall / F1 over CULane-style line files.
    EvalCulane(EvalCulaneArgs),
    /// Point accuracy and FP / FN rates over Tusimple-style JSON lines.
    EvalTusimple(EvalTusimpleArgs),
    /// One gradient step for polynomial, Bézier and B-spline lanes that
    /// only disagree on one half.
    DemoLocality(DemoArgs),
    /// Configuration utilities.
    Config {
        #[command(subcommand)]
        action: ConfigAction,
    },
}

#[derive(Subcommand, Debug)]
enum ConfigAction {
    /// Print the effective configuration.
    Show,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InputFormat {
    /// Decide from the file extension.
    Auto,
    /// `x y x y ...` per line.
    Culane,
    /// JSON lines with `lanes` and `h_samples`.
    Tusimple,
    /// A JSON polyline or a JSON list of polylines.
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ParamArg {
    ChordLength,
    Uniform,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HalfArg {
    Lower,
    Upper,
}

#[derive(Args, Debug)]
struct FitArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    format: InputFormat,
    #[arg(long)]
    n_control: Option<usize>,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, value_enum)]
    parameterization: Option<ParamArg>,
}

#[derive(Args, Debug)]
struct SampleArgs {
    /// Curve JSON.
    #[arg(long)]
    curve: PathBuf,
    /// Number of samples (defaults to n_dis).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct DistArgs {
    /// Curve or polyline JSON.
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    n_dis: Option<usize>,
    #[arg(long)]
    radius: Option<f64>,
}

#[derive(Args, Debug)]
struct LossArgs {
    /// Curve or polyline JSON.
    #[arg(long)]
    gt: PathBuf,
    #[arg(long)]
    pred: PathBuf,
    /// Predicted existence confidence; enables the classification term.
    #[arg(long)]
    conf: Option<f64>,
    /// Whether the prediction is a positive (default: true).
    #[arg(long)]
    positive: Option<bool>,
    #[arg(long)]
    n_dis: Option<usize>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    lambda_reg: Option<f64>,
    #[arg(long)]
    lambda_length: Option<f64>,
    #[arg(long)]
    lambda_start: Option<f64>,
    #[arg(long)]
    lambda_cls: Option<f64>,
}

#[derive(Args, Debug)]
struct AssignArgs {
    /// JSON list of `[x, y]` start points.
    #[arg(long)]
    starts: PathBuf,
    #[arg(long)]
    n_p: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = CULANE_SIZE.width as f64)]
    width: f64,
    #[arg(long, default_value_t = CULANE_SIZE.height as f64)]
    height: f64,
}

#[derive(Args, Debug)]
struct NmsArgs {
    /// JSON list of `{"curve": ..., "confidence": ...}`.
    #[arg(long)]
    input: PathBuf,
    /// Symmetric-distance threshold in pixels.
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    conf_threshold: Option<f64>,
    #[arg(long)]
    n_dis: Option<usize>,
}

#[derive(Args, Debug)]
struct EvalCulaneArgs {
    /// Prediction `.txt` file or directory.
    #[arg(long)]
    pred: PathBuf,
    /// Ground-truth `.txt` file or directory with the same layout.
    #[arg(long)]
    gt: PathBuf,
    #[arg(long, default_value_t = CULANE_SIZE.width)]
    width: u32,
    #[arg(long, default_value_t = CULANE_SIZE.height)]
    height: u32,
    /// Defaults to 30 px scaled by width / 1640.
    #[arg(long)]
    stroke_width: Option<f64>,
    #[arg(long)]
    iou_threshold: Option<f64>,
}

#[derive(Args, Debug)]
struct EvalTusimpleArgs {
    #[arg(long)]
    pred: PathBuf,
    #[arg(long)]
    gt: PathBuf,
    #[arg(long)]
    x_tolerance: Option<f64>,
    #[arg(long)]
    match_threshold: Option<f64>,
}

#[derive(Args, Debug)]
struct DemoArgs {
    #[arg(long)]
    offset: Option<f64>,
    #[arg(long, value_enum, default_value = "lower")]
    aligned: HalfArg,
    #[arg(long)]
    step_size: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    n_dis: Option<usize>,
    /// Also write per-step losses and displacements as CSV.
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

/// A curve file or a polyline file.
enum Shape {
    Curve(Curve),
    Points(Polyline),
}

impl Shape {
    fn load(path: &Path) -> CliResult<Shape> {
        let text = read(path)?;
        if let Ok(c) = serde_json::from_str::<Curve>(&text) {
            return Ok(Shape::Curve(c));
        }
        serde_json::from_str::<Polyline>(&text)
            .map(Shape::Points)
            .map_err(|_| Failure::Data(format!("{}: neither a curve nor a polyline", path.display())))
    }

    fn polyline(&self, n: usize) -> CliResult<Polyline> {
        Ok(match self {
            Shape::Curve(c) => c.sample(n)?,
            Shape::Points(p) => p.clone(),
        })
    }

    /// Curve start point, or the lower endpoint of a polyline.
    fn start(&self) -> Point2 {
        match self {
            Shape::Curve(c) => c.start_point(),
            Shape::Points(p) => canonicalize_lane(p).first(),
        }
    }
}

fn load_lanes(path: &Path, format: InputFormat) -> CliResult<Vec<Polyline>> {
    let format = match format {
        InputFormat::Auto => match path.extension().and_then(|e| e.to_str()) {
            Some("json") => InputFormat::Json,
            Some("jsonl") => InputFormat::Tusimple,
            _ => InputFormat::Culane,
        },
        f => f,
    };
    let text = read(path)?;
    Ok(match format {
        InputFormat::Culane | InputFormat::Auto => parse_culane_lines(&text)?,
        InputFormat::Tusimple => {
            let mut lanes = Vec::new();
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                let frame = crate::dataset::parse_tusimple_line(line)?;
                lanes.extend(frame.lanes.into_iter().map(|l| l.raw_points));
            }
            lanes
        }
        InputFormat::Json => {
            if let Ok(one) = serde_json::from_str::<Polyline>(&text) {
                vec![one]
            } else {
                serde_json::from_str::<Vec<Polyline>>(&text)
                    .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?
            }
        }
    })
}

fn json<T: Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure::Data(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Left-aligned first column, right-aligned others.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i == 0 {
                let _ = write!(s, "{c:<w$}");
            } else {
                let _ = write!(s, "  {c:>w$}");
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(&header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for r in rows {
        line(r);
    }
    out
}

fn f(v: f64) -> String {
    format!("{v:.6}")
}

fn kv(pairs: &[(&str, String)]) -> String {
    table(
        &["key", "value"],
        &pairs
            .iter()
            .map(|(k, v)| vec![k.to_string(), v.clone()])
            .collect::<Vec<_>>(),
    )
}

fn radius(r: Option<f64>, cfg: &Config) -> CliResult<ExtendedRadius> {
    ExtendedRadius::new(r.unwrap_or(cfg.radius)).map_err(|e| Failure::Usage(e.to_string()))
}

fn cmd_fit(a: &FitArgs, cfg: &Config, pretty: bool) -> CliResult<String> {
    let fit_cfg = FitConfig {
        n_control: a.n_control.unwrap_or(cfg.n_control),
        degree: a.degree.unwrap_or(cfg.degree),
        parameterization: match a.parameterization {
            Some(ParamArg::ChordLength) => Parameterization::ChordLength,
            Some(ParamArg::Uniform) => Parameterization::Uniform,
            None => cfg.parameterization,
        },
    };
    fit_cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let reports = load_lanes(&a.input, a.format)?
        .iter()
        .map(|lane| fit_bspline_least_squares(&canonicalize_lane(lane), &fit_cfg))
        .collect::<crate::Result<Vec<_>>>()?;
    if pretty {
        let rows = reports
            .iter()
            .enumerate()
            .map(|(i, r)| {
                vec![
                    i.to_string(),
                    r.curve.control_points().len().to_string(),
                    f(r.rms_error),
                    f(r.max_error),
                ]
            })
            .collect::<Vec<_>>();
        return Ok(table(
            &["lane", "control_points", "rms_error", "max_error"],
            &rows,
        ));
    }
    json(&reports)
}

fn cmd_sample(a: &SampleArgs, cfg: &Config, pretty: bool) -> CliResult<String> {
    let curve: Curve = read_json(&a.curve)?;
    let poly = curve.sample(a.n.unwrap_or(cfg.n_dis))?;
    if pretty {
        let rows = poly
            .points()
            .iter()
            .enumerate()
            .map(|(i, p)| vec![i.to_string(), f(p.x), f(p.y)])
            .collect::<Vec<_>>();
        return Ok(table(&["k", "x", "y"], &rows));
    }
    json(&poly)
}

fn cmd_dist(a: &DistArgs, cfg: &Config, pretty: bool) -> CliResult<String> {
    let n = a.n_dis.unwrap_or(cfg.n_dis);
    let r = radius(a.radius, cfg)?;
    let pa = Shape::load(&a.a)?.polyline(n)?;
    let pb = Shape::load(&a.b)?.polyline(n)?;
    let rep = symmetric_distance_with_radius(&pa, &pb, r);
    if pretty {
        return Ok(kv(&[
            ("d_a_to_b", f(rep.d_a_to_b)),
            ("d_b_to_a", f(rep.d_b_to_a)),
            ("d_symmetric", f(rep.d_symmetric)),
            ("n_a_to_b", f(rep.n_a_to_b)),
            ("n_b_to_a", f(rep.n_b_to_a)),
        ]));
    }
    json(&rep)
}

fn cmd_loss(a: &LossArgs, cfg: &Config, pretty: bool) -> CliResult<String> {
    let n = a.n_dis.unwrap_or(cfg.n_dis);
    let r = radius(a.radius, cfg)?;
    let weights = LossWeights::new(
        a.lambda_reg.unwrap_or(cfg.lambda_reg),
        a.lambda_length.unwrap_or(cfg.lambda_length),
        a.lambda_start.unwrap_or(cfg.lambda_start),
        a.lambda_cls.unwrap_or(cfg.lambda_cls),
    )
    .map_err(|e| Failure::Usage(e.to_string()))?;
    let gt = Shape::load(&a.gt)?;
    let pred = Shape::load(&a.pred)?;
    let (g, p) = (gt.polyline(n)?, pred.polyline(n)?);
    let cls = match a.conf {
        Some(c) => focal_cls_loss(c, a.positive.unwrap_or(true), cfg.focal_alpha, cfg.focal_gamma)?,
        None => 0.0,
    };
    let terms = LossTerms {
        reg: regression_loss(&g, &p, r),
        length: length_loss(&g, &p)?,
        start: start_point_loss(gt.start(), pred.start()),
        cls,
    };
    let b = total_loss(terms, &weights)?;
    if pretty {
        return Ok(kv(&[
            ("l_reg", f(b.l_reg)),
            ("l_length", f(b.l_length)),
            ("l_start", f(b.l_start)),
            ("l_cls", f(b.l_cls)),
            ("l_total", f(b.l_total)),
        ]));
    }
    json(&b)
}

fn cmd_assign(a: &AssignArgs, cfg: &Config, pretty: bool) -> CliResult<String> {
    let starts: Vec<Point2> = read_json(&a.starts)?;
    let refs = make_reference_points(a.n_p.unwrap_or(cfg.n_p), a.width, a.height)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let out = assign_labels(&starts, &refs, a.k.unwrap_or(cfg.k))?;
    if pretty {
        let rows = out
            .iter()
            .map(|x| {
                vec![
                    x.gt_index.to_string(),
                    format!("{:?}", x.proposal_indices),
                    x.distances
                        .iter()
                        .map(|d| format!("{d:.3}"))
                        .collect::<Vec<_>>()
                        .join(" "),
                ]
            })
            .collect::<Vec<_>>();
        return Ok(table(&["gt", "proposals", "distances"], &rows));
    }
    json(&out)
}

fn cmd_nms(a: &NmsArgs, cfg: &Config, pretty: bool) -> CliResult<String> {
    let cands: Vec<ScoredCurve> = read_json(&a.input)?;
    let nms_cfg = NmsConfig {
        distance_threshold: a.threshold.unwrap_or(cfg.nms_threshold),
        conf_threshold: a.conf_threshold.unwrap_or(cfg.conf_threshold),
        n_dis: a.n_dis.unwrap_or(cfg.n_dis),
    };
    let kept = fast_nms(&cands, &nms_cfg)?;
    if pretty {
        let rows = kept
            .iter()
            .enumerate()
            .map(|(rank, &i)| vec![rank.to_string(), i.to_string(), f(cands[i].confidence)])
            .collect::<Vec<_>>();
        return Ok(table(&["rank", "index", "confidence"], &rows));
    }
    json(&kept)
}

/// Relative paths of all `.txt` files under `root`, sorted. A plain file
/// yields itself under an empty relative path.
fn txt_files(root: &Path) -> CliResult<Vec<PathBuf>> {
    if root.is_file() {
        return Ok(vec![PathBuf::new()]);
    }
    let mut out = Vec::new();
    let mut stack = vec![PathBuf::new()];
    while let Some(rel) = stack.pop() {
        let dir = root.join(&rel);
        let entries =
            std::fs::read_dir(&dir).map_err(|e| Failure::Data(format!("{}: {e}", dir.display())))?;
        for entry in entries {
            let entry = entry.map_err(|e| Failure::Data(e.to_string()))?;
            let rel_child = rel.join(entry.file_name());
            let path = entry.path();
            if path.is_dir() {
                stack.push(rel_child);
            } else if path.extension().is_some_and(|e| e == "txt") {
                out.push(rel_child);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn cmd_eval_culane(a: &EvalCulaneArgs, cfg: &Config, pretty: bool) -> CliResult<String> {
    let mut iou_cfg = IouConfig::for_canvas(a.width, a.height);
    if let Some(w) = a.stroke_width {
        iou_cfg.stroke_width = w;
    }
    iou_cfg.iou_threshold = a.iou_threshold.unwrap_or(cfg.iou_threshold);
    let mut rels = txt_files(&a.gt)?;
    if a.pred.is_dir() {
        rels.extend(txt_files(&a.pred)?);
        rels.sort();
        rels.dedup();
    }
    let load = |root: &Path, rel: &Path| -> CliResult<Vec<Polyline>> {
        let p = root.join(rel);
        if p.is_file() {
            Ok(parse_culane_lines(&read(&p)?).map_err(|e| Failure::Data(format!("{}: {e}", p.display())))?)
        } else {
            Ok(Vec::new())
        }
    };
    let mut total = EvalResult::default();
    for rel in &rels {
        let gts = load(&a.gt, rel)?;
        let preds = load(&a.pred, rel)?;
        total = total.merge(&match_and_score(&preds, &gts, &iou_cfg)?);
    }
    if pretty {
        return Ok(kv(&[
            ("frames", rels.len().to_string()),
            ("tp", total.tp.to_string()),
            ("fp", total.fp.to_string()),
            ("fn", total.fn_.to_string()),
            ("precision", f(total.precision)),
            ("recall", f(total.recall)),
            ("f1", f(total.f1)),
        ]));
    }
    json(&total)
}

fn cmd_eval_tusimple(a: &EvalTusimpleArgs, cfg: &Config, pretty: bool) -> CliResult<String> {
    let t_cfg = TusimpleConfig {
        x_tolerance: a.x_tolerance.unwrap_or(cfg.x_tolerance),
        match_threshold: a.match_threshold.unwrap_or(cfg.match_threshold),
    };
    let records = |path: &Path| -> CliResult<Vec<crate::dataset::TusimpleRecord>> {
        read(path)?
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                parse_tusimple_record(l)
                    .map_err(|e| Failure::Data(format!("{}:{}: {e}", path.display(), i + 1)))
            })
            .collect()
    };
    let gts = records(&a.gt)?;
    let preds = records(&a.pred)?;
    let mut counts = TusimpleCounts::default();
    for g in &gts {
        let lanes = preds
            .iter()
            .find(|p| p.raw_file == g.raw_file)
            .map_or(&[][..], |p| &p.lanes[..]);
        let c = tusimple_frame_counts(lanes, &g.lanes, &g.h_samples, &t_cfg)
            .map_err(|e| Failure::Data(format!("{}: {e}", g.raw_file)))?;
        counts = counts.merge(&c);
    }
    let res = counts.result();
    if pretty {
        return Ok(kv(&[
            ("frames", gts.len().to_string()),
            ("accuracy", f(res.accuracy)),
            ("fp_rate", f(res.fp_rate)),
            ("fn_rate", f(res.fn_rate)),
            ("f1", f(res.f1)),
        ]));
    }
    json(&res)
}

fn cmd_demo(a: &DemoArgs, cfg: &Config, pretty: bool) -> CliResult<String> {
    let d = LocalityScenario::default();
    let sc = LocalityScenario {
        offset: a.offset.unwrap_or(d.offset),
        aligned: match a.aligned {
            HalfArg::Lower => AlignedHalf::Lower,
            HalfArg::Upper => AlignedHalf::Upper,
        },
        step_size: a.step_size.unwrap_or(d.step_size),
        steps: a.steps.unwrap_or(d.steps),
        n_dis: a.n_dis.unwrap_or(cfg.n_dis),
        n_control: cfg.n_control,
        degree: cfg.degree,
        radius: radius(None, cfg)?,
        ..d
    };
    let rep = locality_experiment(&sc)?;
    let results = [&rep.polynomial, &rep.bezier, &rep.bspline];
    if let Some(path) = &a.csv {
        let mut csv = String::from("representation,step,loss,aligned_displacement,offset_displacement\n");
        for r in results {
            for s in &r.trace {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{}",
                    serde_json::to_value(r.kind)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default(),
                    s.step,
                    s.loss,
                    s.aligned_displacement,
                    s.offset_displacement
                );
            }
        }
        std::fs::write(path, csv).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    }
    if pretty {
        let rows = results
            .iter()
            .map(|r| {
                vec![
                    format!("{:?}", r.kind),
                    format!("{:.6e}", r.aligned_displacement),
                    format!("{:.6e}", r.offset_displacement),
                    f(r.loss_before),
                    f(r.loss_after),
                ]
            })
            .collect::<Vec<_>>();
        let mut s = table(
            &[
                "representation",
                "aligned_disp",
                "offset_disp",
                "loss_before",
                "loss_after",
            ],
            &rows,
        );
        let _ = writeln!(s, "\nbspline/bezier     {:.6}", rep.ratio_bspline_bezier);
        let _ = writeln!(s, "bspline/polynomial {:.6}", rep.ratio_bspline_polynomial);
        let _ = writeln!(s, "locality holds     {}", rep.locality_holds);
        return Ok(s);
    }
    json(&rep)
}

fn dispatch(cli: &Cli, cfg: &Config) -> CliResult<String> {
    let p = cli.pretty;
    match &cli.command {
        Command::Fit(a) => cmd_fit(a, cfg, p),
        Command::Sample(a) => cmd_sample(a, cfg, p),
        Command::Dist(a) => cmd_dist(a, cfg, p),
        Command::Loss(a) => cmd_loss(a, cfg, p),
        Command::Assign(a) => cmd_assign(a, cfg, p),
        Command::Nms(a) => cmd_nms(a, cfg, p),
        Command::EvalCulane(a) => cmd_eval_culane(a, cfg, p),
        Command::EvalTusimple(a) => cmd_eval_tusimple(a, cfg, p),
        Command::DemoLocality(a) => cmd_demo(a, cfg, p),
        Command::Config {
            action: ConfigAction::Show,
        } => {
            if p {
                Ok(cfg.to_text())
            } else {
                json(cfg)
            }
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let cfg = match &cli.config {
        None => Ok(Config::default()),
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| format!("{}: {e}", path.display()))
            .and_then(|t| Config::from_text(&t).map_err(|e| format!("{}: {e}", path.display()))),
    };
    let cfg = match cfg {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 1;
        }
    };
    match dispatch(&cli, &cfg) {
        Ok(s) => {
            let _ = stdout.write_all(s.as_bytes());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Data(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["lanespline"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["frobnicate"]).0, 1);
        assert_eq!(call(&["dist", "--bogus"]).0, 1);
        assert_eq!(call(&[]).0, 1);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("demo-locality"));
    }

    #[test]
    fn missing_file_is_a_data_error() {
        assert_eq!(call(&["sample", "--curve", "/nonexistent/curve.json"]).0, 2);
    }

    #[test]
    fn config_show_lists_defaults() {
        let (code, out, _) = call(&["config", "show", "--pretty"]);
        assert_eq!(code, 0);
        assert!(out.contains("n_p = 60\n"));
        assert!(out.contains("n_dis = 300\n"));
        let (_, js, _) = call(&["config", "show"]);
        let back: Config = serde_json::from_str(&js).unwrap();
        assert_eq!(back, Config::default());
    }

    #[test]
    fn table_alignment() {
        let t = table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\nxyz   1\n");
    }
}
