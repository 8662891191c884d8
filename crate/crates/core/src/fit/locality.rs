//! Partially-aligned lane experiment: a target lane and an initial lane
//! coincide on one half and disagree on the other. One gradient step is
//! taken for each representation, and the report measures how much the
//! already-aligned half gets dragged along.

use serde::{Deserialize, Serialize};

use super::descent::{fit_by_gradient_descent, DescentConfig, LinearModel};
use super::{fit_bezier_at_parameters, parameterize, Parameterization};
use crate::curve::{BSplineCurve, Curve, CurveKind, LaneCurve, PolynomialCurve};
use crate::distance::ExtendedRadius;
use crate::error::{Error, Result};
use crate::loss::{regression_loss_gradient, LossWeights};
use crate::point::{Point2, Polyline};
use crate::{DEGREE, N_CONTROL, N_DIS};

/// Which half of the lane already matches the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlignedHalf {
    /// Bottom of the image (larger y) coincides; the top is offset.
    #[default]
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalityScenario {
    /// Lateral shift of the misaligned end, in pixels.
    pub offset: f64,
    pub aligned: AlignedHalf,
    pub step_size: f64,
    pub steps: usize,
    pub n_dis: usize,
    pub n_control: usize,
    pub degree: usize,
    pub bezier_degree: usize,
    pub polynomial_degree: usize,
    pub radius: ExtendedRadius,
}

impl Default for LocalityScenario {
    fn default() -> Self {
        Self {
            offset: 20.0,
            aligned: AlignedHalf::Lower,
            step_size: 0.1,
            steps: 1,
            n_dis: N_DIS,
            n_control: N_CONTROL,
            degree: DEGREE,
            bezier_degree: 3,
            polynomial_degree: 3,
            radius: ExtendedRadius::default(),
        }
    }
}

/// Per-step record for plotting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub loss: f64,
    /// Mean displacement since step 0 of samples in the aligned half.
    pub aligned_displacement: f64,
    pub offset_displacement: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentationResult {
    pub kind: CurveKind,
    pub aligned_displacement: f64,
    pub offset_displacement: f64,
    pub loss_before: f64,
    pub loss_after: f64,
    pub loss_reduction: f64,
    pub trace: Vec<StepRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalityReport {
    pub scenario: LocalityScenario,
    /// Image row separating the two halves (the target's `y` at `u = 0.5`).
    pub split_y: f64,
    pub polynomial: RepresentationResult,
    pub bezier: RepresentationResult,
    pub bspline: RepresentationResult,
    /// B-spline aligned-half displacement over the Bézier one.
    pub ratio_bspline_bezier: f64,
    pub ratio_bspline_polynomial: f64,
    /// Norm of the B-spline gradient on control points whose support lies
    /// entirely in the aligned region.
    pub aligned_gradient_norm: f64,
    pub offset_gradient_norm: f64,
    /// True when the B-spline disturbs the aligned half strictly less than
    /// both other representations.
    pub locality_holds: bool,
}

fn ratio(a: f64, b: f64) -> f64 {
    if b > 0.0 {
        a / b
    } else if a > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

/// Eight-point S-shaped lane from the bottom of an 800-wide image upwards.
fn target_spline(sc: &LocalityScenario) -> Result<BSplineCurve> {
    let n = sc.n_control;
    if n < 2 {
        return Err(Error::TooFewControlPoints {
            count: n,
            degree: sc.degree,
        });
    }
    let last = (n - 1) as f64;
    let pts = (0..n)
        .map(|i| {
            let s = i as f64 / last;
            Point2::new(
                600.0 + 40.0 * (2.0 * std::f64::consts::PI * s).sin(),
                710.0 - 460.0 * s,
            )
        })
        .collect();
    BSplineCurve::new(sc.degree, pts)
}

/// The control point that is shifted to build the initial lane.
fn shifted_index(sc: &LocalityScenario) -> usize {
    match sc.aligned {
        AlignedHalf::Lower => sc.n_control - 1,
        AlignedHalf::Upper => 0,
    }
}

fn shift(curve: &BSplineCurve, index: usize, dx: f64) -> Result<BSplineCurve> {
    let mut pts = curve.control_points().to_vec();
    pts[index].x += dx;
    curve.with_control_points(pts)
}

/// Control points whose support does not overlap the shifted point's.
fn aligned_controls(curve: &BSplineCurve, shifted: usize) -> Vec<bool> {
    let k = curve.knots().values();
    let p = curve.degree();
    let (lo, hi) = (k[shifted], k[shifted + p + 1]);
    (0..curve.control_points().len())
        .map(|i| k[i + p + 1] <= lo || k[i] >= hi)
        .collect()
}

fn in_aligned_half(aligned: AlignedHalf, y: f64, split_y: f64) -> bool {
    match aligned {
        AlignedHalf::Lower => y > split_y,
        AlignedHalf::Upper => y < split_y,
    }
}

/// Mean pointwise displacement, split by which half each original sample
/// belongs to.
fn displacement(before: &Polyline, after: &Polyline, aligned: AlignedHalf, split_y: f64) -> (f64, f64) {
    let (mut a_sum, mut a_n, mut o_sum, mut o_n) = (0.0, 0usize, 0.0, 0usize);
    for (p, q) in before.points().iter().zip(after.points()) {
        let d = p.distance(*q);
        if in_aligned_half(aligned, p.y, split_y) {
            a_sum += d;
            a_n += 1;
        } else {
            o_sum += d;
            o_n += 1;
        }
    }
    let mean = |s: f64, n: usize| if n == 0 { 0.0 } else { s / n as f64 };
    (mean(a_sum, a_n), mean(o_sum, o_n))
}

fn run(init: Curve, target: &Polyline, sc: &LocalityScenario, split_y: f64) -> Result<RepresentationResult> {
    let cfg = DescentConfig {
        step_size: sc.step_size,
        steps: sc.steps,
        weights: LossWeights::regression_only(),
        n_dis: sc.n_dis,
        radius: sc.radius,
    };
    let kind = init.kind();
    let traj = fit_by_gradient_descent(&init, target, &cfg)?;
    let before = traj.initial().curve.sample(sc.n_dis)?;
    let trace = traj
        .steps
        .iter()
        .map(|s| {
            let after = s.curve.sample(sc.n_dis)?;
            let (a, o) = displacement(&before, &after, sc.aligned, split_y);
            Ok(StepRecord {
                step: s.step,
                loss: s.loss.l_total,
                aligned_displacement: a,
                offset_displacement: o,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let last = trace[trace.len() - 1];
    let loss_before = traj.initial().loss.l_total;
    Ok(RepresentationResult {
        kind,
        aligned_displacement: last.aligned_displacement,
        offset_displacement: last.offset_displacement,
        loss_before,
        loss_after: last.loss,
        loss_reduction: loss_before - last.loss,
        trace,
    })
}

/// Runs the scenario for the polynomial, Bézier and B-spline
/// representations with the same step size.
///
/// The target and initial lanes are B-splines differing in one end
/// control point, so their samples are identical over the other end.
/// The Bézier and polynomial versions are least-squares fits of the same
/// dense samples; each representation chases its own fitted target, so a
/// zero offset leaves every representation exactly at its optimum.
pub fn locality_experiment(sc: &LocalityScenario) -> Result<LocalityReport> {
    if !sc.offset.is_finite() {
        return Err(Error::NonFinite("scenario offset"));
    }
    if sc.n_dis < 2 {
        return Err(Error::TooFewSamples(sc.n_dis));
    }
    let target_bs = target_spline(sc)?;
    let shifted = shifted_index(sc);
    let init_bs = shift(&target_bs, shifted, sc.offset)?;
    let split_y = target_bs.evaluate(0.5)?.y;

    let dense = 4 * sc.n_dis;
    let target_dense = target_bs.sample(dense)?;
    let init_dense = init_bs.sample(dense)?;
    let u = parameterize(target_dense.points(), Parameterization::Uniform)?;

    let target_bz = fit_bezier_at_parameters(target_dense.points(), &u, sc.bezier_degree)?;
    let init_bz = fit_bezier_at_parameters(init_dense.points(), &u, sc.bezier_degree)?;
    let target_pl = PolynomialCurve::fit_least_squares(target_dense.points(), sc.polynomial_degree)?;
    let init_pl = PolynomialCurve::fit_least_squares(init_dense.points(), sc.polynomial_degree)?;

    // targets are sampled exactly like the models being optimized
    let samples = |c: Curve| LinearModel::new(&c, sc.n_dis)?.samples();
    let bspline = run(
        init_bs.clone().into(),
        &samples(target_bs.clone().into())?,
        sc,
        split_y,
    )?;
    let bezier = run(init_bz.into(), &samples(target_bz.into())?, sc, split_y)?;
    let polynomial = run(init_pl.into(), &samples(target_pl.into())?, sc, split_y)?;

    let grad = regression_loss_gradient(&target_bs.sample(sc.n_dis)?, &init_bs, sc.radius, sc.n_dis)?;
    let mask = aligned_controls(&init_bs, shifted);
    let norm = |want: bool| {
        grad.iter()
            .zip(&mask)
            .filter(|(_, &m)| m == want)
            .map(|(g, _)| g.norm_squared())
            .sum::<f64>()
            .sqrt()
    };

    let locality_holds = bspline.aligned_displacement < bezier.aligned_displacement
        && bspline.aligned_displacement < polynomial.aligned_displacement;
    Ok(LocalityReport {
        scenario: *sc,
        split_y,
        ratio_bspline_bezier: ratio(bspline.aligned_displacement, bezier.aligned_displacement),
        ratio_bspline_polynomial: ratio(bspline.aligned_displacement, polynomial.aligned_displacement),
        aligned_gradient_norm: norm(true),
        offset_gradient_norm: norm(false),
        locality_holds,
        polynomial,
        bezier,
        bspline,
    })
}
