//! Training losses for sampled lane curves and their gradients.

use serde::{Deserialize, Serialize};

use crate::curve::{BSplineCurve, LaneCurve};
use crate::distance::{nearest_segment, normalized, ExtendedRadius};
use crate::error::{Error, Result};
use crate::point::{curve_length, Point2, Polyline};

/// Probabilities are clamped to `[FOCAL_EPS, 1 - FOCAL_EPS]`.
pub const FOCAL_EPS: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossWeights {
    pub lambda_reg: f64,
    pub lambda_length: f64,
    pub lambda_start: f64,
    pub lambda_cls: f64,
}

impl Default for LossWeights {
    fn default() -> Self {
        Self {
            lambda_reg: 1.0,
            lambda_length: 1.0,
            lambda_start: 1.0,
            lambda_cls: 1.0,
        }
    }
}

impl LossWeights {
    pub fn new(reg: f64, length: f64, start: f64, cls: f64) -> Result<Self> {
        let w = Self {
            lambda_reg: reg,
            lambda_length: length,
            lambda_start: start,
            lambda_cls: cls,
        };
        w.validate()?;
        Ok(w)
    }

    /// Only the regression term.
    pub fn regression_only() -> Self {
        Self {
            lambda_reg: 1.0,
            lambda_length: 0.0,
            lambda_start: 0.0,
            lambda_cls: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for w in [
            self.lambda_reg,
            self.lambda_length,
            self.lambda_start,
            self.lambda_cls,
        ] {
            if !w.is_finite() {
                return Err(Error::NonFinite("loss weight"));
            }
            if w < 0.0 {
                return Err(Error::InvalidArgument(format!("negative loss weight {w}")));
            }
        }
        Ok(())
    }
}

/// Unweighted loss terms.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LossTerms {
    pub reg: f64,
    pub length: f64,
    pub start: f64,
    pub cls: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossBreakdown {
    pub l_reg: f64,
    pub l_length: f64,
    pub l_start: f64,
    pub l_cls: f64,
    pub l_total: f64,
}

/// Weighted sum of the four terms, stored alongside them.
pub fn total_loss(parts: LossTerms, weights: &LossWeights) -> Result<LossBreakdown> {
    weights.validate()?;
    if ![parts.reg, parts.length, parts.start, parts.cls]
        .iter()
        .all(|v| v.is_finite())
    {
        return Err(Error::NonFinite("loss term"));
    }
    Ok(LossBreakdown {
        l_reg: parts.reg,
        l_length: parts.length,
        l_start: parts.start,
        l_cls: parts.cls,
        l_total: weights.lambda_reg * parts.reg
            + weights.lambda_length * parts.length
            + weights.lambda_start * parts.start
            + weights.lambda_cls * parts.cls,
    })
}

/// `1 - (N(gt→pred) + N(pred→gt)) / 2`, where each directed score is the
/// mean of per-point normalized distances.
///
/// 0 for identical curves; 1 when every point of each curve is exactly
/// `2r` from the other; below 2 always.
pub fn regression_loss(gt: &Polyline, pred: &Polyline, r: ExtendedRadius) -> f64 {
    let directed = |a: &Polyline, b: &Polyline| {
        a.points()
            .iter()
            .map(|&p| normalized(nearest_segment(p, b).distance, r.get()))
            .sum::<f64>()
            / a.len() as f64
    };
    1.0 - 0.5 * (directed(gt, pred) + directed(pred, gt))
}

/// `|l_gt - l_pred| / l_gt` on polyline lengths.
pub fn length_loss(gt: &Polyline, pred: &Polyline) -> Result<f64> {
    let l_gt = curve_length(gt);
    if l_gt <= 0.0 {
        return Err(Error::ZeroLengthGroundTruth);
    }
    Ok((l_gt - curve_length(pred)).abs() / l_gt)
}

/// Mean squared error over the two coordinates.
pub fn start_point_loss(gt_start: Point2, pred_start: Point2) -> f64 {
    gt_start.distance_squared(pred_start) / 2.0
}

/// Binary focal loss `-α_t (1 - p_t)^γ ln p_t`.
///
/// `pred_conf` is clamped to `[ε, 1 - ε]` with `ε = 1e-7`.
pub fn focal_cls_loss(pred_conf: f64, target: bool, alpha: f64, gamma: f64) -> Result<f64> {
    if !(pred_conf.is_finite() && alpha.is_finite() && gamma.is_finite()) {
        return Err(Error::NonFinite("focal loss input"));
    }
    if !(0.0..=1.0).contains(&alpha) || gamma < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "focal parameters out of range: alpha {alpha}, gamma {gamma}"
        )));
    }
    let p = pred_conf.clamp(FOCAL_EPS, 1.0 - FOCAL_EPS);
    let (p_t, alpha_t) = if target {
        (p, alpha)
    } else {
        (1.0 - p, 1.0 - alpha)
    };
    Ok(-alpha_t * (1.0 - p_t).powf(gamma) * p_t.ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FocalParams {
    pub alpha: f64,
    pub gamma: f64,
}

impl Default for FocalParams {
    fn default() -> Self {
        Self {
            alpha: 0.25,
            gamma: 2.0,
        }
    }
}

/// Mean focal loss over a batch of (confidence, target) pairs; 0 when empty.
pub fn mean_focal_loss(items: &[(f64, bool)], params: FocalParams) -> Result<f64> {
    if items.is_empty() {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for &(p, t) in items {
        sum += focal_cls_loss(p, t, params.alpha, params.gamma)?;
    }
    Ok(sum / items.len() as f64)
}

fn check_segments(poly: &Polyline) -> Result<()> {
    match poly.segments().position(|(a, b)| a == b) {
        Some(s) => Err(Error::DegenerateSegment(s)),
        None => Ok(()),
    }
}

/// `dN/dd` for `N(d) = (2r - d) / (d + 2r)`.
#[inline]
fn normalized_slope(d: f64, r: f64) -> f64 {
    let s = d + 2.0 * r;
    -4.0 * r / (s * s)
}

/// Gradient of [`regression_loss`] with respect to each point of `pred`.
///
/// Each point-to-polyline distance is differentiated through its active
/// nearest segment (lowest index on ties). Points lying exactly on the
/// other curve contribute zero.
pub fn regression_loss_sample_gradient(
    gt: &Polyline,
    pred: &Polyline,
    r: ExtendedRadius,
) -> Result<Vec<Point2>> {
    check_segments(gt)?;
    check_segments(pred)?;
    let r = r.get();
    let mut grad = vec![Point2::ZERO; pred.len()];

    // gt -> pred: the distance moves with the endpoints of the nearest pred segment
    let w_gt = -0.5 / gt.len() as f64;
    for &g in gt.points() {
        let near = nearest_segment(g, pred);
        if near.distance == 0.0 {
            continue;
        }
        let dir = (near.foot - g) * (1.0 / near.distance);
        let c = w_gt * normalized_slope(near.distance, r);
        grad[near.segment] += dir * (c * (1.0 - near.t));
        grad[near.segment + 1] += dir * (c * near.t);
    }

    // pred -> gt: the distance moves with the pred point itself
    let w_pred = -0.5 / pred.len() as f64;
    for (k, &q) in pred.points().iter().enumerate() {
        let near = nearest_segment(q, gt);
        if near.distance == 0.0 {
            continue;
        }
        let dir = (q - near.foot) * (1.0 / near.distance);
        grad[k] += dir * (w_pred * normalized_slope(near.distance, r));
    }
    Ok(grad)
}

/// Gradient of [`length_loss`] with respect to each point of `pred`.
pub fn length_loss_sample_gradient(gt: &Polyline, pred: &Polyline) -> Result<Vec<Point2>> {
    let l_gt = curve_length(gt);
    if l_gt <= 0.0 {
        return Err(Error::ZeroLengthGroundTruth);
    }
    let diff = curve_length(pred) - l_gt;
    let sign = if diff > 0.0 {
        1.0
    } else if diff < 0.0 {
        -1.0
    } else {
        0.0
    };
    let pts = pred.points();
    let mut grad = vec![Point2::ZERO; pts.len()];
    for s in 0..pts.len() - 1 {
        let e = pts[s + 1] - pts[s];
        let len = e.norm();
        if len == 0.0 {
            continue;
        }
        let u = e * (sign / (l_gt * len));
        grad[s + 1] += u;
        grad[s] -= u;
    }
    Ok(grad)
}

/// Gradient of [`start_point_loss`] with respect to the predicted start.
pub fn start_point_loss_gradient(gt_start: Point2, pred_start: Point2) -> Point2 {
    pred_start - gt_start
}

/// Gradient of the regression loss between `gt` and the `n_dis`-point
/// sampling of `pred_curve`, with respect to each control point.
///
/// Sample positions are linear in the control points, so the per-sample
/// gradient is pulled back through the basis weights.
pub fn regression_loss_gradient(
    gt: &Polyline,
    pred_curve: &BSplineCurve,
    r: ExtendedRadius,
    n_dis: usize,
) -> Result<Vec<Point2>> {
    let pred = pred_curve.sample(n_dis)?;
    let sample_grad = regression_loss_sample_gradient(gt, &pred, r)?;
    pull_back_bspline(pred_curve, &sample_grad)
}

/// Chain rule from per-sample gradients (at `u = k / (N - 1)`) to control
/// point gradients.
pub fn pull_back_bspline(curve: &BSplineCurve, sample_grad: &[Point2]) -> Result<Vec<Point2>> {
    let n = sample_grad.len();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let mut grad = vec![Point2::ZERO; curve.control_points().len()];
    for (k, g) in sample_grad.iter().enumerate() {
        let u = if k == n - 1 {
            1.0
        } else {
            k as f64 / (n - 1) as f64
        };
        let (first, w) = curve.basis_row(u)?;
        for (j, wj) in w.iter().enumerate() {
            grad[first + j] += *g * *wj;
        }
    }
    Ok(grad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vertical(x: f64, n: usize) -> Polyline {
        Polyline::new(
            (0..n)
                .map(|i| Point2::new(x, 700.0 - 400.0 * i as f64 / (n - 1) as f64))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identical_curves_have_zero_regression_loss() {
        let a = vertical(100.0, 50);
        assert_eq!(regression_loss(&a, &a, ExtendedRadius::default()), 0.0);
    }

    #[test]
    fn offset_of_two_radii_gives_one() {
        let r = ExtendedRadius::new(9.0).unwrap();
        let l = regression_loss(&vertical(100.0, 50), &vertical(118.0, 50), r);
        assert_eq!(l, 1.0);
    }

    #[test]
    fn offset_of_one_radius_gives_two_thirds() {
        // every point is 9 px away: N = (18 - 9) / (9 + 18) = 1/3, L = 1 - 1/3
        let r = ExtendedRadius::new(9.0).unwrap();
        let l = regression_loss(&vertical(100.0, 300), &vertical(109.0, 300), r);
        assert!((l - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn length_loss_cases() {
        let gt = Polyline::from_xy(&[(0.0, 0.0), (0.0, 10.0)]).unwrap();
        let same = Polyline::from_xy(&[(5.0, 0.0), (5.0, 10.0)]).unwrap();
        let double = Polyline::from_xy(&[(0.0, 0.0), (0.0, 20.0)]).unwrap();
        let point = Polyline::from_xy(&[(1.0, 1.0), (1.0, 1.0)]).unwrap();
        assert_eq!(length_loss(&gt, &same).unwrap(), 0.0);
        assert_eq!(length_loss(&gt, &double).unwrap(), 1.0);
        assert_eq!(length_loss(&gt, &point).unwrap(), 1.0);
        assert_eq!(length_loss(&point, &gt), Err(Error::ZeroLengthGroundTruth));
    }

    #[test]
    fn start_mse() {
        assert_eq!(start_point_loss(Point2::ZERO, Point2::ZERO), 0.0);
        assert_eq!(
            start_point_loss(Point2::new(0.0, 0.0), Point2::new(3.0, 4.0)),
            12.5
        );
    }

    #[test]
    fn focal_cases() {
        let perfect = focal_cls_loss(1.0 - FOCAL_EPS, true, 0.25, 2.0).unwrap();
        assert!(perfect < 1e-20);
        let p: f64 = 0.3;
        let bce = -p.ln();
        assert!((focal_cls_loss(p, true, 0.5, 0.0).unwrap() - 0.5 * bce).abs() < 1e-15);
        let bce_neg = -(1.0 - p).ln();
        assert!((focal_cls_loss(p, false, 0.5, 0.0).unwrap() - 0.5 * bce_neg).abs() < 1e-15);
        let v = focal_cls_loss(0.5, true, 0.25, 2.0).unwrap();
        assert!((v - 0.25 * 0.25 * std::f64::consts::LN_2).abs() < 1e-15);
        assert!((v - 0.0433).abs() < 1e-4);
        // clamped rather than infinite
        assert!(focal_cls_loss(0.0, true, 0.25, 2.0).unwrap().is_finite());
        assert!(focal_cls_loss(f64::NAN, true, 0.25, 2.0).is_err());
    }

    #[test]
    fn total_loss_arithmetic() {
        let parts = LossTerms {
            reg: 0.5,
            length: 0.1,
            start: 0.2,
            cls: 0.3,
        };
        let zero = LossWeights::new(0.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(total_loss(parts, &zero).unwrap().l_total, 0.0);
        let unit = total_loss(parts, &LossWeights::default()).unwrap();
        assert!((unit.l_total - 1.1).abs() < 1e-15);
        let w = LossWeights::new(2.0, 1.0, 1.0, 1.0).unwrap();
        assert!((total_loss(parts, &w).unwrap().l_total - 1.6).abs() < 1e-15);
        assert!(LossWeights::new(-1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn gradient_rejects_degenerate_segments() {
        let gt = vertical(0.0, 10);
        let collapsed = Polyline::new(vec![Point2::new(1.0, 1.0); 5]).unwrap();
        assert_eq!(
            regression_loss_sample_gradient(&gt, &collapsed, ExtendedRadius::default()),
            Err(Error::DegenerateSegment(0))
        );
    }

    #[test]
    fn length_gradient_matches_finite_difference() {
        let gt = vertical(0.0, 5);
        let pred = Polyline::from_xy(&[(0.0, 0.0), (3.0, 50.0), (-2.0, 120.0), (4.0, 300.0)]).unwrap();
        let g = length_loss_sample_gradient(&gt, &pred).unwrap();
        let h = 1e-6;
        for k in 0..pred.len() {
            let mut plus = pred.points().to_vec();
            let mut minus = pred.points().to_vec();
            plus[k].x += h;
            minus[k].x -= h;
            let fd = (length_loss(&gt, &Polyline::new(plus).unwrap()).unwrap()
                - length_loss(&gt, &Polyline::new(minus).unwrap()).unwrap())
                / (2.0 * h);
            assert!((fd - g[k].x).abs() < 1e-8, "k={k} fd={fd} g={}", g[k].x);
        }
    }
}
