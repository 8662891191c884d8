//! Curve fitting: linear least squares for ground truth, gradient descent
//! on the loss suite, and the locality comparison built on top of it.

mod descent;
mod locality;

pub use descent::{fit_by_gradient_descent, DescentConfig, DescentStep, Trajectory};
pub use locality::{
    locality_experiment, AlignedHalf, LocalityReport, LocalityScenario, RepresentationResult, StepRecord,
};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::curve::{BSplineCurve, BezierCurve};
use crate::error::{Error, Result};
use crate::point::{Point2, Polyline};
use crate::{DEGREE, N_CONTROL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameterization {
    /// Cumulative chord length, normalized to `[0, 1]`.
    #[default]
    ChordLength,
    /// `k / (M - 1)` regardless of spacing.
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitConfig {
    pub n_control: usize,
    pub degree: usize,
    pub parameterization: Parameterization,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            n_control: N_CONTROL,
            degree: DEGREE,
            parameterization: Parameterization::ChordLength,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if self.n_control < self.degree + 1 {
            return Err(Error::TooFewControlPoints {
                count: self.n_control,
                degree: self.degree,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub curve: BSplineCurve,
    pub rms_error: f64,
    pub max_error: f64,
    /// Distance from each input point to the curve at its parameter.
    pub residuals: Vec<f64>,
}

/// Curve parameters for `points` under the given scheme.
pub fn parameterize(points: &[Point2], scheme: Parameterization) -> Result<Vec<f64>> {
    let m = points.len();
    if m < 2 {
        return Err(Error::TooFewPoints(m));
    }
    match scheme {
        Parameterization::Uniform => Ok((0..m)
            .map(|k| {
                if k == m - 1 {
                    1.0
                } else {
                    k as f64 / (m - 1) as f64
                }
            })
            .collect()),
        Parameterization::ChordLength => {
            let mut acc = Vec::with_capacity(m);
            let mut total = 0.0;
            acc.push(0.0);
            for w in points.windows(2) {
                total += w[0].distance(w[1]);
                acc.push(total);
            }
            if total <= 0.0 {
                return Err(Error::FitFailed("all points coincide".into()));
            }
            let mut t: Vec<f64> = acc.into_iter().map(|d| d / total).collect();
            t[m - 1] = 1.0;
            Ok(t)
        }
    }
}

/// Solves `min ||A X - Q||` for two right-hand sides (x and y) by SVD.
/// Fails when `A` is numerically rank deficient.
pub(crate) fn solve_control_points(a: DMatrix<f64>, points: &[Point2]) -> Result<Vec<Point2>> {
    let cols = a.ncols();
    let rhs = DMatrix::from_fn(
        points.len(),
        2,
        |r, c| if c == 0 { points[r].x } else { points[r].y },
    );
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smin.is_nan() || smin <= smax * 1e-10 {
        return Err(Error::FitFailed(format!(
            "rank-deficient basis matrix (singular values {smin:e} / {smax:e})"
        )));
    }
    let sol = svd
        .solve(&rhs, 0.0)
        .map_err(|e| Error::FitFailed(e.to_string()))?;
    Ok((0..cols).map(|i| Point2::new(sol[(i, 0)], sol[(i, 1)])).collect())
}

fn bspline_design(params: &[f64], template: &BSplineCurve) -> Result<DMatrix<f64>> {
    let cols = template.control_points().len();
    let mut a = DMatrix::zeros(params.len(), cols);
    for (r, &u) in params.iter().enumerate() {
        let (first, w) = template.basis_row(u)?;
        for (j, wj) in w.iter().enumerate() {
            a[(r, first + j)] = *wj;
        }
    }
    Ok(a)
}

/// Least-squares B-spline through `points` at explicit parameters.
pub fn fit_bspline_at_parameters(
    points: &[Point2],
    params: &[f64],
    n_control: usize,
    degree: usize,
) -> Result<FitReport> {
    if points.len() != params.len() {
        return Err(Error::InvalidArgument(format!(
            "{} points but {} parameters",
            points.len(),
            params.len()
        )));
    }
    if points.len() < n_control {
        return Err(Error::FitFailed(format!(
            "{} points cannot determine {n_control} control points",
            points.len()
        )));
    }
    if !points.iter().all(|p| p.is_finite()) {
        return Err(Error::NonFinite("fit input point"));
    }
    let template = BSplineCurve::new(degree, vec![Point2::ZERO; n_control])?;
    let a = bspline_design(params, &template)?;
    let cps = solve_control_points(a, points)?;
    let curve = template.with_control_points(cps)?;
    let residuals = points
        .iter()
        .zip(params)
        .map(|(q, &u)| curve.evaluate(u).map(|c| c.distance(*q)))
        .collect::<Result<Vec<_>>>()?;
    let rms_error = (residuals.iter().map(|r| r * r).sum::<f64>() / residuals.len() as f64).sqrt();
    let max_error = residuals.iter().copied().fold(0.0, f64::max);
    Ok(FitReport {
        curve,
        rms_error,
        max_error,
        residuals,
    })
}

/// Fits ordered lane points with a clamped quasi-uniform B-spline by linear
/// least squares on the basis matrix. No endpoint constraints are imposed.
pub fn fit_bspline_least_squares(points: &Polyline, cfg: &FitConfig) -> Result<FitReport> {
    cfg.validate()?;
    let params = parameterize(points.points(), cfg.parameterization)?;
    fit_bspline_at_parameters(points.points(), &params, cfg.n_control, cfg.degree)
}

/// Least-squares Bézier of the given degree at explicit parameters.
pub fn fit_bezier_at_parameters(points: &[Point2], params: &[f64], degree: usize) -> Result<BezierCurve> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    if points.len() != params.len() || points.len() < degree + 1 {
        return Err(Error::FitFailed(format!(
            "{} points / {} parameters for a degree-{degree} Bezier",
            points.len(),
            params.len()
        )));
    }
    let template = BezierCurve::new(vec![Point2::ZERO; degree + 1])?;
    let mut a = DMatrix::zeros(points.len(), degree + 1);
    for (r, &u) in params.iter().enumerate() {
        for (j, w) in template.bernstein_weights(u)?.into_iter().enumerate() {
            a[(r, j)] = w;
        }
    }
    BezierCurve::new(solve_control_points(a, points)?)
}
