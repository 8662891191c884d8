//! Lane curve representations and their sampling into polylines.
//!
//! [`BSplineCurve`] is the lane representation. [`BezierCurve`] and
//! [`PolynomialCurve`] exist for comparison experiments.

mod bezier;
mod bspline;
mod knots;
mod polynomial;

pub use bezier::{evaluate_bezier, BezierCurve};
pub use bspline::{evaluate, BSplineCurve};
pub use knots::{basis, make_clamped_uniform_knots, KnotVector};
pub use polynomial::{evaluate_polynomial, PolynomialCurve};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{Point2, Polyline};

/// A parametric lane curve over `[0, 1]`.
pub trait LaneCurve {
    fn point_at(&self, u: f64) -> Result<Point2>;

    /// The point lanes are anchored at (bottom of the image for lanes).
    fn start_point(&self) -> Point2;

    fn sample(&self, n: usize) -> Result<Polyline> {
        sample(self, n)
    }
}

/// Samples `n` points at `u = k / (n - 1)`, `k = 0..n`.
pub fn sample<C: LaneCurve + ?Sized>(curve: &C, n: usize) -> Result<Polyline> {
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let last = (n - 1) as f64;
    let points = (0..n)
        .map(|k| curve.point_at(if k == n - 1 { 1.0 } else { k as f64 / last }))
        .collect::<Result<Vec<_>>>()?;
    Polyline::new(points)
}

/// Any of the supported curve kinds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Curve {
    BSpline(BSplineCurve),
    Polynomial(PolynomialCurve),
    Bezier(BezierCurve),
}

impl Curve {
    pub fn kind(&self) -> CurveKind {
        match self {
            Curve::BSpline(_) => CurveKind::BSpline,
            Curve::Bezier(_) => CurveKind::Bezier,
            Curve::Polynomial(_) => CurveKind::Polynomial,
        }
    }
}

impl LaneCurve for Curve {
    fn point_at(&self, u: f64) -> Result<Point2> {
        match self {
            Curve::BSpline(c) => c.point_at(u),
            Curve::Bezier(c) => c.point_at(u),
            Curve::Polynomial(c) => c.point_at(u),
        }
    }

    fn start_point(&self) -> Point2 {
        match self {
            Curve::BSpline(c) => c.start_point(),
            Curve::Bezier(c) => c.start_point(),
            Curve::Polynomial(c) => c.start_point(),
        }
    }
}

impl From<BSplineCurve> for Curve {
    fn from(c: BSplineCurve) -> Self {
        Curve::BSpline(c)
    }
}

impl From<BezierCurve> for Curve {
    fn from(c: BezierCurve) -> Self {
        Curve::Bezier(c)
    }
}

impl From<PolynomialCurve> for Curve {
    fn from(c: PolynomialCurve) -> Self {
        Curve::Polynomial(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Polynomial,
    Bezier,
    BSpline,
}
