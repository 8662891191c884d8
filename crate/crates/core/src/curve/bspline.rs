use serde::{Deserialize, Serialize};

use super::knots::KnotVector;
use super::LaneCurve;
use crate::error::{Error, Result};
use crate::point::Point2;

/// Clamped quasi-uniform B-spline curve.
///
/// Serializes as `{"degree": p, "control_points": [[x, y], ...], "knots": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBSpline", into = "RawBSpline")]
pub struct BSplineCurve {
    degree: usize,
    control_points: Vec<Point2>,
    knots: KnotVector,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBSpline {
    degree: usize,
    control_points: Vec<Point2>,
    knots: Vec<f64>,
}

impl TryFrom<RawBSpline> for BSplineCurve {
    type Error = Error;
    fn try_from(raw: RawBSpline) -> Result<Self> {
        BSplineCurve::with_knots(raw.degree, raw.control_points, raw.knots)
    }
}

impl From<BSplineCurve> for RawBSpline {
    fn from(c: BSplineCurve) -> Self {
        RawBSpline {
            degree: c.degree,
            control_points: c.control_points,
            knots: c.knots.values().to_vec(),
        }
    }
}

fn check_points(degree: usize, control_points: &[Point2]) -> Result<()> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    if control_points.len() < degree + 1 {
        return Err(Error::TooFewControlPoints {
            count: control_points.len(),
            degree,
        });
    }
    if !control_points.iter().all(|p| p.is_finite()) {
        return Err(Error::NonFinite("control point"));
    }
    Ok(())
}

impl BSplineCurve {
    /// Curve of the given degree with a clamped uniform knot vector built
    /// for `control_points`.
    pub fn new(degree: usize, control_points: Vec<Point2>) -> Result<Self> {
        check_points(degree, &control_points)?;
        let knots = KnotVector::clamped_uniform(control_points.len() - 1, degree)?;
        Ok(Self {
            degree,
            control_points,
            knots,
        })
    }

    /// Like [`BSplineCurve::new`], but with explicit knots that must match
    /// the clamped quasi-uniform layout.
    pub fn with_knots(degree: usize, control_points: Vec<Point2>, knots: Vec<f64>) -> Result<Self> {
        check_points(degree, &control_points)?;
        let knots = KnotVector::from_values(knots, degree, control_points.len() - 1)?;
        Ok(Self {
            degree,
            control_points,
            knots,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn control_points(&self) -> &[Point2] {
        &self.control_points
    }

    pub fn knots(&self) -> &KnotVector {
        &self.knots
    }

    /// Same degree and knots, new control points.
    pub fn with_control_points(&self, control_points: Vec<Point2>) -> Result<Self> {
        if control_points.len() != self.control_points.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} control points, got {}",
                self.control_points.len(),
                control_points.len()
            )));
        }
        check_points(self.degree, &control_points)?;
        Ok(Self {
            degree: self.degree,
            control_points,
            knots: self.knots.clone(),
        })
    }

    /// `(first_index, weights)`: the curve point at `u` is
    /// `Σ_j weights[j] * P[first_index + j]`.
    pub fn basis_row(&self, u: f64) -> Result<(usize, Vec<f64>)> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::ParameterOutOfRange(u));
        }
        let span = self.knots.find_span(u);
        Ok((span - self.degree, self.knots.nonzero_basis(span, u)))
    }

    /// `C(u) = Σ N_{i,p}(u) P_i`, summing only the `p + 1` non-zero terms.
    pub fn evaluate(&self, u: f64) -> Result<Point2> {
        let (first, weights) = self.basis_row(u)?;
        let mut acc = Point2::ZERO;
        for (j, w) in weights.iter().enumerate() {
            acc += self.control_points[first + j] * *w;
        }
        Ok(acc)
    }
}

impl LaneCurve for BSplineCurve {
    fn point_at(&self, u: f64) -> Result<Point2> {
        self.evaluate(u)
    }

    fn start_point(&self) -> Point2 {
        self.control_points[0]
    }
}

/// Free-function form of [`BSplineCurve::evaluate`].
pub fn evaluate(curve: &BSplineCurve, u: f64) -> Result<Point2> {
    curve.evaluate(u)
}
