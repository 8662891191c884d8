use serde::{Deserialize, Serialize};

use super::LaneCurve;
use crate::error::{Error, Result};
use crate::point::Point2;

/// Bézier curve of degree `control_points.len() - 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBezier", into = "RawBezier")]
pub struct BezierCurve {
    control_points: Vec<Point2>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBezier {
    control_points: Vec<Point2>,
}

impl TryFrom<RawBezier> for BezierCurve {
    type Error = Error;
    fn try_from(raw: RawBezier) -> Result<Self> {
        BezierCurve::new(raw.control_points)
    }
}

impl From<BezierCurve> for RawBezier {
    fn from(c: BezierCurve) -> Self {
        RawBezier {
            control_points: c.control_points,
        }
    }
}

impl BezierCurve {
    pub fn new(control_points: Vec<Point2>) -> Result<Self> {
        if control_points.len() < 2 {
            return Err(Error::TooFewControlPoints {
                count: control_points.len(),
                degree: 1,
            });
        }
        if !control_points.iter().all(|p| p.is_finite()) {
            return Err(Error::NonFinite("control point"));
        }
        Ok(Self { control_points })
    }

    pub fn degree(&self) -> usize {
        self.control_points.len() - 1
    }

    pub fn control_points(&self) -> &[Point2] {
        &self.control_points
    }

    /// Bernstein polynomials `B_{i,k}(u)` for `i = 0..=k`.
    pub fn bernstein_weights(&self, u: f64) -> Result<Vec<f64>> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::ParameterOutOfRange(u));
        }
        let k = self.degree();
        let v = 1.0 - u;
        let mut binom = 1.0;
        let mut out = Vec::with_capacity(k + 1);
        for i in 0..=k {
            out.push(binom * u.powi(i as i32) * v.powi((k - i) as i32));
            binom = binom * (k - i) as f64 / (i + 1) as f64;
        }
        Ok(out)
    }

    pub fn evaluate(&self, u: f64) -> Result<Point2> {
        let w = self.bernstein_weights(u)?;
        Ok(self
            .control_points
            .iter()
            .zip(&w)
            .fold(Point2::ZERO, |acc, (p, b)| acc + *p * *b))
    }
}

impl LaneCurve for BezierCurve {
    fn point_at(&self, u: f64) -> Result<Point2> {
        self.evaluate(u)
    }

    fn start_point(&self) -> Point2 {
        self.control_points[0]
    }
}

pub fn evaluate_bezier(curve: &BezierCurve, u: f64) -> Result<Point2> {
    curve.evaluate(u)
}
