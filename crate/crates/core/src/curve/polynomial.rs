use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::LaneCurve;
use crate::error::{Error, Result};
use crate::point::Point2;

/// Lane modelled as `x = Σ_k c_k y^k` over `y_start..=y_end`.
///
/// The curve parameter `t ∈ [0, 1]` maps linearly to `y`, so `t = 0` is the
/// top of the lane (smaller image `y`) and `t = 1` the bottom.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPolynomial", into = "RawPolynomial")]
pub struct PolynomialCurve {
    coefficients: Vec<f64>,
    y_start: f64,
    y_end: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolynomial {
    coefficients: Vec<f64>,
    y_start: f64,
    y_end: f64,
}

impl TryFrom<RawPolynomial> for PolynomialCurve {
    type Error = Error;
    fn try_from(raw: RawPolynomial) -> Result<Self> {
        PolynomialCurve::new(raw.coefficients, raw.y_start, raw.y_end)
    }
}

impl From<PolynomialCurve> for RawPolynomial {
    fn from(c: PolynomialCurve) -> Self {
        RawPolynomial {
            coefficients: c.coefficients,
            y_start: c.y_start,
            y_end: c.y_end,
        }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl PolynomialCurve {
    pub fn new(coefficients: Vec<f64>, y_start: f64, y_end: f64) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidArgument("polynomial needs a coefficient".into()));
        }
        if !coefficients.iter().all(|c| c.is_finite()) {
            return Err(Error::NonFinite("polynomial coefficient"));
        }
        if !(y_start.is_finite() && y_end.is_finite()) {
            return Err(Error::NonFinite("polynomial y range"));
        }
        if y_start >= y_end {
            return Err(Error::InvalidArgument(format!(
                "y_start {y_start} must be below y_end {y_end}"
            )));
        }
        Ok(Self {
            coefficients,
            y_start,
            y_end,
        })
    }

    /// Builds the curve from coefficients of the normalized variable
    /// `s = (y - y_start) / (y_end - y_start)`, i.e. `x = Σ_j a_j s^j`.
    pub fn from_normalized(normalized: &[f64], y_start: f64, y_end: f64) -> Result<Self> {
        if y_start >= y_end {
            return Err(Error::InvalidArgument(format!(
                "y_start {y_start} must be below y_end {y_end}"
            )));
        }
        let len = y_end - y_start;
        let deg = normalized.len().saturating_sub(1);
        let mut c = vec![0.0; normalized.len()];
        for (j, a) in normalized.iter().enumerate() {
            let scale = a / len.powi(j as i32);
            for (k, ck) in c.iter_mut().enumerate().take(j + 1) {
                *ck += scale * binomial(j, k) * (-y_start).powi((j - k) as i32);
            }
        }
        debug_assert_eq!(c.len(), deg + 1);
        Self::new(c, y_start, y_end)
    }

    /// Coefficients in the normalized variable; see [`Self::from_normalized`].
    pub fn normalized_coefficients(&self) -> Vec<f64> {
        let len = self.y_end - self.y_start;
        let mut a = vec![0.0; self.coefficients.len()];
        for (k, ck) in self.coefficients.iter().enumerate() {
            for (j, aj) in a.iter_mut().enumerate().take(k + 1) {
                *aj += ck * binomial(k, j) * self.y_start.powi((k - j) as i32);
            }
        }
        for (j, aj) in a.iter_mut().enumerate() {
            *aj *= len.powi(j as i32);
        }
        a
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn y_start(&self) -> f64 {
        self.y_start
    }

    pub fn y_end(&self) -> f64 {
        self.y_end
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn x_at(&self, y: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * y + c)
    }

    pub fn evaluate(&self, t: f64) -> Result<Point2> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::ParameterOutOfRange(t));
        }
        let y = self.y_start + t * (self.y_end - self.y_start);
        let p = Point2::new(self.x_at(y), y);
        if !p.is_finite() {
            return Err(Error::NonFinite("polynomial value"));
        }
        Ok(p)
    }

    /// Least-squares fit of `x(y)` of the given degree over the y-range of
    /// `points`.
    pub fn fit_least_squares(points: &[Point2], degree: usize) -> Result<Self> {
        if points.len() < degree + 1 {
            return Err(Error::FitFailed(format!(
                "{} points cannot determine a degree-{degree} polynomial",
                points.len()
            )));
        }
        let y_min = points.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
        let y_max = points.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
        if y_max.partial_cmp(&y_min) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::FitFailed("points span no vertical extent".into()));
        }
        let len = y_max - y_min;
        let a = DMatrix::from_fn(points.len(), degree + 1, |r, c| {
            ((points[r].y - y_min) / len).powi(c as i32)
        });
        let b = DVector::from_iterator(points.len(), points.iter().map(|p| p.x));
        let svd = a.svd(true, true);
        let smax = svd.singular_values.max();
        if svd.singular_values.min() <= smax * 1e-12 {
            return Err(Error::FitFailed("rank-deficient Vandermonde matrix".into()));
        }
        let sol = svd
            .solve(&b, smax * 1e-14)
            .map_err(|e| Error::FitFailed(e.to_string()))?;
        Self::from_normalized(sol.as_slice(), y_min, y_max)
    }
}

impl LaneCurve for PolynomialCurve {
    fn point_at(&self, t: f64) -> Result<Point2> {
        self.evaluate(t)
    }

    /// Lanes start at the bottom of the image, which is `t = 1` here.
    fn start_point(&self) -> Point2 {
        Point2::new(self.x_at(self.y_end), self.y_end)
    }
}

pub fn evaluate_polynomial(curve: &PolynomialCurve, t: f64) -> Result<Point2> {
    curve.evaluate(t)
}
