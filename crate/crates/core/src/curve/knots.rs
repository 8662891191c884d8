//! Clamped quasi-uniform knot vectors and the Cox–de Boor basis.

use serde::Serialize;

use crate::error::{Error, Result};

/// Relative tolerance used when validating uniform interior spacing of
/// knot vectors read from external sources.
const UNIFORM_TOL: f64 = 1e-9;

/// Knot vector of a clamped quasi-uniform B-spline of degree `p`.
///
/// The first and last `p + 1` knots are exactly 0 and 1; the interior knots
/// are evenly spaced in between.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnotVector {
    values: Vec<f64>,
    #[serde(skip)]
    degree: usize,
}

impl KnotVector {
    /// Builds the knot vector for `n + 1` control points of degree `p`.
    ///
    /// Interior knot `j` (1-based, `n - p` of them) sits at `j / (n - p + 1)`.
    pub fn clamped_uniform(n: usize, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::ZeroDegree);
        }
        if n < p {
            return Err(Error::TooFewControlPoints {
                count: n + 1,
                degree: p,
            });
        }
        let interior = n - p;
        let denom = (interior + 1) as f64;
        let mut values = Vec::with_capacity(n + p + 2);
        values.extend(std::iter::repeat_n(0.0, p + 1));
        values.extend((1..=interior).map(|j| j as f64 / denom));
        values.extend(std::iter::repeat_n(1.0, p + 1));
        Ok(Self { values, degree: p })
    }

    /// Validates externally supplied knots against the clamped quasi-uniform
    /// layout for `n + 1` control points.
    pub fn from_values(values: Vec<f64>, degree: usize, n: usize) -> Result<Self> {
        let expected = KnotVector::clamped_uniform(n, degree)?;
        if values.len() != expected.values.len() {
            return Err(Error::InvalidKnots(format!(
                "expected {} knots, got {}",
                expected.values.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("knot"));
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidKnots("knots must be non-decreasing".into()));
        }
        let p = degree;
        let m = values.len() - 1;
        if values[..=p].iter().any(|&v| v != 0.0) || values[m - p..].iter().any(|&v| v != 1.0) {
            return Err(Error::InvalidKnots("knots must be clamped to [0, 1]".into()));
        }
        for (got, want) in values.iter().zip(&expected.values) {
            if (got - want).abs() > UNIFORM_TOL {
                return Err(Error::InvalidKnots(
                    "interior knots must be uniformly spaced".into(),
                ));
            }
        }
        Ok(Self { values, degree })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index `n` of the last control point this knot vector supports.
    pub fn last_control_index(&self) -> usize {
        self.values.len() - self.degree - 2
    }

    /// Knot span index `i` with `u_i <= u < u_{i+1}`, restricted to
    /// `p..=n`. At `u = 1` the last non-empty span is returned.
    pub fn find_span(&self, u: f64) -> usize {
        let p = self.degree;
        let n = self.last_control_index();
        if u >= self.values[n + 1] {
            return n;
        }
        if u <= self.values[p] {
            return p;
        }
        // largest i in [p, n] with values[i] <= u
        let (mut lo, mut hi) = (p, n + 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if u < self.values[mid] {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo
    }

    /// The `p + 1` basis functions that are non-zero on `span`, evaluated
    /// at `u`. Entry `j` holds `N_{span - p + j, p}(u)`.
    pub fn nonzero_basis(&self, span: usize, u: f64) -> Vec<f64> {
        let p = self.degree;
        let k = &self.values;
        let mut n = vec![0.0; p + 1];
        let mut left = vec![0.0; p + 1];
        let mut right = vec![0.0; p + 1];
        n[0] = 1.0;
        for j in 1..=p {
            left[j] = u - k[span + 1 - j];
            right[j] = k[span + j] - u;
            let mut saved = 0.0;
            for r in 0..j {
                let denom = right[r + 1] + left[j - r];
                let temp = if denom == 0.0 { 0.0 } else { n[r] / denom };
                n[r] = saved + right[r + 1] * temp;
                saved = left[j - r] * temp;
            }
            n[j] = saved;
        }
        n
    }
}

/// `N_{i,p}(u)` by the Cox–de Boor recursion.
///
/// `p` may be lower than the knot vector's own degree; the recursion only
/// needs `i + p + 1` to be a valid knot index. Any `0/0` ratio is taken as
/// 0. The last non-empty knot span is treated as closed on the right so
/// that the final basis function equals 1 at `u = 1`.
pub fn basis(i: usize, p: usize, u: f64, knots: &KnotVector) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::ParameterOutOfRange(u));
    }
    let k = knots.values();
    let max = k.len().saturating_sub(p + 2);
    if i + p + 1 >= k.len() {
        return Err(Error::BasisIndexOutOfRange { index: i, max });
    }
    let last_span = k
        .windows(2)
        .rposition(|w| w[0] < w[1])
        .ok_or_else(|| Error::InvalidKnots("no non-empty span".into()))?;
    Ok(cox_de_boor(i, p, u, k, last_span))
}

fn cox_de_boor(i: usize, p: usize, u: f64, k: &[f64], last_span: usize) -> f64 {
    if p == 0 {
        let inside = k[i] <= u && u < k[i + 1];
        let closed_end = i == last_span && u == k[i + 1];
        return if inside || closed_end { 1.0 } else { 0.0 };
    }
    let mut value = 0.0;
    let d1 = k[i + p] - k[i];
    if d1 != 0.0 {
        value += (u - k[i]) / d1 * cox_de_boor(i, p - 1, u, k, last_span);
    }
    let d2 = k[i + p + 1] - k[i + 1];
    if d2 != 0.0 {
        value += (k[i + p + 1] - u) / d2 * cox_de_boor(i + 1, p - 1, u, k, last_span);
    }
    value
}

/// Convenience wrapper for [`KnotVector::clamped_uniform`].
pub fn make_clamped_uniform_knots(n: usize, p: usize) -> Result<KnotVector> {
    KnotVector::clamped_uniform(n, p)
}
