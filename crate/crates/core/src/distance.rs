//! Curve-to-curve distance on sampled polylines.
//!
//! The distance from a point to a curve is the distance to the nearest
//! segment of the curve's polyline: the perpendicular height when the foot
//! of the perpendicular falls inside the segment, otherwise the distance to
//! the nearer endpoint. Directed curve distances average this over the
//! sample points of the source curve, and the symmetric distance adds both
//! directions so that a curve collapsing onto a single point of the other
//! is still penalized.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{Point2, Polyline};
use crate::EXTENDED_RADIUS;

/// Half-width by which a lane centerline is thickened when distances are
/// turned into IoU-like scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ExtendedRadius(f64);

impl ExtendedRadius {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::NonFinite("extended radius"));
        }
        if r <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "extended radius must be positive, got {r}"
            )));
        }
        Ok(Self(r))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Default for ExtendedRadius {
    fn default() -> Self {
        Self(EXTENDED_RADIUS)
    }
}

impl TryFrom<f64> for ExtendedRadius {
    type Error = Error;
    fn try_from(r: f64) -> Result<Self> {
        ExtendedRadius::new(r)
    }
}

impl From<ExtendedRadius> for f64 {
    fn from(r: ExtendedRadius) -> f64 {
        r.0
    }
}

/// Closest point of a polyline to a query point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearestSegment {
    pub distance: f64,
    /// Index `s` of the segment `points[s]..points[s + 1]`.
    pub segment: usize,
    /// Position of the foot along the segment, in `[0, 1]`.
    pub t: f64,
    pub foot: Point2,
}

/// Squared distance from `p` to segment `a..b` and the clamped foot
/// parameter. A zero-length segment behaves like the point `a`.
#[inline]
fn segment_dist_sq(p: Point2, a: Point2, b: Point2) -> (f64, f64) {
    let ab = b - a;
    let len_sq = ab.norm_squared();
    let t = if len_sq > 0.0 {
        ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let foot = a + ab * t;
    let d2 = p.distance_squared(foot);
    // rounding in t can leave a vertex slightly off its own segment
    let (da, db) = (p.distance_squared(a), p.distance_squared(b));
    if da <= d2 && da <= db {
        (da, 0.0)
    } else if db <= d2 {
        (db, 1.0)
    } else {
        (d2, t)
    }
}

/// Distance from `p` to the segment `a..b`.
pub fn point_to_segment(p: Point2, a: Point2, b: Point2) -> f64 {
    segment_dist_sq(p, a, b).0.sqrt()
}

/// Nearest segment of `poly` to `p`. Ties go to the lowest segment index.
pub fn nearest_segment(p: Point2, poly: &Polyline) -> NearestSegment {
    let pts = poly.points();
    let mut best = (f64::INFINITY, 0usize, 0.0);
    for s in 0..pts.len() - 1 {
        let (d2, t) = segment_dist_sq(p, pts[s], pts[s + 1]);
        if d2 < best.0 {
            best = (d2, s, t);
        }
    }
    let (d2, segment, t) = best;
    NearestSegment {
        distance: d2.sqrt(),
        segment,
        t,
        foot: pts[segment].lerp(pts[segment + 1], t),
    }
}

pub fn point_to_polyline(p: Point2, poly: &Polyline) -> f64 {
    nearest_segment(p, poly).distance
}

/// Per-point distances from every point of `a` to the polyline `b`.
pub fn point_distances(a: &Polyline, b: &Polyline) -> Vec<f64> {
    a.points().iter().map(|&p| point_to_polyline(p, b)).collect()
}

/// Mean distance from the points of `a` to the polyline `b`.
pub fn directed_distance(a: &Polyline, b: &Polyline) -> f64 {
    let d = point_distances(a, b);
    d.iter().sum::<f64>() / d.len() as f64
}

/// Maps a distance to an IoU-like score: `(2r - d) / (d + 2r)`.
///
/// 1 at `d = 0`, 0 at `d = 2r`, tending to -1 as `d` grows.
pub fn normalize_distance(d: f64, r: ExtendedRadius) -> Result<f64> {
    if d.is_nan() {
        return Err(Error::NonFinite("distance"));
    }
    if d < 0.0 {
        return Err(Error::NegativeDistance(d));
    }
    Ok(normalized(d, r.get()))
}

#[inline]
pub(crate) fn normalized(d: f64, r: f64) -> f64 {
    if d.is_infinite() {
        return -1.0;
    }
    (2.0 * r - d) / (d + 2.0 * r)
}

/// Mean of per-point normalized distances from `a` to `b`.
pub fn normalized_directed(a: &Polyline, b: &Polyline, r: ExtendedRadius) -> f64 {
    let d = point_distances(a, b);
    d.iter().map(|&di| normalized(di, r.get())).sum::<f64>() / d.len() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub d_a_to_b: f64,
    pub d_b_to_a: f64,
    pub d_symmetric: f64,
    /// Mean per-point normalized distance from `a` to `b`.
    pub n_a_to_b: f64,
    pub n_b_to_a: f64,
}

/// Both directed distances, their sum, and the normalized directed scores
/// at the default extended radius.
pub fn symmetric_distance(a: &Polyline, b: &Polyline) -> DistanceReport {
    symmetric_distance_with_radius(a, b, ExtendedRadius::default())
}

pub fn symmetric_distance_with_radius(a: &Polyline, b: &Polyline, r: ExtendedRadius) -> DistanceReport {
    let ab = point_distances(a, b);
    let ba = point_distances(b, a);
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let nmean = |v: &[f64]| v.iter().map(|&d| normalized(d, r.get())).sum::<f64>() / v.len() as f64;
    let d_a_to_b = mean(&ab);
    let d_b_to_a = mean(&ba);
    DistanceReport {
        d_a_to_b,
        d_b_to_a,
        d_symmetric: d_a_to_b + d_b_to_a,
        n_a_to_b: nmean(&ab),
        n_b_to_a: nmean(&ba),
    }
}
