//! Seeded generators for synthetic lanes and scenes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::BSplineCurve;
use crate::error::Result;
use crate::point::{Point2, Polyline};
use crate::DEGREE;

pub type SynthRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SynthRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The 48 label rows `240, 250, ..., 710` of a 720-pixel-high image.
pub fn tusimple_rows() -> Vec<f64> {
    (0..48).map(|i| 240.0 + 10.0 * i as f64).collect()
}

/// Parameters of a gently curving lane `x(y) = x0 + slope (y - y0) +
/// amplitude sin(2π (y - y0) / period + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineLane {
    pub x0: f64,
    pub y0: f64,
    pub slope: f64,
    pub amplitude: f64,
    pub period: f64,
    pub phase: f64,
}

impl SineLane {
    pub fn random(rng: &mut impl Rng) -> Self {
        Self {
            x0: rng.gen_range(300.0..980.0),
            y0: 240.0,
            slope: rng.gen_range(-1.2..1.2),
            amplitude: rng.gen_range(5.0..40.0),
            period: rng.gen_range(600.0..1400.0),
            phase: rng.gen_range(0.0..std::f64::consts::TAU),
        }
    }

    pub fn x_at(&self, y: f64) -> f64 {
        let dy = y - self.y0;
        self.x0
            + self.slope * dy
            + self.amplitude * (std::f64::consts::TAU * dy / self.period + self.phase).sin()
    }

    /// Points at the given rows, in row order.
    pub fn points(&self, rows: &[f64]) -> Result<Polyline> {
        Polyline::new(rows.iter().map(|&y| Point2::new(self.x_at(y), y)).collect())
    }
}

/// A cubic B-spline lane with `n_control` control points running from the
/// bottom of a `width x height` image upwards, wiggling laterally.
pub fn random_lane_bspline(
    rng: &mut impl Rng,
    n_control: usize,
    width: f64,
    height: f64,
) -> Result<BSplineCurve> {
    let y_bottom = height * rng.gen_range(0.85..1.0);
    let y_top = height * rng.gen_range(0.3..0.5);
    let x_start = width * rng.gen_range(0.15..0.85);
    let drift = width * rng.gen_range(-0.25..0.25);
    let pts = (0..n_control)
        .map(|i| {
            let s = i as f64 / (n_control - 1) as f64;
            Point2::new(
                x_start + drift * s + rng.gen_range(-0.03..0.03) * width,
                y_bottom + (y_top - y_bottom) * s,
            )
        })
        .collect();
    BSplineCurve::new(DEGREE.min(n_control - 1), pts)
}

/// Control points anywhere in the box, in random order.
pub fn random_bspline(
    rng: &mut impl Rng,
    n_control: usize,
    degree: usize,
    extent: f64,
) -> Result<BSplineCurve> {
    let pts = (0..n_control)
        .map(|_| Point2::new(rng.gen_range(0.0..extent), rng.gen_range(0.0..extent)))
        .collect();
    BSplineCurve::new(degree, pts)
}

/// A lane and a perturbed copy: every control point is shifted laterally by
/// one common offset of 5 to 15 pixels (random side) plus up to ±3 pixels
/// of independent noise per coordinate.
pub fn random_lane_pair(rng: &mut impl Rng) -> Result<(BSplineCurve, BSplineCurve)> {
    let a = random_lane_bspline(rng, 8, 1640.0, 590.0)?;
    let side = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let offset = side * rng.gen_range(5.0..15.0);
    let pts = a
        .control_points()
        .iter()
        .map(|p| {
            Point2::new(
                p.x + offset + rng.gen_range(-3.0..3.0),
                p.y + rng.gen_range(-3.0..3.0),
            )
        })
        .collect();
    let b = a.with_control_points(pts)?;
    Ok((a, b))
}

/// Random points, anywhere in a `width x height` image.
pub fn random_points(rng: &mut impl Rng, n: usize, width: f64, height: f64) -> Vec<Point2> {
    (0..n)
        .map(|_| Point2::new(rng.gen_range(0.0..width), rng.gen_range(0.0..height)))
        .collect()
}
