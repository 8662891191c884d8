//! Geometry toolkit for lane detection with B-spline curves.
//!
//! Lanes are clamped quasi-uniform B-splines sampled into polylines. On top
//! of that the crate provides a bidirectional point-to-segment curve
//! distance, the regression / length / start / classification losses built
//! from it, label assignment against border reference points, Fast NMS over
//! predicted curves, CULane- and Tusimple-style metrics, dataset readers,
//! least-squares ground-truth fitting, and a gradient-descent harness that
//! compares how polynomial, Bézier and B-spline lanes respond to a loss that
//! only disagrees on part of the lane.
//!
//! Runnable walkthroughs live in `examples/`; the `lanespline` binary
//! exposes the same functionality from the command line.

pub mod assign;
pub mod cli;
pub mod config;
pub mod curve;
pub mod dataset;
pub mod distance;
pub mod error;
pub mod fit;
pub mod loss;
pub mod metrics;
pub mod nms;
pub mod point;
pub mod synth;

pub use curve::{
    basis, evaluate, evaluate_bezier, evaluate_polynomial, make_clamped_uniform_knots, sample, BSplineCurve,
    BezierCurve, Curve, CurveKind, KnotVector, LaneCurve, PolynomialCurve,
};
pub use distance::{
    directed_distance, normalize_distance, point_to_polyline, symmetric_distance, DistanceReport,
    ExtendedRadius,
};
pub use error::{Error, Result};
pub use loss::{
    focal_cls_loss, length_loss, regression_loss, regression_loss_gradient, start_point_loss, total_loss,
    LossBreakdown, LossTerms, LossWeights,
};
pub use point::{curve_length, Point2, Polyline};

/// Sample points per curve for distance and loss computation.
pub const N_DIS: usize = 300;
/// Extended lane radius in pixels.
pub const EXTENDED_RADIUS: f64 = 9.0;
/// Number of lane proposals, one per border reference point.
pub const N_PROPOSALS: usize = 60;
/// Control points per lane.
pub const N_CONTROL: usize = 8;
/// B-spline degree.
pub const DEGREE: usize = 3;
/// Network input size `(width, height)`; informational only, geometry stays
/// in source-image pixels.
pub const INPUT_SIZE: (u32, u32) = (800, 320);
