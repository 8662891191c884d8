//! Dataset annotations and ground-truth curve generation.

mod culane;
mod tusimple;

pub use culane::{parse_culane_frame, parse_culane_lines, write_culane_lines, CULANE_SIZE};
pub use tusimple::{
    frame_to_tusimple, parse_tusimple_line, parse_tusimple_record, tusimple_x_at_rows, TusimpleRecord,
    TUSIMPLE_SIZE,
};

use serde::{Deserialize, Serialize};

use crate::curve::BSplineCurve;
use crate::error::{Error, Result};
use crate::fit::{fit_bspline_least_squares, FitConfig};
use crate::point::Polyline;

/// Image size in pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageSize {
    pub width: u32,
    pub height: u32,
}

/// One labeled lane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaneAnnotation {
    /// Points as they appear in the label file.
    pub raw_points: Polyline,
    pub fitted: Option<BSplineCurve>,
    pub fit_rms: Option<f64>,
    /// Set when the lane had too few points for the requested control
    /// point count or degree.
    #[serde(default)]
    pub reduced_fit: bool,
    pub source_file: String,
}

impl LaneAnnotation {
    pub fn new(raw_points: Polyline, source_file: impl Into<String>) -> Self {
        Self {
            raw_points,
            fitted: None,
            fit_rms: None,
            reduced_fit: false,
            source_file: source_file.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub image_size: ImageSize,
    pub lanes: Vec<LaneAnnotation>,
    pub scenario_tag: Option<String>,
}

/// Orders lane points bottom to top (decreasing image `y`), so the first
/// point is the start point. Idempotent.
pub fn canonicalize_lane(points: &Polyline) -> Polyline {
    if points.first().y < points.last().y {
        points.reversed()
    } else {
        points.clone()
    }
}

impl Frame {
    /// Copy with every lane canonicalized.
    pub fn canonicalized(&self) -> Frame {
        let mut f = self.clone();
        for lane in &mut f.lanes {
            lane.raw_points = canonicalize_lane(&lane.raw_points);
        }
        f
    }

    /// Copy keeping only points inside `[0, W] x [0, H]`; lanes left with
    /// fewer than two points are dropped.
    pub fn clipped(&self) -> Frame {
        let (w, h) = (self.image_size.width as f64, self.image_size.height as f64);
        let lanes = self
            .lanes
            .iter()
            .filter_map(|lane| {
                let pts: Vec<_> = lane
                    .raw_points
                    .points()
                    .iter()
                    .copied()
                    .filter(|p| (0.0..=w).contains(&p.x) && (0.0..=h).contains(&p.y))
                    .collect();
                Polyline::new(pts).ok().map(|raw_points| LaneAnnotation {
                    raw_points,
                    ..lane.clone()
                })
            })
            .collect();
        Frame {
            lanes,
            ..self.clone()
        }
    }
}

/// Fits every lane of `frame` with a B-spline.
///
/// Fitting uses a canonicalized copy of the raw points; `raw_points` are
/// left as they were. Lanes with fewer points than `cfg.n_control` get as
/// many control points as they have points (and the degree is lowered to
/// match), and are flagged as reduced.
pub fn build_ground_truth(frame: &Frame, cfg: &FitConfig) -> Result<Frame> {
    cfg.validate()?;
    let mut out = frame.clone();
    for lane in &mut out.lanes {
        let pts = canonicalize_lane(&lane.raw_points);
        let n_control = cfg.n_control.min(pts.len());
        let lane_cfg = FitConfig {
            n_control,
            degree: cfg.degree.min(n_control - 1),
            ..*cfg
        };
        let report = fit_bspline_least_squares(&pts, &lane_cfg).map_err(|e| match e {
            Error::FitFailed(m) => Error::FitFailed(format!("{}: {m}", lane.source_file)),
            other => other,
        })?;
        lane.fitted = Some(report.curve);
        lane.fit_rms = Some(report.rms_error);
        lane.reduced_fit = lane_cfg != *cfg;
    }
    Ok(out)
}
