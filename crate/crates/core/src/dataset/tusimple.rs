use serde::{Deserialize, Serialize};

use super::{Frame, ImageSize, LaneAnnotation};
use crate::error::{Error, Result};
use crate::point::{Point2, Polyline};

pub const TUSIMPLE_SIZE: ImageSize = ImageSize {
    width: 1280,
    height: 720,
};

/// One line of a label or submission file. Lanes are x positions at the
/// `h_samples` rows, negative where the lane is absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TusimpleRecord {
    pub lanes: Vec<Vec<f64>>,
    pub h_samples: Vec<f64>,
    pub raw_file: String,
}

impl TusimpleRecord {
    pub fn validate(&self) -> Result<()> {
        for (i, lane) in self.lanes.iter().enumerate() {
            if lane.len() != self.h_samples.len() {
                return Err(Error::Parse(format!(
                    "{}: lane {i} has {} entries for {} h_samples",
                    self.raw_file,
                    lane.len(),
                    self.h_samples.len()
                )));
            }
        }
        Ok(())
    }
}

pub fn parse_tusimple_record(json_text: &str) -> Result<TusimpleRecord> {
    let rec: TusimpleRecord = serde_json::from_str(json_text)?;
    rec.validate()?;
    Ok(rec)
}

/// Parses one JSON line into a frame. Absent entries are dropped; lanes
/// with fewer than two points left are dropped entirely.
pub fn parse_tusimple_line(json_text: &str) -> Result<Frame> {
    let rec = parse_tusimple_record(json_text)?;
    let lanes = rec
        .lanes
        .iter()
        .filter_map(|xs| {
            let pts: Vec<Point2> = xs
                .iter()
                .zip(&rec.h_samples)
                .filter(|(&x, _)| x >= 0.0)
                .map(|(&x, &y)| Point2::new(x, y))
                .collect();
            Polyline::new(pts).ok()
        })
        .map(|p| LaneAnnotation::new(p, rec.raw_file.clone()))
        .collect();
    Ok(Frame {
        image_size: TUSIMPLE_SIZE,
        lanes,
        scenario_tag: None,
    })
}

/// x of `lane` at each row, linearly interpolated between consecutive
/// points; `-2` for rows outside the lane's vertical extent.
pub fn tusimple_x_at_rows(lane: &Polyline, h_samples: &[f64]) -> Vec<f64> {
    let pts = lane.points();
    h_samples
        .iter()
        .map(|&h| {
            if let Some(p) = pts.iter().find(|p| p.y == h) {
                return p.x;
            }
            pts.windows(2)
                .find_map(|w| {
                    let (a, b) = (w[0], w[1]);
                    let (lo, hi) = if a.y < b.y { (a, b) } else { (b, a) };
                    (lo.y < h && h < hi.y).then(|| lo.x + (hi.x - lo.x) * (h - lo.y) / (hi.y - lo.y))
                })
                .unwrap_or(-2.0)
        })
        .collect()
}

/// Submission record for the lanes of `frame` at the given rows.
pub fn frame_to_tusimple(frame: &Frame, h_samples: &[f64], raw_file: &str) -> TusimpleRecord {
    TusimpleRecord {
        lanes: frame
            .lanes
            .iter()
            .map(|l| tusimple_x_at_rows(&l.raw_points, h_samples))
            .collect(),
        h_samples: h_samples.to_vec(),
        raw_file: raw_file.to_string(),
    }
}
