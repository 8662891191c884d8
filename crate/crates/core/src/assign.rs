//! Border reference points and start-point label assignment.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::Point2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Border {
    Left,
    Bottom,
    Right,
}

/// Fixed proposal anchors along the left, bottom and right image borders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferencePointSet {
    pub points: Vec<Point2>,
    pub border_of: Vec<Border>,
}

impl ReferencePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn count(&self, border: Border) -> usize {
        self.border_of.iter().filter(|&&b| b == border).count()
    }
}

/// `n_p / 4` points on `x = 0`, `n_p / 2` on `y = height`, `n_p / 4` on
/// `x = width`, each border split into equal cells with a point at each
/// cell center.
///
/// Order: left border top to bottom, bottom border left to right, right
/// border bottom to top.
pub fn make_reference_points(n_p: usize, width: f64, height: f64) -> Result<ReferencePointSet> {
    if n_p == 0 || !n_p.is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!(
            "number of reference points must be a positive multiple of 4, got {n_p}"
        )));
    }
    if !(width.is_finite() && height.is_finite() && width > 0.0 && height > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "image size must be positive, got {width}x{height}"
        )));
    }
    let side = n_p / 4;
    let bottom = n_p / 2;
    let cell = |j: usize, count: usize, extent: f64| (j as f64 + 0.5) * extent / count as f64;

    let mut points = Vec::with_capacity(n_p);
    let mut border_of = Vec::with_capacity(n_p);
    for j in 0..side {
        points.push(Point2::new(0.0, cell(j, side, height)));
        border_of.push(Border::Left);
    }
    for j in 0..bottom {
        points.push(Point2::new(cell(j, bottom, width), height));
        border_of.push(Border::Bottom);
    }
    for j in (0..side).rev() {
        points.push(Point2::new(width, cell(j, side, height)));
        border_of.push(Border::Right);
    }
    Ok(ReferencePointSet { points, border_of })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assignment {
    pub gt_index: usize,
    pub proposal_indices: Vec<usize>,
    pub distances: Vec<f64>,
}

/// For each ground-truth start point, the `k` closest reference points
/// (ties to the lower index). A proposal may be assigned to several
/// ground truths.
pub fn assign_labels(gt_starts: &[Point2], refs: &ReferencePointSet, k: usize) -> Result<Vec<Assignment>> {
    if refs.is_empty() {
        return Err(Error::InvalidArgument("empty reference point set".into()));
    }
    if k > refs.len() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} exceeds {} reference points",
            refs.len()
        )));
    }
    gt_starts
        .iter()
        .enumerate()
        .map(|(gt_index, &s)| {
            if !s.is_finite() {
                return Err(Error::NonFinite("start point"));
            }
            let mut d: Vec<(usize, f64)> = refs.points.iter().map(|&r| r.distance(s)).enumerate().collect();
            // stable: equal distances keep index order
            d.sort_by(|a, b| a.1.total_cmp(&b.1));
            d.truncate(k);
            Ok(Assignment {
                gt_index,
                proposal_indices: d.iter().map(|e| e.0).collect(),
                distances: d.iter().map(|e| e.1).collect(),
            })
        })
        .collect()
}
