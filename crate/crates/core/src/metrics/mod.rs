//! Lane detection benchmarks: mask-IoU F1 and per-row point accuracy.

mod raster;
mod tusimple;

pub use raster::{lane_iou, rasterize, scaled_stroke_width, Canvas, Mask, CULANE_STROKE_WIDTH, CULANE_WIDTH};
pub use tusimple::{
    lane_accuracy, tusimple_accuracy, tusimple_frame_counts, TusimpleConfig, TusimpleCounts, TusimpleResult,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::Polyline;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl EvalResult {
    pub fn from_counts(tp: usize, fp: usize, fn_: usize) -> Self {
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        Self {
            tp,
            fp,
            fn_,
            precision,
            recall,
            f1,
        }
    }

    /// Sums the counts of two results and recomputes the rates.
    pub fn merge(&self, other: &EvalResult) -> EvalResult {
        EvalResult::from_counts(self.tp + other.tp, self.fp + other.fp, self.fn_ + other.fn_)
    }
}

impl Default for EvalResult {
    fn default() -> Self {
        EvalResult::from_counts(0, 0, 0)
    }
}

/// IoU matching settings for one image size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IouConfig {
    pub canvas: Canvas,
    pub stroke_width: f64,
    pub iou_threshold: f64,
}

impl IouConfig {
    /// Stroke width scaled to the canvas, IoU threshold 0.5.
    pub fn for_canvas(width: u32, height: u32) -> Self {
        Self {
            canvas: Canvas { width, height },
            stroke_width: scaled_stroke_width(width),
            iou_threshold: 0.5,
        }
    }
}

/// `iou[p][g]` for every prediction / ground-truth pair.
pub fn iou_matrix(preds: &[Polyline], gts: &[Polyline], cfg: &IouConfig) -> Result<Vec<Vec<f64>>> {
    preds
        .iter()
        .map(|p| {
            gts.iter()
                .map(|g| lane_iou(p, g, cfg.stroke_width, cfg.canvas))
                .collect()
        })
        .collect()
}

/// One-to-one greedy matching on descending IoU, keeping pairs with
/// IoU at or above the threshold. Ties go to the lower prediction index,
/// then the lower ground-truth index. Returns `(pred, gt)` pairs.
pub fn greedy_match(iou: &[Vec<f64>], threshold: f64) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize, f64)> = iou
        .iter()
        .enumerate()
        .flat_map(|(p, row)| row.iter().enumerate().map(move |(g, &v)| (p, g, v)))
        .filter(|&(_, _, v)| v >= threshold)
        .collect();
    pairs.sort_by(|a, b| b.2.total_cmp(&a.2));
    let n_gt = iou.first().map_or(0, Vec::len);
    let mut pred_used = vec![false; iou.len()];
    let mut gt_used = vec![false; n_gt];
    let mut out = Vec::new();
    for (p, g, _) in pairs {
        if !pred_used[p] && !gt_used[g] {
            pred_used[p] = true;
            gt_used[g] = true;
            out.push((p, g));
        }
    }
    out
}

/// Counts from an IoU matrix with `n_pred` rows and `n_gt` columns.
pub fn score_iou_matrix(iou: &[Vec<f64>], n_gt: usize, threshold: f64) -> EvalResult {
    let tp = greedy_match(iou, threshold).len();
    EvalResult::from_counts(tp, iou.len() - tp, n_gt - tp)
}

/// Matches predictions to ground truth by stroke-mask IoU and scores the
/// frame. Unmatched predictions are false positives, unmatched ground
/// truths false negatives.
pub fn match_and_score(preds: &[Polyline], gts: &[Polyline], cfg: &IouConfig) -> Result<EvalResult> {
    if !(cfg.iou_threshold > 0.0 && cfg.iou_threshold < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "IoU threshold must lie in (0, 1), got {}",
            cfg.iou_threshold
        )));
    }
    let iou = iou_matrix(preds, gts, cfg)?;
    Ok(score_iou_matrix(&iou, gts.len(), cfg.iou_threshold))
}
