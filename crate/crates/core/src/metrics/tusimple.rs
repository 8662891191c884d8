use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TusimpleConfig {
    /// A point is correct when `|x_pred - x_gt| < x_tolerance`.
    pub x_tolerance: f64,
    /// Per-lane accuracy needed for a lane to count as matched.
    pub match_threshold: f64,
}

impl Default for TusimpleConfig {
    fn default() -> Self {
        Self {
            x_tolerance: 20.0,
            match_threshold: 0.85,
        }
    }
}

/// Additive counters; sum them over frames before computing rates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TusimpleCounts {
    /// Correctly predicted ground-truth points.
    pub correct: usize,
    /// Annotated ground-truth points.
    pub total: usize,
    pub n_pred: usize,
    pub n_gt: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl TusimpleCounts {
    pub fn merge(&self, o: &TusimpleCounts) -> TusimpleCounts {
        TusimpleCounts {
            correct: self.correct + o.correct,
            total: self.total + o.total,
            n_pred: self.n_pred + o.n_pred,
            n_gt: self.n_gt + o.n_gt,
            fp: self.fp + o.fp,
            fn_: self.fn_ + o.fn_,
        }
    }

    pub fn result(&self) -> TusimpleResult {
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let precision = ratio(self.n_pred - self.fp, self.n_pred);
        let recall = ratio(self.n_gt - self.fn_, self.n_gt);
        TusimpleResult {
            accuracy: ratio(self.correct, self.total),
            fp_rate: ratio(self.fp, self.n_pred),
            fn_rate: ratio(self.fn_, self.n_gt),
            f1: if precision + recall > 0.0 {
                2.0 * precision * recall / (precision + recall)
            } else {
                0.0
            },
            counts: *self,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TusimpleResult {
    /// Correct points over annotated points.
    pub accuracy: f64,
    pub fp_rate: f64,
    pub fn_rate: f64,
    pub f1: f64,
    pub counts: TusimpleCounts,
}

/// Number of annotated rows of `gt` that `pred` hits within tolerance.
/// Negative values mark rows without a point.
pub fn lane_accuracy(pred: &[f64], gt: &[f64], x_tolerance: f64) -> (usize, usize) {
    let mut correct = 0;
    let mut total = 0;
    for (&p, &g) in pred.iter().zip(gt) {
        if g < 0.0 {
            continue;
        }
        total += 1;
        if p >= 0.0 && (p - g).abs() < x_tolerance {
            correct += 1;
        }
    }
    (correct, total)
}

/// Counters for one frame. Lanes are x positions at the shared
/// `h_samples` rows.
///
/// Each ground-truth lane is credited with the best prediction for it. A
/// ground truth is matched when that best accuracy reaches the match
/// threshold; a prediction is a false positive when it reaches the
/// threshold for no ground truth. Predictions without any point are
/// ignored.
pub fn tusimple_frame_counts(
    preds: &[Vec<f64>],
    gts: &[Vec<f64>],
    h_samples: &[f64],
    cfg: &TusimpleConfig,
) -> Result<TusimpleCounts> {
    for lane in preds.iter().chain(gts) {
        if lane.len() != h_samples.len() {
            return Err(Error::InvalidArgument(format!(
                "lane has {} entries but there are {} h_samples",
                lane.len(),
                h_samples.len()
            )));
        }
        if lane.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("lane x position"));
        }
    }
    let preds: Vec<&Vec<f64>> = preds.iter().filter(|l| l.iter().any(|&x| x >= 0.0)).collect();
    let mut pred_hit = vec![false; preds.len()];
    let mut c = TusimpleCounts {
        n_pred: preds.len(),
        n_gt: gts.len(),
        ..Default::default()
    };
    for gt in gts {
        let mut best = 0;
        let mut matched = false;
        let total = gt.iter().filter(|&&g| g >= 0.0).count();
        for (j, p) in preds.iter().enumerate() {
            let (k, _) = lane_accuracy(p, gt, cfg.x_tolerance);
            best = best.max(k);
            if total > 0 && k as f64 / total as f64 >= cfg.match_threshold {
                pred_hit[j] = true;
                matched = true;
            }
        }
        c.correct += best;
        c.total += total;
        if !matched {
            c.fn_ += 1;
        }
    }
    c.fp = pred_hit.iter().filter(|&&h| !h).count();
    Ok(c)
}

/// Single-frame convenience wrapper around [`tusimple_frame_counts`].
pub fn tusimple_accuracy(
    preds: &[Vec<f64>],
    gts: &[Vec<f64>],
    h_samples: &[f64],
    cfg: &TusimpleConfig,
) -> Result<TusimpleResult> {
    Ok(tusimple_frame_counts(preds, gts, h_samples, cfg)?.result())
}
