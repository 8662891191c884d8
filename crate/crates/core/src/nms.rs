//! Fast non-maximum suppression over predicted lane curves.

use serde::{Deserialize, Serialize};

use crate::curve::{BSplineCurve, LaneCurve};
use crate::distance::symmetric_distance;
use crate::error::{Error, Result};
use crate::point::Polyline;
use crate::N_DIS;

/// A predicted lane with its existence confidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredCurve {
    pub curve: BSplineCurve,
    pub confidence: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NmsConfig {
    /// Pairs closer than this symmetric distance (pixels) overlap.
    pub distance_threshold: f64,
    pub conf_threshold: f64,
    pub n_dis: usize,
}

impl Default for NmsConfig {
    fn default() -> Self {
        Self {
            distance_threshold: 15.0,
            conf_threshold: 0.4,
            n_dis: N_DIS,
        }
    }
}

/// Candidate indices at or above the confidence threshold, by descending
/// confidence (ties by index).
fn ranked(candidates: &[ScoredCurve], cfg: &NmsConfig) -> Result<Vec<usize>> {
    if !(cfg.distance_threshold.is_finite() && cfg.distance_threshold > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "distance threshold must be positive, got {}",
            cfg.distance_threshold
        )));
    }
    if cfg.n_dis < 2 {
        return Err(Error::TooFewSamples(cfg.n_dis));
    }
    if candidates.iter().any(|c| !c.confidence.is_finite()) {
        return Err(Error::NonFinite("confidence"));
    }
    let mut order: Vec<usize> = (0..candidates.len())
        .filter(|&i| candidates[i].confidence >= cfg.conf_threshold)
        .collect();
    order.sort_by(|&a, &b| candidates[b].confidence.total_cmp(&candidates[a].confidence));
    Ok(order)
}

fn sampled(candidates: &[ScoredCurve], order: &[usize], n: usize) -> Result<Vec<Polyline>> {
    order.iter().map(|&i| candidates[i].curve.sample(n)).collect()
}

/// Fast NMS: candidate `j` is dropped when any higher-ranked candidate lies
/// within the distance threshold, whether or not that candidate survives.
/// Returns kept indices in rank order.
pub fn fast_nms(candidates: &[ScoredCurve], cfg: &NmsConfig) -> Result<Vec<usize>> {
    let order = ranked(candidates, cfg)?;
    let polys = sampled(candidates, &order, cfg.n_dis)?;
    Ok((0..order.len())
        .filter(|&j| {
            (0..j).all(|i| symmetric_distance(&polys[i], &polys[j]).d_symmetric >= cfg.distance_threshold)
        })
        .map(|j| order[j])
        .collect())
}

/// Classic greedy NMS: only surviving candidates suppress.
pub fn sequential_nms(candidates: &[ScoredCurve], cfg: &NmsConfig) -> Result<Vec<usize>> {
    let order = ranked(candidates, cfg)?;
    let polys = sampled(candidates, &order, cfg.n_dis)?;
    let mut kept: Vec<usize> = Vec::new();
    for j in 0..order.len() {
        if kept
            .iter()
            .all(|&i| symmetric_distance(&polys[i], &polys[j]).d_symmetric >= cfg.distance_threshold)
        {
            kept.push(j);
        }
    }
    Ok(kept.into_iter().map(|j| order[j]).collect())
}
