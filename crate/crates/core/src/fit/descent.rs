use serde::{Deserialize, Serialize};

use crate::curve::{BSplineCurve, BezierCurve, Curve, PolynomialCurve};
use crate::distance::ExtendedRadius;
use crate::error::{Error, Result};
use crate::loss::{
    length_loss, length_loss_sample_gradient, regression_loss, regression_loss_sample_gradient,
    start_point_loss, start_point_loss_gradient, total_loss, LossBreakdown, LossTerms, LossWeights,
};
use crate::point::{Point2, Polyline};
use crate::N_DIS;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DescentConfig {
    pub step_size: f64,
    pub steps: usize,
    pub weights: LossWeights,
    pub n_dis: usize,
    pub radius: ExtendedRadius,
}

impl Default for DescentConfig {
    fn default() -> Self {
        Self {
            step_size: 10.0,
            steps: 1,
            weights: LossWeights::regression_only(),
            n_dis: N_DIS,
            radius: ExtendedRadius::default(),
        }
    }
}

impl DescentConfig {
    fn validate(&self) -> Result<()> {
        if !(self.step_size.is_finite() && self.step_size > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "step size must be positive, got {}",
                self.step_size
            )));
        }
        if self.n_dis < 2 {
            return Err(Error::TooFewSamples(self.n_dis));
        }
        self.weights.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentStep {
    pub step: usize,
    pub curve: Curve,
    pub loss: LossBreakdown,
}

/// Curves and losses from the initial state (step 0) through the last
/// update.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub steps: Vec<DescentStep>,
}

impl Trajectory {
    pub fn initial(&self) -> &DescentStep {
        &self.steps[0]
    }

    pub fn last(&self) -> &DescentStep {
        &self.steps[self.steps.len() - 1]
    }

    pub fn losses(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.loss.l_total).collect()
    }
}

/// A curve whose samples are linear in its free parameters:
/// `q_k = Σ_j w_kj θ_j + offset_k`.
pub(crate) struct LinearModel {
    kind: ModelKind,
    params: Vec<Point2>,
    /// Sparse rows `(param index, weight)` per sample.
    rows: Vec<Vec<(usize, f64)>>,
    offsets: Vec<Point2>,
    start_index: usize,
}

enum ModelKind {
    BSpline(BSplineCurve),
    Bezier,
    /// Normalized monomial coefficients; only `x` is free.
    Polynomial {
        y_start: f64,
        y_end: f64,
    },
}

fn sample_parameters(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| {
        if k == n - 1 {
            1.0
        } else {
            k as f64 / (n - 1) as f64
        }
    })
}

impl LinearModel {
    pub(crate) fn new(curve: &Curve, n: usize) -> Result<Self> {
        match curve {
            Curve::BSpline(c) => {
                let rows = sample_parameters(n)
                    .map(|u| {
                        c.basis_row(u).map(|(first, w)| {
                            w.into_iter().enumerate().map(|(j, v)| (first + j, v)).collect()
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self {
                    kind: ModelKind::BSpline(c.clone()),
                    params: c.control_points().to_vec(),
                    rows,
                    offsets: vec![Point2::ZERO; n],
                    start_index: 0,
                })
            }
            Curve::Bezier(c) => {
                let rows = sample_parameters(n)
                    .map(|u| {
                        c.bernstein_weights(u)
                            .map(|w| w.into_iter().enumerate().collect())
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self {
                    kind: ModelKind::Bezier,
                    params: c.control_points().to_vec(),
                    rows,
                    offsets: vec![Point2::ZERO; n],
                    start_index: 0,
                })
            }
            Curve::Polynomial(c) => {
                let (y0, y1) = (c.y_start(), c.y_end());
                let deg = c.degree();
                let rows = sample_parameters(n)
                    .map(|t| (0..=deg).map(|j| (j, t.powi(j as i32))).collect())
                    .collect();
                let offsets = sample_parameters(n)
                    .map(|t| Point2::new(0.0, y0 + t * (y1 - y0)))
                    .collect();
                Ok(Self {
                    kind: ModelKind::Polynomial {
                        y_start: y0,
                        y_end: y1,
                    },
                    params: c
                        .normalized_coefficients()
                        .into_iter()
                        .map(|a| Point2::new(a, 0.0))
                        .collect(),
                    rows,
                    offsets,
                    // lanes start at the bottom, t = 1
                    start_index: n - 1,
                })
            }
        }
    }

    pub(crate) fn samples(&self) -> Result<Polyline> {
        let pts = self
            .rows
            .iter()
            .zip(&self.offsets)
            .map(|(row, off)| row.iter().fold(*off, |acc, &(j, w)| acc + self.params[j] * w))
            .collect();
        Polyline::new(pts)
    }

    pub(crate) fn pull_back(&self, sample_grad: &[Point2]) -> Vec<Point2> {
        let mut g = vec![Point2::ZERO; self.params.len()];
        for (row, sg) in self.rows.iter().zip(sample_grad) {
            for &(j, w) in row {
                g[j] += *sg * w;
            }
        }
        if matches!(self.kind, ModelKind::Polynomial { .. }) {
            for gj in &mut g {
                gj.y = 0.0;
            }
        }
        g
    }

    pub(crate) fn step(&mut self, grad: &[Point2], step_size: f64) {
        for (p, g) in self.params.iter_mut().zip(grad) {
            *p -= *g * step_size;
        }
    }

    pub(crate) fn curve(&self) -> Result<Curve> {
        Ok(match &self.kind {
            ModelKind::BSpline(c) => Curve::BSpline(c.with_control_points(self.params.clone())?),
            ModelKind::Bezier => Curve::Bezier(BezierCurve::new(self.params.clone())?),
            ModelKind::Polynomial { y_start, y_end } => {
                let a: Vec<f64> = self.params.iter().map(|p| p.x).collect();
                Curve::Polynomial(PolynomialCurve::from_normalized(&a, *y_start, *y_end)?)
            }
        })
    }
}

struct Objective<'a> {
    target: &'a Polyline,
    cfg: &'a DescentConfig,
}

impl Objective<'_> {
    fn loss(&self, pred: &Polyline, start_index: usize) -> Result<LossBreakdown> {
        let w = &self.cfg.weights;
        let terms = LossTerms {
            reg: regression_loss(self.target, pred, self.cfg.radius),
            length: if w.lambda_length > 0.0 {
                length_loss(self.target, pred)?
            } else {
                0.0
            },
            start: start_point_loss(self.target.first(), pred.points()[start_index]),
            cls: 0.0,
        };
        total_loss(terms, w)
    }

    fn sample_gradient(&self, pred: &Polyline, start_index: usize) -> Result<Vec<Point2>> {
        let w = &self.cfg.weights;
        let mut g = vec![Point2::ZERO; pred.len()];
        if w.lambda_reg > 0.0 {
            for (gk, rk) in g.iter_mut().zip(regression_loss_sample_gradient(
                self.target,
                pred,
                self.cfg.radius,
            )?) {
                *gk += rk * w.lambda_reg;
            }
        }
        if w.lambda_length > 0.0 {
            for (gk, lk) in g.iter_mut().zip(length_loss_sample_gradient(self.target, pred)?) {
                *gk += lk * w.lambda_length;
            }
        }
        if w.lambda_start > 0.0 {
            g[start_index] +=
                start_point_loss_gradient(self.target.first(), pred.points()[start_index]) * w.lambda_start;
        }
        Ok(g)
    }
}

/// Plain gradient descent on the free parameters of `init` (control points,
/// or polynomial coefficients) towards `target`.
///
/// The target's first point is its start point. Aborts with
/// [`Error::Diverged`] once the total loss exceeds ten times its initial
/// value.
pub fn fit_by_gradient_descent(init: &Curve, target: &Polyline, cfg: &DescentConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let objective = Objective { target, cfg };
    let mut model = LinearModel::new(init, cfg.n_dis)?;
    let start = model.start_index;

    let mut pred = model.samples()?;
    let initial = objective.loss(&pred, start)?;
    let mut steps = vec![DescentStep {
        step: 0,
        curve: model.curve()?,
        loss: initial,
    }];
    for step in 1..=cfg.steps {
        let sample_grad = objective.sample_gradient(&pred, start)?;
        let grad = model.pull_back(&sample_grad);
        model.step(&grad, cfg.step_size);
        pred = model.samples()?;
        let loss = objective.loss(&pred, start)?;
        if !loss.l_total.is_finite() || loss.l_total > 10.0 * initial.l_total.max(f64::MIN_POSITIVE) {
            return Err(Error::Diverged {
                step,
                loss: loss.l_total,
                initial: initial.l_total,
            });
        }
        steps.push(DescentStep {
            step,
            curve: model.curve()?,
            loss,
        });
    }
    Ok(Trajectory { steps })
}
