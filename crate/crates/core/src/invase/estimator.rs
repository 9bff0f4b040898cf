//! Loss estimation, rewards, and the selector's policy objective.
//!
//! The per-sample *advantage* is `baseline_loss − predictor_loss`: positive
//! when predicting from the selected subset beats predicting from all
//! features. The selector reward adds the sparsity penalty and, in
//! uncertainty mode, the shaping bonus `omega * sigma^2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invase::gaussian::{
    gaussian_nll, GaussianPrediction, LOG_VARIANCE_MAX, LOG_VARIANCE_MIN,
};
use crate::matrix::Matrix;

/// Probabilities are clamped to `[PI_FLOOR, 1 − PI_FLOOR]` inside the policy
/// logs; the gradient passes through the clamped value.
pub const PI_FLOOR: f64 = 1e-8;

/// How the predictor's per-sample loss enters the advantage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorMode {
    /// Squared error `(y − mu)^2`.
    Vanilla,
    /// Gaussian negative log-likelihood.
    Uncertainty,
}

pub fn predictor_loss(pred: &GaussianPrediction, y: f64, mode: EstimatorMode) -> f64 {
    match mode {
        EstimatorMode::Vanilla => {
            let r = y - pred.mean();
            r * r
        }
        EstimatorMode::Uncertainty => gaussian_nll(pred, y),
    }
}

pub fn baseline_loss(baseline_output: f64, y: f64) -> f64 {
    let r = y - baseline_output;
    r * r
}

/// Per-sample advantages `baseline_loss_i − predictor_loss_i`.
pub fn advantages(
    predictions: &[GaussianPrediction],
    baseline_outputs: &[f64],
    labels: &[f64],
    mode: EstimatorMode,
) -> Result<Vec<f64>> {
    if predictions.len() != labels.len() || baseline_outputs.len() != labels.len() {
        return Err(Error::Usage(
            "advantage inputs must have one entry per sample".into(),
        ));
    }
    Ok(predictions
        .iter()
        .zip(baseline_outputs)
        .zip(labels)
        .map(|((p, &b), &y)| baseline_loss(b, y) - predictor_loss(p, y, mode))
        .collect())
}

/// Selector reward `omega * sigma^2 + advantage − lambda * ||s||_0`. Callers
/// pass `omega = 0` outside uncertainty mode, which reduces the expression to
/// the unshaped reward bit-exactly.
pub fn reward(advantage: f64, variance: f64, mask_l0: usize, lambda: f64, omega: f64) -> f64 {
    omega * variance + advantage - lambda * mask_l0 as f64
}

fn check_policy_shapes(pi: &Matrix, masks: &Matrix, rewards: &[f64]) -> Result<()> {
    if pi.rows() != masks.rows()
        || pi.cols() != masks.cols()
        || rewards.len() != pi.rows()
        || pi.rows() == 0
    {
        return Err(Error::Usage(format!(
            "policy loss shapes disagree: pi {}x{}, masks {}x{}, {} rewards",
            pi.rows(),
            pi.cols(),
            masks.rows(),
            masks.cols(),
            rewards.len()
        )));
    }
    Ok(())
}

/// Score-function surrogate whose gradient is the REINFORCE estimator:
/// `−(1/n) Σ_i R_i Σ_j [s_ij ln pi_ij + (1−s_ij) ln(1−pi_ij)]`.
/// Rewards are treated as constants.
pub fn selector_policy_loss(pi: &Matrix, masks: &Matrix, rewards: &[f64]) -> Result<f64> {
    check_policy_shapes(pi, masks, rewards)?;
    let n = pi.rows() as f64;
    let mut total = 0.0;
    for r in 0..pi.rows() {
        let mut log_lik = 0.0;
        for (&p, &s) in pi.row(r).iter().zip(masks.row(r)) {
            let p = p.clamp(PI_FLOOR, 1.0 - PI_FLOOR);
            log_lik += if s != 0.0 { p.ln() } else { (1.0 - p).ln() };
        }
        total += rewards[r] * log_lik;
    }
    Ok(-total / n)
}

/// Gradient of [`selector_policy_loss`] with respect to the probabilities.
pub fn selector_policy_grad(pi: &Matrix, masks: &Matrix, rewards: &[f64]) -> Result<Matrix> {
    check_policy_shapes(pi, masks, rewards)?;
    let n = pi.rows() as f64;
    let mut grad = Matrix::zeros(pi.rows(), pi.cols());
    for r in 0..pi.rows() {
        let scale = -rewards[r] / n;
        let g = grad.row_mut(r);
        for (j, (&p, &s)) in pi.row(r).iter().zip(masks.row(r)).enumerate() {
            let p = p.clamp(PI_FLOOR, 1.0 - PI_FLOOR);
            g[j] = scale * if s != 0.0 { 1.0 / p } else { -1.0 / (1.0 - p) };
        }
    }
    Ok(grad)
}

/// Mean predictor training loss over a batch and its gradient with respect to
/// the two-column network output `[mu, raw log-variance]`.
///
/// In uncertainty mode this is the Gaussian NLL with the log-variance clamp
/// applied (no gradient flows where the clamp is active). Otherwise the
/// log-variance is frozen at zero and the loss reduces to `(y − mu)^2 / 2`
/// with no gradient into the variance head.
pub fn predictor_batch_loss_and_grad(
    outputs: &Matrix,
    labels: &[f64],
    uncertainty_enabled: bool,
) -> Result<(f64, Matrix)> {
    if outputs.cols() != 2 || outputs.rows() != labels.len() || labels.is_empty() {
        return Err(Error::Usage(
            "predictor loss expects an n x 2 output batch with one label per row".into(),
        ));
    }
    let n = labels.len() as f64;
    let mut grad = Matrix::zeros(outputs.rows(), 2);
    let mut total = 0.0;
    for r in 0..outputs.rows() {
        let mu = outputs.get(r, 0);
        let raw_lv = outputs.get(r, 1);
        let y = labels[r];
        let g = grad.row_mut(r);
        if uncertainty_enabled {
            let lv = raw_lv.clamp(LOG_VARIANCE_MIN, LOG_VARIANCE_MAX);
            let inv_var = (-lv).exp();
            let residual = y - mu;
            total += 0.5 * lv + residual * residual * inv_var / 2.0;
            g[0] = (mu - y) * inv_var / n;
            g[1] = if (LOG_VARIANCE_MIN..=LOG_VARIANCE_MAX).contains(&raw_lv) {
                (0.5 - residual * residual * inv_var / 2.0) / n
            } else {
                0.0
            };
        } else {
            let residual = y - mu;
            total += 0.5 * residual * residual;
            g[0] = (mu - y) / n;
            g[1] = 0.0;
        }
    }
    Ok((total / n, grad))
}

/// Mean squared error of the baseline head and its output gradient.
pub fn baseline_batch_loss_and_grad(outputs: &Matrix, labels: &[f64]) -> Result<(f64, Matrix)> {
    if outputs.cols() != 1 || outputs.rows() != labels.len() || labels.is_empty() {
        return Err(Error::Usage(
            "baseline loss expects an n x 1 output batch with one label per row".into(),
        ));
    }
    let n = labels.len() as f64;
    let mut grad = Matrix::zeros(outputs.rows(), 1);
    let mut total = 0.0;
    for r in 0..outputs.rows() {
        let residual = labels[r] - outputs.get(r, 0);
        total += residual * residual;
        grad.set(r, 0, 2.0 * (outputs.get(r, 0) - labels[r]) / n);
    }
    Ok((total / n, grad))
}
