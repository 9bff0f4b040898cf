//! Selection masks: Bernoulli sampling, thresholding, and feature
//! suppression.

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// A per-sample feature selection: the selector's probabilities and the
/// concrete binary mask drawn (or thresholded) from them.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectionMask {
    probabilities: Vec<f64>,
    mask: Vec<bool>,
}

impl SelectionMask {
    pub fn new(probabilities: Vec<f64>, mask: Vec<bool>) -> Result<Self> {
        if probabilities.len() != mask.len() {
            return Err(Error::Usage(
                "probability and mask dimensions disagree".into(),
            ));
        }
        if probabilities.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::Usage(
                "selection probabilities must lie in [0, 1]".into(),
            ));
        }
        Ok(Self {
            probabilities,
            mask,
        })
    }

    pub fn dim(&self) -> usize {
        self.mask.len()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Number of selected features (the L0 norm of the mask).
    pub fn l0(&self) -> usize {
        self.mask.iter().filter(|&&s| s).count()
    }
}

/// Builds the predictor input for one sample: `[x ⊙ s, s]`. Suppressed
/// coordinates carry 0 while the appended mask channel tells the predictor
/// "suppressed" apart from "measured zero".
pub fn suppress(x: &[f64], mask: &[bool]) -> Result<Vec<f64>> {
    if x.len() != mask.len() {
        return Err(Error::Usage(format!(
            "feature dim {} does not match mask dim {}",
            x.len(),
            mask.len()
        )));
    }
    let mut out = Vec::with_capacity(2 * x.len());
    out.extend(x.iter().zip(mask).map(|(&v, &s)| if s { v } else { 0.0 }));
    out.extend(mask.iter().map(|&s| if s { 1.0 } else { 0.0 }));
    Ok(out)
}

/// Batch version of [`suppress`]; `masks` holds 0/1 values.
pub fn suppress_batch(x: &Matrix, masks: &Matrix) -> Result<Matrix> {
    if x.rows() != masks.rows() || x.cols() != masks.cols() {
        return Err(Error::Usage(format!(
            "feature batch {}x{} does not match mask batch {}x{}",
            x.rows(),
            x.cols(),
            masks.rows(),
            masks.cols()
        )));
    }
    let d = x.cols();
    let mut out = Matrix::zeros(x.rows(), 2 * d);
    for r in 0..x.rows() {
        let xr = x.row(r);
        let mr = masks.row(r);
        let o = out.row_mut(r);
        for j in 0..d {
            o[j] = xr[j] * mr[j];
            o[d + j] = mr[j];
        }
    }
    Ok(out)
}

/// Independent Bernoulli draw per coordinate: `s_j = 1` with probability
/// `pi[j]`.
pub fn sample_mask<R: Rng + ?Sized>(pi: &[f64], rng: &mut R) -> Vec<bool> {
    pi.iter().map(|&p| rng.gen::<f64>() < p).collect()
}

/// Samples one mask row per probability row, consuming the RNG row-major.
pub fn sample_masks<R: Rng + ?Sized>(pi: &Matrix, rng: &mut R) -> Matrix {
    let mut out = Matrix::zeros(pi.rows(), pi.cols());
    for r in 0..pi.rows() {
        let p = pi.row(r);
        let o = out.row_mut(r);
        for j in 0..p.len() {
            o[j] = if rng.gen::<f64>() < p[j] { 1.0 } else { 0.0 };
        }
    }
    out
}

/// Deterministic test-time mask: `s_j = 1[pi_j > 0.5]`.
pub fn threshold_mask(pi: &[f64]) -> Vec<bool> {
    pi.iter().map(|&p| p > 0.5).collect()
}
