//! Per-feature z-scoring fitted on the training split only.

use serde::{Deserialize, Serialize};

use crate::data::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Fitted standardization transform. A stored std of `0.0` marks a constant
/// feature; such columns map to zero in every split.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    means: Vec<f64>,
    stds: Vec<f64>,
}

impl Standardizer {
    /// Fits means and population standard deviations on `train`.
    pub fn fit(train: &LabeledDataset) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::Usage("cannot standardize an empty train set".into()));
        }
        let n = train.len() as f64;
        let d = train.dim();
        let mut means = vec![0.0; d];
        let mut stds = vec![0.0; d];
        for row in train.features().iter_rows() {
            for (j, &v) in row.iter().enumerate() {
                means[j] += v;
            }
        }
        for m in &mut means {
            *m /= n;
        }
        for row in train.features().iter_rows() {
            for (j, &v) in row.iter().enumerate() {
                let c = v - means[j];
                stds[j] += c * c;
            }
        }
        for (j, s) in stds.iter_mut().enumerate() {
            let std = (*s / n).sqrt();
            // Columns whose spread is indistinguishable from rounding noise
            // are flagged constant.
            *s = if std <= 1e-12 * (1.0 + means[j].abs()) {
                0.0
            } else {
                std
            };
        }
        Ok(Self { means, stds })
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn stds(&self) -> &[f64] {
        &self.stds
    }

    pub fn dim(&self) -> usize {
        self.means.len()
    }

    pub fn transform_matrix(&self, features: &Matrix) -> Result<Matrix> {
        if features.cols() != self.dim() {
            return Err(Error::Usage(format!(
                "standardizer fitted on {} features, got {}",
                self.dim(),
                features.cols()
            )));
        }
        let mut out = features.clone();
        for r in 0..out.rows() {
            let row = out.row_mut(r);
            for j in 0..row.len() {
                row[j] = if self.stds[j] == 0.0 {
                    0.0
                } else {
                    (row[j] - self.means[j]) / self.stds[j]
                };
            }
        }
        Ok(out)
    }

    pub fn transform(&self, ds: &LabeledDataset) -> Result<LabeledDataset> {
        LabeledDataset::new(
            self.transform_matrix(ds.features())?,
            ds.labels().to_vec(),
            ds.feature_names().to_vec(),
        )
    }
}

/// Fits on `train`, applies to both splits, and returns the fitted transform.
pub fn standardize(
    train: &LabeledDataset,
    test: &LabeledDataset,
) -> Result<(LabeledDataset, LabeledDataset, Standardizer)> {
    let scaler = Standardizer::fit(train)?;
    Ok((scaler.transform(train)?, scaler.transform(test)?, scaler))
}
