//! Labeled dataset container.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Rows of real-valued features with binary labels stored as `0.0` / `1.0`
/// regression targets.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledDataset {
    features: Matrix,
    labels: Vec<f64>,
    feature_names: Vec<String>,
}

impl LabeledDataset {
    pub fn new(features: Matrix, labels: Vec<f64>, feature_names: Vec<String>) -> Result<Self> {
        if labels.len() != features.rows() {
            return Err(Error::Usage(format!(
                "{} labels for {} feature rows",
                labels.len(),
                features.rows()
            )));
        }
        if feature_names.len() != features.cols() {
            return Err(Error::Usage(format!(
                "{} feature names for {} columns",
                feature_names.len(),
                features.cols()
            )));
        }
        if !features.is_finite() {
            return Err(Error::Data {
                row: None,
                message: "non-finite feature value".into(),
            });
        }
        if let Some(bad) = labels.iter().position(|&y| y != 0.0 && y != 1.0) {
            return Err(Error::Data {
                row: Some(bad + 1),
                message: format!("label must be 0 or 1, got {}", labels[bad]),
            });
        }
        Ok(Self {
            features,
            labels,
            feature_names,
        })
    }

    pub fn len(&self) -> usize {
        self.features.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.features.cols()
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    /// New dataset containing the given rows, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let mut features = Matrix::zeros(indices.len(), self.dim());
        let mut labels = Vec::with_capacity(indices.len());
        for (r, &i) in indices.iter().enumerate() {
            if i >= self.len() {
                return Err(Error::Usage(format!("row index {i} out of range")));
            }
            features.row_mut(r).copy_from_slice(self.features.row(i));
            labels.push(self.labels[i]);
        }
        Self::new(features, labels, self.feature_names.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("f{i}")).collect()
    }

    #[test]
    fn rejects_non_binary_labels() {
        let features = Matrix::from_rows(&[vec![1.0], vec![2.0]]).unwrap();
        let err = LabeledDataset::new(features, vec![0.0, 0.5], names(1)).unwrap_err();
        assert!(matches!(err, Error::Data { row: Some(2), .. }));
    }

    #[test]
    fn subset_keeps_order() {
        let features = Matrix::from_rows(&[vec![1.0], vec![2.0], vec![3.0]]).unwrap();
        let ds = LabeledDataset::new(features, vec![0.0, 1.0, 0.0], names(1)).unwrap();
        let sub = ds.subset(&[2, 0]).unwrap();
        assert_eq!(sub.features().row(0), &[3.0]);
        assert_eq!(sub.features().row(1), &[1.0]);
        assert_eq!(sub.labels(), &[0.0, 0.0]);
    }
}
