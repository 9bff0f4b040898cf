//! Seeded train/test resampling.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::data::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::rng::{stream_rng, Purpose};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub resample_count: usize,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self {
            train_fraction: 0.8,
            resample_count: 20,
            seed: 42,
        }
    }
}

impl SplitSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(Error::Config(format!(
                "train_fraction must lie in (0, 1), got {}",
                self.train_fraction
            )));
        }
        if self.resample_count == 0 {
            return Err(Error::Config("resample_count must be positive".into()));
        }
        Ok(())
    }
}

/// Membership of one resample: sorted row indices of each side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitIndices {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Deterministic disjoint partition for resample `index`. The full dataset is
/// shuffled on a stream keyed by `(seed, index)`; the first
/// `round(n * train_fraction)` rows (clamped to keep both sides nonempty)
/// form the train side.
pub fn split_indices(n: usize, spec: &SplitSpec, index: usize) -> Result<SplitIndices> {
    spec.validate()?;
    if index >= spec.resample_count {
        return Err(Error::Usage(format!(
            "resample index {index} out of range 0..{}",
            spec.resample_count
        )));
    }
    if n < 2 {
        return Err(Error::Usage("need at least two rows to split".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = stream_rng(spec.seed, Purpose::Split, index as u64);
    order.shuffle(&mut rng);

    let train_size = ((n as f64) * spec.train_fraction).round() as usize;
    let train_size = train_size.clamp(1, n - 1);
    let mut train = order[..train_size].to_vec();
    let mut test = order[train_size..].to_vec();
    train.sort_unstable();
    test.sort_unstable();
    Ok(SplitIndices { train, test })
}

pub fn resample(
    dataset: &LabeledDataset,
    spec: &SplitSpec,
    index: usize,
) -> Result<(LabeledDataset, LabeledDataset)> {
    let idx = split_indices(dataset.len(), spec, index)?;
    Ok((dataset.subset(&idx.train)?, dataset.subset(&idx.test)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    fn dataset(n: usize) -> LabeledDataset {
        let rows: Vec<Vec<f64>> = (0..n).map(|i| vec![i as f64]).collect();
        let labels: Vec<f64> = (0..n).map(|i| (i % 2) as f64).collect();
        LabeledDataset::new(Matrix::from_rows(&rows).unwrap(), labels, vec!["f0".into()])
            .unwrap()
    }

    #[test]
    fn same_key_gives_identical_split() {
        let spec = SplitSpec::default();
        let a = split_indices(100, &spec, 4).unwrap();
        let b = split_indices(100, &spec, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ten_rows_split_eight_two() {
        let spec = SplitSpec {
            resample_count: 1,
            ..SplitSpec::default()
        };
        let (train, test) = resample(&dataset(10), &spec, 0).unwrap();
        assert_eq!(train.len(), 8);
        assert_eq!(test.len(), 2);
    }

    #[test]
    fn different_indices_give_different_test_sets() {
        let spec = SplitSpec::default();
        let a = split_indices(569, &spec, 0).unwrap();
        let b = split_indices(569, &spec, 1).unwrap();
        assert_ne!(a.test, b.test);
    }

    #[test]
    fn out_of_range_index_rejected() {
        let spec = SplitSpec::default();
        assert!(matches!(
            split_indices(50, &spec, 20),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn partition_is_disjoint_and_complete() {
        let spec = SplitSpec {
            resample_count: 8,
            ..SplitSpec::default()
        };
        for n in [2usize, 3, 10, 57, 200] {
            for index in 0..spec.resample_count {
                let s = split_indices(n, &spec, index).unwrap();
                let mut all: Vec<usize> = s.train.iter().chain(&s.test).copied().collect();
                all.sort_unstable();
                let expected: Vec<usize> = (0..n).collect();
                assert_eq!(all, expected, "n={n} index={index}");
                assert!(!s.train.is_empty() && !s.test.is_empty());
            }
        }
    }
}
