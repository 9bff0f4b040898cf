//! Synthetic datasets with known relevant features, for property tests.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::data::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::{stream_rng, Purpose};

/// A generated dataset together with the ground-truth relevant feature set.
#[derive(Clone, Debug)]
pub struct SyntheticDataset {
    pub dataset: LabeledDataset,
    /// Zero-based indices of the features the label actually depends on.
    pub relevant: Vec<usize>,
}

/// Features drawn i.i.d. standard normal; the label thresholds the sum of
/// the relevant features plus Gaussian noise at zero:
/// `y = 1[sum_{j in relevant} x_j + eps > 0]`, `eps ~ N(0, noise_std^2)`.
pub fn gen_synthetic(
    n: usize,
    dim: usize,
    relevant: &[usize],
    noise_std: f64,
    seed: u64,
) -> Result<SyntheticDataset> {
    if n == 0 {
        return Err(Error::Usage("need at least one sample".into()));
    }
    if relevant.is_empty() {
        return Err(Error::Usage("relevant feature set must be nonempty".into()));
    }
    if let Some(&bad) = relevant.iter().find(|&&j| j >= dim) {
        return Err(Error::Usage(format!(
            "relevant feature index {bad} out of range for dim {dim}"
        )));
    }
    if noise_std < 0.0 {
        return Err(Error::Usage("noise_std must be non-negative".into()));
    }

    let mut rng = stream_rng(seed, Purpose::Synthetic, 0);
    let mut features = Matrix::zeros(n, dim);
    let mut labels = Vec::with_capacity(n);
    for r in 0..n {
        let row = features.row_mut(r);
        for v in row.iter_mut() {
            *v = rng.sample(StandardNormal);
        }
        let signal: f64 = relevant.iter().map(|&j| row[j]).sum();
        let noise: f64 = if noise_std > 0.0 {
            noise_std * rng.sample::<f64, _>(StandardNormal)
        } else {
            0.0
        };
        labels.push(if signal + noise > 0.0 { 1.0 } else { 0.0 });
    }

    let names = (0..dim).map(|j| format!("f{j}")).collect();
    Ok(SyntheticDataset {
        dataset: LabeledDataset::new(features, labels, names)?,
        relevant: relevant.to_vec(),
    })
}
