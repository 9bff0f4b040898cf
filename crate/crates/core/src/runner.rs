//! Multi-resample experiment driver: split, standardize, train, predict.
//!
//! Resamples are independent given their index, so they fan out across a
//! thread pool; results are collected back in index order and every run is
//! reproducible from `(dataset, split, config)` alone.

use rayon::prelude::*;

use crate::data::{resample, LabeledDataset, SplitSpec, Standardizer};
use crate::error::Result;
use crate::eval::PredictionSet;
use crate::invase::{train, TrainedModel, TrainingConfig};
use crate::rng::{stream_rng, Purpose};

/// Everything produced by one resample: the trained model, the fitted
/// transform, both raw splits, and the test-set predictions.
#[derive(Clone, Debug)]
pub struct ResampleRun {
    pub index: usize,
    pub model: TrainedModel,
    pub standardizer: Standardizer,
    pub train_raw: LabeledDataset,
    pub test_raw: LabeledDataset,
    pub predictions: PredictionSet,
}

/// Runs resample `index` end to end. The training stream is keyed by
/// `(config.seed, index)`; the split stream by `(split.seed, index)`.
pub fn run_resample(
    dataset: &LabeledDataset,
    split: &SplitSpec,
    config: &TrainingConfig,
    index: usize,
) -> Result<ResampleRun> {
    let (train_raw, test_raw) = resample(dataset, split, index)?;
    let scaler = Standardizer::fit(&train_raw)?;
    let train_std = scaler.transform(&train_raw)?;

    let rng = stream_rng(config.seed, Purpose::Train, index as u64);
    let model = train(&train_std, config, rng)?;
    let predictions = predict_set(&model, &scaler, &test_raw, index)?;

    Ok(ResampleRun {
        index,
        model,
        standardizer: scaler,
        train_raw,
        test_raw,
        predictions,
    })
}

/// Test-set predictions of a model on a raw split.
pub fn predict_set(
    model: &TrainedModel,
    scaler: &Standardizer,
    test_raw: &LabeledDataset,
    resample_index: usize,
) -> Result<PredictionSet> {
    let test_std = scaler.transform_matrix(test_raw.features())?;
    let predictions = model.predict(&test_std)?;
    let scores: Vec<f64> = predictions.iter().map(|(_, p)| p.mean()).collect();
    let uncertainties: Vec<f64> = predictions.iter().map(|(_, p)| p.variance()).collect();
    PredictionSet::new(
        scores,
        uncertainties,
        test_raw.labels().to_vec(),
        resample_index,
    )
}

/// Runs all resamples in parallel, returning them in index order.
pub fn run_resamples(
    dataset: &LabeledDataset,
    split: &SplitSpec,
    config: &TrainingConfig,
) -> Result<Vec<ResampleRun>> {
    let mut runs: Vec<ResampleRun> = (0..split.resample_count)
        .into_par_iter()
        .map(|index| run_resample(dataset, split, config, index))
        .collect::<Result<_>>()?;
    runs.sort_by_key(|r| r.index);
    Ok(runs)
}
