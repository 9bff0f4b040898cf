//! `train`: one checkpoint and history CSV per resample.

use rayon::prelude::*;

use invase_core::checkpoint::ModelCheckpoint;
use invase_core::data::{load_wdbc, split_indices, LabeledDataset};
use invase_core::invase::history_to_csv;
use invase_core::runner::run_resample;
use invase_core::Error;

use crate::config::RunConfig;
use crate::output::{
    checkpoint_path, diverged_checkpoint_path, ensure_layout, history_path, write_text,
};
use crate::CliError;

pub fn load_dataset(config: &RunConfig) -> Result<LabeledDataset, CliError> {
    load_wdbc(&config.dataset).map_err(CliError::from)
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let dataset = load_dataset(config)?;
    ensure_layout(&config.output)?;

    let results: Vec<(usize, Result<(), CliError>)> = (0..config.split.resample_count)
        .into_par_iter()
        .map(|index| (index, train_one(config, &dataset, index)))
        .collect();
    for (index, result) in results {
        if let Err(e) = result {
            return Err(CliError {
                code: e.code,
                message: format!("resample {index}: {}", e.message),
            });
        }
    }

    if config.dump_split_membership {
        let memberships: Vec<_> = (0..config.split.resample_count)
            .map(|i| split_indices(dataset.len(), &config.split, i))
            .collect::<Result<_, _>>()
            .map_err(CliError::from)?;
        let json = serde_json::to_string_pretty(&memberships)
            .map_err(|e| CliError::io(e.to_string()))?;
        write_text(&config.output.join("splits.json"), &json)?;
    }

    println!(
        "trained {} resamples into {}",
        config.split.resample_count,
        config.output.display()
    );
    Ok(())
}

fn train_one(config: &RunConfig, dataset: &LabeledDataset, index: usize) -> Result<(), CliError> {
    match run_resample(dataset, &config.split, &config.training, index) {
        Ok(run) => {
            let checkpoint = ModelCheckpoint::from_model(
                &run.model,
                index,
                config.split,
                run.standardizer.clone(),
                dataset.feature_names().to_vec(),
            );
            checkpoint.save(checkpoint_path(&config.output, index))?;
            write_text(
                &history_path(&config.output, index),
                &history_to_csv(run.model.history()),
            )?;
            Ok(())
        }
        Err(Error::Diverged {
            iteration,
            last_good,
        }) => {
            // Persist the last healthy state next to where the checkpoint
            // would have gone, then report the divergence.
            let (train_raw, _) = invase_core::data::resample(dataset, &config.split, index)
                .map_err(CliError::from)?;
            let standardizer =
                invase_core::data::Standardizer::fit(&train_raw).map_err(CliError::from)?;
            let path = diverged_checkpoint_path(&config.output, index);
            let checkpoint = ModelCheckpoint::from_model(
                &last_good,
                index,
                config.split,
                standardizer,
                dataset.feature_names().to_vec(),
            );
            checkpoint.save(&path)?;
            Err(CliError::divergence(format!(
                "training diverged at iteration {iteration}; last good state saved to {}",
                path.display()
            )))
        }
        Err(e) => Err(CliError::from(e)),
    }
}
