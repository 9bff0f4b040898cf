//! `export-figures`: uncertainty-band CSVs for named features, from the
//! first resample's checkpoint.

use invase_core::checkpoint::ModelCheckpoint;
use invase_core::data::resample;
use invase_core::eval::{band_rows_to_csv, uncertainty_band_export};

use crate::commands::train::load_dataset;
use crate::config::RunConfig;
use crate::output::{checkpoint_path, ensure_layout, feature_slug, write_text};
use crate::CliError;

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let dataset = load_dataset(config)?;

    // Resolve names first so a typo fails before any training artifacts load.
    let mut indices = Vec::with_capacity(config.figure_features.len());
    for name in &config.figure_features {
        match dataset.feature_names().iter().position(|n| n == name) {
            Some(i) => indices.push(i),
            None => {
                return Err(CliError::config(format!(
                    "unknown feature name {name:?}; valid names: {}",
                    dataset.feature_names().join(", ")
                )))
            }
        }
    }

    let path = checkpoint_path(&config.output, 0);
    if !path.exists() {
        return Err(CliError::missing_artifact(format!(
            "missing checkpoint {}",
            path.display()
        )));
    }
    let checkpoint = ModelCheckpoint::load(&path).map_err(CliError::from)?;
    let model = checkpoint.to_model().map_err(CliError::from)?;
    let (train_raw, test_raw) =
        resample(&dataset, &checkpoint.split, checkpoint.resample_index)
            .map_err(CliError::from)?;

    ensure_layout(&config.output)?;
    for (name, index) in config.figure_features.iter().zip(indices) {
        let rows = uncertainty_band_export(
            &model,
            &checkpoint.standardizer,
            &test_raw,
            &train_raw,
            index,
        )
        .map_err(CliError::from)?;
        let out = config
            .output
            .join("figures")
            .join(format!("band_{}.csv", feature_slug(name)));
        write_text(&out, &band_rows_to_csv(&rows))?;
        println!("wrote {}", out.display());
    }
    Ok(())
}
