//! `evaluate`: gain tables and query curves from saved checkpoints.

use invase_core::checkpoint::ModelCheckpoint;
use invase_core::data::{resample, LabeledDataset};
use invase_core::eval::{curves_to_csv, evaluate, CurveMetric, EvaluationReport, PredictionSet};
use invase_core::runner::predict_set;

use crate::commands::train::load_dataset;
use crate::config::RunConfig;
use crate::output::{checkpoint_path, ensure_layout, write_text};
use crate::CliError;

/// Loads every checkpoint the config expects and rebuilds its test-set
/// predictions. Exit 4 when a checkpoint file is missing.
pub fn collect_predictions(
    config: &RunConfig,
    dataset: &LabeledDataset,
) -> Result<Vec<PredictionSet>, CliError> {
    let mut predsets = Vec::with_capacity(config.split.resample_count);
    for index in 0..config.split.resample_count {
        let path = checkpoint_path(&config.output, index);
        if !path.exists() {
            return Err(CliError::missing_artifact(format!(
                "missing checkpoint {}",
                path.display()
            )));
        }
        let checkpoint = ModelCheckpoint::load(&path).map_err(CliError::from)?;
        let model = checkpoint.to_model().map_err(CliError::from)?;
        if model.dim() != dataset.dim() {
            return Err(CliError::config(format!(
                "checkpoint {} was trained on {} features, dataset has {}",
                path.display(),
                model.dim(),
                dataset.dim()
            )));
        }
        // The checkpoint's own split spec reproduces the test set it was
        // trained against.
        let (_, test_raw) =
            resample(dataset, &checkpoint.split, checkpoint.resample_index)
                .map_err(CliError::from)?;
        let predset = predict_set(
            &model,
            &checkpoint.standardizer,
            &test_raw,
            checkpoint.resample_index,
        )
        .map_err(CliError::from)?;
        predsets.push(predset);
    }
    Ok(predsets)
}

pub fn build_report(
    config: &RunConfig,
    predsets: &[PredictionSet],
) -> Result<EvaluationReport, CliError> {
    evaluate(predsets, &config.strategies, &config.rates, config.split.seed)
        .map_err(CliError::from)
}

pub fn write_report(config: &RunConfig, report: &EvaluationReport) -> Result<(), CliError> {
    ensure_layout(&config.output)?;
    for table in &report.gain_tables {
        let path = config
            .output
            .join("tables")
            .join(format!("gain_{}.csv", table.metric.slug()));
        write_text(&path, &table.to_csv())?;
        if config.json_mirrors {
            let json =
                serde_json::to_string_pretty(table).map_err(|e| CliError::io(e.to_string()))?;
            write_text(&path.with_extension("json"), &json)?;
        }
    }
    for metric in CurveMetric::ALL {
        let curves: Vec<_> = report
            .curves
            .iter()
            .filter(|c| c.metric == metric)
            .cloned()
            .collect();
        if curves.is_empty() {
            continue;
        }
        let path = config
            .output
            .join("curves")
            .join(format!("{}.csv", metric.slug()));
        write_text(&path, &curves_to_csv(&curves))?;
        if config.json_mirrors {
            let json =
                serde_json::to_string_pretty(&curves).map_err(|e| CliError::io(e.to_string()))?;
            write_text(&path.with_extension("json"), &json)?;
        }
    }
    Ok(())
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let dataset = load_dataset(config)?;
    let predsets = collect_predictions(config, &dataset)?;
    let report = build_report(config, &predsets)?;
    write_report(config, &report)?;

    let b = &report.baselines;
    println!(
        "baseline at 0% query rate over {} resamples:",
        predsets.len()
    );
    println!("  AUC-ROC {:.4} +- {:.4}", b.auc_roc.mean, b.auc_roc.std);
    println!("  AUC-PR  {:.4} +- {:.4}", b.auc_pr.mean, b.auc_pr.std);
    println!("  bias    {:.4} +- {:.4}", b.bias.mean, b.bias.std);
    println!("tables and curves written to {}", config.output.display());
    Ok(())
}
