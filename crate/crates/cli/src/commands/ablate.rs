//! `ablate`: paired shaped/unshaped runs and the log-variance vs bias
//! correlation comparison.

use rayon::prelude::*;
use serde::Serialize;

use invase_core::data::resample;
use invase_core::eval::{bias_vs_logvar_export, pearson, scatter_to_csv};
use invase_core::invase::TrainingConfig;
use invase_core::runner::run_resample;

use crate::commands::train::load_dataset;
use crate::config::RunConfig;
use crate::output::{ensure_layout, write_text};
use crate::CliError;

#[derive(Clone, Copy, Debug, Serialize)]
struct AblationPair {
    resample: usize,
    corr_shaped: f64,
    corr_unshaped: f64,
}

#[derive(Serialize)]
struct AblationSummary {
    omegas: [f64; 2],
    resamples: usize,
    pairs: Vec<AblationPair>,
    mean_corr_shaped: f64,
    mean_corr_unshaped: f64,
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    if !config.training.uncertainty_enabled {
        return Err(CliError::config(
            "ablation needs uncertainty_enabled = true".into(),
        ));
    }
    if config.training.omega <= 0.0 {
        return Err(CliError::config(
            "ablation needs a positive omega to compare against omega = 0".into(),
        ));
    }
    let dataset = load_dataset(config)?;
    ensure_layout(&config.output)?;

    let shaped_cfg = config.training;
    let unshaped_cfg = TrainingConfig {
        omega: 0.0,
        ..config.training
    };

    // Two runs per resample index, differing only in omega.
    let jobs: Vec<(usize, bool)> = (0..config.ablation_resamples)
        .flat_map(|i| [(i, true), (i, false)])
        .collect();
    let runs: Vec<(usize, bool, Result<f64, CliError>)> = jobs
        .into_par_iter()
        .map(|(index, shaped)| {
            let cfg = if shaped { shaped_cfg } else { unshaped_cfg };
            let result = ablate_one(config, &dataset, &cfg, index, shaped);
            (index, shaped, result)
        })
        .collect();

    let mut pairs = vec![
        AblationPair {
            resample: 0,
            corr_shaped: f64::NAN,
            corr_unshaped: f64::NAN,
        };
        config.ablation_resamples
    ];
    for (index, shaped, result) in runs {
        let corr = result.map_err(|e| CliError {
            code: e.code,
            message: format!("resample {index}: {}", e.message),
        })?;
        pairs[index].resample = index;
        if shaped {
            pairs[index].corr_shaped = corr;
        } else {
            pairs[index].corr_unshaped = corr;
        }
    }

    let mean = |f: fn(&AblationPair) -> f64| {
        pairs.iter().map(f).sum::<f64>() / pairs.len() as f64
    };
    let summary = AblationSummary {
        omegas: [config.training.omega, 0.0],
        resamples: config.ablation_resamples,
        mean_corr_shaped: mean(|p| p.corr_shaped),
        mean_corr_unshaped: mean(|p| p.corr_unshaped),
        pairs,
    };

    let mut csv = String::from("resample,corr_shaped,corr_unshaped\n");
    for p in &summary.pairs {
        csv.push_str(&format!("{},{},{}\n", p.resample, p.corr_shaped, p.corr_unshaped));
    }
    csv.push_str(&format!(
        "mean,{},{}\n",
        summary.mean_corr_shaped, summary.mean_corr_unshaped
    ));
    write_text(&config.output.join("tables").join("ablation.csv"), &csv)?;
    let json = serde_json::to_string_pretty(&summary).map_err(|e| CliError::io(e.to_string()))?;
    write_text(&config.output.join("tables").join("ablation_meta.json"), &json)?;

    println!(
        "mean correlation(log variance, squared bias): shaped {:.4}, unshaped {:.4}",
        summary.mean_corr_shaped, summary.mean_corr_unshaped
    );
    Ok(())
}

fn ablate_one(
    config: &RunConfig,
    dataset: &invase_core::LabeledDataset,
    training: &TrainingConfig,
    index: usize,
    shaped: bool,
) -> Result<f64, CliError> {
    let run = run_resample(dataset, &config.split, training, index).map_err(CliError::from)?;
    let (_, test_raw) = resample(dataset, &config.split, index).map_err(CliError::from)?;
    let scatter = bias_vs_logvar_export(&run.model, &run.standardizer, &test_raw)
        .map_err(CliError::from)?;
    let tag = if shaped { "shaped" } else { "unshaped" };
    let path = config
        .output
        .join("figures")
        .join(format!("bias_vs_logvar_{tag}_r{index:02}.csv"));
    write_text(&path, &scatter_to_csv(&scatter))?;
    let (logvars, biases): (Vec<f64>, Vec<f64>) = scatter.into_iter().unzip();
    Ok(pearson(&logvars, &biases))
}
