//! Run configuration: one TOML document with defaults for every field,
//! unknown keys rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use invase_core::data::SplitSpec;
use invase_core::eval::{validate_rate_grid, QueryStrategy, DEFAULT_RATES};
use invase_core::invase::TrainingConfig;

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// WDBC-layout CSV to load.
    pub dataset: PathBuf,
    /// Run directory; subdirectories `checkpoints/`, `history/`, `tables/`,
    /// `curves/`, `figures/` are created inside it.
    pub output: PathBuf,
    /// Query strategies to evaluate.
    pub strategies: Vec<QueryStrategy>,
    /// Query-rate grid. Must be strictly increasing and include 0 plus the
    /// table rates 0.001, 0.005, 0.01, 0.05, 0.1, 0.5.
    pub rates: Vec<f64>,
    /// Feature names exported by `export-figures`.
    pub figure_features: Vec<String>,
    /// Also write JSON mirrors next to the CSV tables and curves.
    pub json_mirrors: bool,
    /// Write a JSON dump of per-resample split membership.
    pub dump_split_membership: bool,
    /// Number of resample indices the ablation pairs runs over.
    pub ablation_resamples: usize,
    pub split: SplitSpec,
    pub training: TrainingConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            dataset: PathBuf::from("data/wdbc.csv"),
            output: PathBuf::from("runs/default"),
            strategies: QueryStrategy::ALL.to_vec(),
            rates: DEFAULT_RATES.to_vec(),
            figure_features: vec!["worst radius".to_string()],
            json_mirrors: false,
            dump_split_membership: false,
            ablation_resamples: 5,
            split: SplitSpec::default(),
            training: TrainingConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::config(format!("cannot read config {}: {e}", path.display()))
        })?;
        toml::from_str(&text)
            .map_err(|e| CliError::config(format!("invalid config {}: {e}", path.display())))
    }

    /// Configured rates are augmented with 0 and the six table rates so the
    /// gain tables always have their columns; the combined grid must be valid.
    pub fn normalize_rates(&mut self) -> Result<(), CliError> {
        for &r in &self.rates {
            if !(0.0..=1.0).contains(&r) || !r.is_finite() {
                return Err(CliError::config(format!("rate {r} outside [0, 1]")));
            }
        }
        let mut rates = self.rates.clone();
        rates.push(0.0);
        rates.extend_from_slice(&invase_core::eval::TABLE_RATES);
        rates.sort_by(|a, b| a.partial_cmp(b).unwrap());
        rates.dedup();
        self.rates = rates;
        validate_rate_grid(&self.rates).map_err(CliError::from)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.split
            .validate()
            .and_then(|_| self.training.validate())
            .map_err(CliError::from)?;
        validate_rate_grid(&self.rates).map_err(CliError::from)?;
        if self.strategies.is_empty() {
            return Err(CliError::config("strategies must be nonempty".into()));
        }
        if self.ablation_resamples == 0 {
            return Err(CliError::config("ablation_resamples must be positive".into()));
        }
        Ok(())
    }
}

/// Flag overrides shared by all subcommands.
#[derive(Clone, Debug, clap::Args)]
pub struct Overrides {
    /// Config file (TOML). Defaults apply when omitted.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Overrides both the split seed and the training seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output run directory.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Uncertainty-preference weight in the selector reward.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Sparsity weight in the selector reward.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Number of train/test resamples.
    #[arg(long)]
    pub resamples: Option<usize>,
    /// Disable the uncertainty head and reward shaping (unshaped mode).
    #[arg(long)]
    pub no_uncertainty: bool,
}

impl Overrides {
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut config = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(seed) = self.seed {
            config.split.seed = seed;
            config.training.seed = seed;
        }
        if let Some(out) = &self.out {
            config.output = out.clone();
        }
        if let Some(omega) = self.omega {
            config.training.omega = omega;
        }
        if let Some(lambda) = self.lambda {
            config.training.lambda = lambda;
        }
        if let Some(resamples) = self.resamples {
            config.split.resample_count = resamples;
        }
        if self.no_uncertainty {
            config.training.uncertainty_enabled = false;
        }
        config.normalize_rates()?;
        config.validate()?;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = toml::from_str::<RunConfig>("unknown_key = 3\n").unwrap_err();
        assert!(err.to_string().contains("unknown_key"));
    }

    #[test]
    fn partial_config_fills_defaults() {
        let cfg: RunConfig = toml::from_str("[training]\nlambda = 0.25\n").unwrap();
        assert_eq!(cfg.training.lambda, 0.25);
        assert_eq!(cfg.training.omega, 0.1);
        assert_eq!(cfg.split.resample_count, 20);
    }

    #[test]
    fn sparse_rate_list_is_augmented_with_table_rates() {
        let mut cfg = RunConfig {
            rates: vec![0.0, 1.0],
            ..RunConfig::default()
        };
        cfg.normalize_rates().unwrap();
        assert_eq!(cfg.rates, vec![0.0, 0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0]);
    }

    #[test]
    fn out_of_range_rate_rejected() {
        let mut cfg = RunConfig {
            rates: vec![0.0, 1.5],
            ..RunConfig::default()
        };
        assert!(cfg.normalize_rates().is_err());
    }
}
