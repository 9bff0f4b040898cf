//! Training hyperparameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invase::estimator::EstimatorMode;
use crate::nn::AdamParams;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainingConfig {
    /// Sparsity weight on the mask size in the reward.
    pub lambda: f64,
    /// Uncertainty-preference weight in the shaped reward. Ignored (treated
    /// as zero) when `uncertainty_enabled` is off.
    pub omega: f64,
    /// When off, the variance head is frozen at log-variance 0 and the
    /// reward falls back to its unshaped form.
    pub uncertainty_enabled: bool,
    pub iterations: usize,
    pub batch_size: usize,
    pub seed: u64,
    /// Optimizer for the predictor and baseline (and the selector unless
    /// overridden below).
    pub optimizer: AdamParams,
    /// Separate optimizer for the selector's policy updates. The policy
    /// tolerates a larger step size than the likelihood heads.
    pub selector_optimizer: Option<AdamParams>,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        Self {
            lambda: 0.1,
            omega: 0.1,
            uncertainty_enabled: true,
            iterations: 10_000,
            batch_size: 64,
            seed: 42,
            optimizer: AdamParams::default(),
            selector_optimizer: None,
        }
    }
}

impl TrainingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.lambda < 0.0 {
            return Err(Error::Config(format!(
                "lambda must be non-negative, got {}",
                self.lambda
            )));
        }
        if self.omega < 0.0 {
            return Err(Error::Config(format!(
                "omega must be non-negative, got {}",
                self.omega
            )));
        }
        if self.batch_size == 0 {
            return Err(Error::Config("batch_size must be positive".into()));
        }
        self.optimizer.validate()?;
        if let Some(sel) = &self.selector_optimizer {
            sel.validate()?;
        }
        Ok(())
    }

    /// Optimizer used for the selector's policy updates.
    pub fn selector_optimizer(&self) -> AdamParams {
        self.selector_optimizer.unwrap_or(self.optimizer)
    }

    /// The shaping weight actually applied: zero outside uncertainty mode.
    pub fn effective_omega(&self) -> f64 {
        if self.uncertainty_enabled {
            self.omega
        } else {
            0.0
        }
    }

    pub fn mode(&self) -> EstimatorMode {
        if self.uncertainty_enabled {
            EstimatorMode::Uncertainty
        } else {
            EstimatorMode::Vanilla
        }
    }
}
