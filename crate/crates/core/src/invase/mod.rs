//! Instance-wise feature selection with a Gaussian uncertainty head:
//! selection masks, suppression, the likelihood-based loss estimator, shaped
//! selector rewards, and the joint training loop.

mod config;
mod estimator;
mod gaussian;
mod mask;
mod model;
mod train;

pub use config::TrainingConfig;
pub use estimator::{
    advantages, baseline_batch_loss_and_grad, baseline_loss, predictor_batch_loss_and_grad,
    predictor_loss, reward, selector_policy_grad, selector_policy_loss, EstimatorMode, PI_FLOOR,
};
pub use gaussian::{gaussian_nll, GaussianPrediction, LOG_VARIANCE_MAX, LOG_VARIANCE_MIN};
pub use mask::{sample_mask, sample_masks, suppress, suppress_batch, threshold_mask, SelectionMask};
pub use model::{
    history_to_csv, HistoryRow, ModelNetworks, TrainedModel, HIDDEN_UNITS, HISTORY_HEADER,
};
pub use train::{train, train_with_observer, StepDiagnostics, Trainer, HISTORY_EVERY};
