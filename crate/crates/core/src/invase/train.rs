//! Joint training of selector, predictor, and baseline.
//!
//! Each iteration works on one sampled batch and one sampled set of masks:
//! the predictor (with its two-column head) is updated on its likelihood
//! loss, the baseline on squared error, and the selector last, using rewards
//! computed from the just-updated critics on the same batch and masks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::data::LabeledDataset;
use crate::error::{Error, Result};
use crate::invase::config::TrainingConfig;
use crate::invase::estimator::{
    advantages, baseline_batch_loss_and_grad, predictor_batch_loss_and_grad, reward,
    selector_policy_grad, selector_policy_loss,
};
use crate::invase::gaussian::GaussianPrediction;
use crate::invase::mask::{sample_masks, suppress_batch};
use crate::invase::model::{HistoryRow, ModelNetworks, TrainedModel};
use crate::matrix::Matrix;
use crate::nn::AdamState;

/// History (and divergence snapshot) cadence, in iterations.
pub const HISTORY_EVERY: usize = 100;

/// Raw per-sample quantities from one training iteration, exposed so callers
/// can audit the reward computation or log extra statistics.
#[derive(Debug)]
pub struct StepDiagnostics<'a> {
    /// 1-based iteration number.
    pub iteration: usize,
    pub labels: &'a [f64],
    pub mask_l0: &'a [usize],
    /// Predictor means from the post-update critic pass.
    pub mus: &'a [f64],
    /// Clamped log-variances from the post-update critic pass (zero when the
    /// variance head is frozen).
    pub log_variances: &'a [f64],
    /// Baseline outputs from the post-update critic pass.
    pub baseline_outputs: &'a [f64],
    pub advantages: &'a [f64],
    pub rewards: &'a [f64],
    pub predictor_loss: f64,
    pub baseline_loss: f64,
    pub policy_loss: f64,
}

pub struct Trainer {
    features: Matrix,
    labels: Vec<f64>,
    config: TrainingConfig,
    networks: ModelNetworks,
    selector_opt: AdamState,
    predictor_opt: AdamState,
    baseline_opt: AdamState,
    rng: ChaCha8Rng,
    history: Vec<HistoryRow>,
    iteration: usize,
    last_good: ModelNetworks,
}

impl Trainer {
    /// Builds networks and optimizer state from the RNG, in a fixed draw
    /// order, so the whole run is reproducible from `(dataset, config, rng)`.
    pub fn new(train: &LabeledDataset, config: TrainingConfig, mut rng: ChaCha8Rng) -> Result<Self> {
        config.validate()?;
        if train.is_empty() {
            return Err(Error::Usage("cannot train on an empty dataset".into()));
        }
        let networks = ModelNetworks::init(train.dim(), &mut rng)?;
        let selector_opt = AdamState::new(&networks.selector, config.selector_optimizer())?;
        let predictor_opt = AdamState::new(&networks.predictor, config.optimizer)?;
        let baseline_opt = AdamState::new(&networks.baseline, config.optimizer)?;
        Ok(Self {
            features: train.features().clone(),
            labels: train.labels().to_vec(),
            last_good: networks.clone(),
            networks,
            selector_opt,
            predictor_opt,
            baseline_opt,
            rng,
            history: Vec::new(),
            iteration: 0,
            config,
        })
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn history(&self) -> &[HistoryRow] {
        &self.history
    }

    fn diverged(&self, detail: String) -> Error {
        let model = TrainedModel::new(
            self.last_good.clone(),
            self.config,
            self.history.clone(),
        )
        .expect("snapshot dimensions are valid");
        let _ = detail;
        Error::Diverged {
            iteration: self.iteration,
            last_good: Box::new(model),
        }
    }

    fn guard<T>(&self, result: Result<T>) -> Result<T> {
        match result {
            Err(Error::Training(msg)) => Err(self.diverged(msg)),
            other => other,
        }
    }

    /// Runs one iteration, invoking `observer` with the step's raw numbers
    /// before the selector update result is folded away.
    pub fn step<F>(&mut self, observer: &mut F) -> Result<()>
    where
        F: FnMut(&StepDiagnostics<'_>),
    {
        self.iteration += 1;
        let n = self.features.rows();
        let b = self.config.batch_size;
        let d = self.features.cols();

        // Batch sampled uniformly with replacement, then masks, in a fixed
        // RNG order.
        let indices: Vec<usize> = (0..b).map(|_| self.rng.gen_range(0..n)).collect();
        let mut x = Matrix::zeros(b, d);
        let mut y = Vec::with_capacity(b);
        for (r, &i) in indices.iter().enumerate() {
            x.row_mut(r).copy_from_slice(self.features.row(i));
            y.push(self.labels[i]);
        }

        let (pi, selector_tape) = self.networks.selector.forward(&x)?;
        if !pi.is_finite() {
            return Err(self.diverged("non-finite selector probabilities".into()));
        }
        let masks = sample_masks(&pi, &mut self.rng);
        let suppressed = suppress_batch(&x, &masks)?;

        // Predictor update on the likelihood loss.
        let (pred_out, pred_tape) = self.networks.predictor.forward(&suppressed)?;
        let (predictor_loss, pred_grad) =
            predictor_batch_loss_and_grad(&pred_out, &y, self.config.uncertainty_enabled)?;
        if !predictor_loss.is_finite() {
            return Err(self.diverged("non-finite predictor loss".into()));
        }
        let grads = self.networks.predictor.backward(&pred_tape, &pred_grad)?;
        let update = self
            .predictor_opt
            .apply(&mut self.networks.predictor, &grads.layers);
        self.guard(update)?;

        // Baseline update on squared error.
        let (base_out, base_tape) = self.networks.baseline.forward(&x)?;
        let (baseline_loss, base_grad) = baseline_batch_loss_and_grad(&base_out, &y)?;
        if !baseline_loss.is_finite() {
            return Err(self.diverged("non-finite baseline loss".into()));
        }
        let grads = self.networks.baseline.backward(&base_tape, &base_grad)?;
        let update = self
            .baseline_opt
            .apply(&mut self.networks.baseline, &grads.layers);
        self.guard(update)?;

        // Rewards from the freshest critics, same batch and masks.
        let critic_pred = self.networks.predictor.forward_values(&suppressed)?;
        let critic_base = self.networks.baseline.forward_values(&x)?;
        let mut predictions = Vec::with_capacity(b);
        let mut mus = Vec::with_capacity(b);
        let mut log_variances = Vec::with_capacity(b);
        for r in 0..b {
            let raw_lv = if self.config.uncertainty_enabled {
                critic_pred.get(r, 1)
            } else {
                0.0
            };
            let p = GaussianPrediction::new(critic_pred.get(r, 0), raw_lv);
            mus.push(p.mean());
            log_variances.push(p.log_variance());
            predictions.push(p);
        }
        let baseline_outputs = critic_base.column(0);
        let advs = advantages(&predictions, &baseline_outputs, &y, self.config.mode())?;
        let mask_l0: Vec<usize> = (0..b)
            .map(|r| masks.row(r).iter().filter(|&&s| s != 0.0).count())
            .collect();
        let omega = self.config.effective_omega();
        let rewards: Vec<f64> = (0..b)
            .map(|r| {
                reward(
                    advs[r],
                    predictions[r].variance(),
                    mask_l0[r],
                    self.config.lambda,
                    omega,
                )
            })
            .collect();
        if rewards.iter().any(|r| !r.is_finite()) {
            return Err(self.diverged("non-finite reward".into()));
        }

        // Selector update from the score-function gradient.
        let policy_loss = selector_policy_loss(&pi, &masks, &rewards)?;
        if !policy_loss.is_finite() {
            return Err(self.diverged("non-finite policy loss".into()));
        }
        let policy_grad = selector_policy_grad(&pi, &masks, &rewards)?;
        let grads = self.networks.selector.backward(&selector_tape, &policy_grad)?;
        let update = self
            .selector_opt
            .apply(&mut self.networks.selector, &grads.layers);
        self.guard(update)?;

        observer(&StepDiagnostics {
            iteration: self.iteration,
            labels: &y,
            mask_l0: &mask_l0,
            mus: &mus,
            log_variances: &log_variances,
            baseline_outputs: &baseline_outputs,
            advantages: &advs,
            rewards: &rewards,
            predictor_loss,
            baseline_loss,
            policy_loss,
        });

        if self.iteration % HISTORY_EVERY == 0 {
            let bf = b as f64;
            self.history.push(HistoryRow {
                iteration: self.iteration,
                predictor_loss,
                baseline_loss,
                mean_reward: rewards.iter().sum::<f64>() / bf,
                mean_mask_size: mask_l0.iter().sum::<usize>() as f64 / bf,
                mean_logvar: log_variances.iter().sum::<f64>() / bf,
            });
            self.last_good = self.networks.clone();
        }

        Ok(())
    }

    pub fn finish(self) -> Result<TrainedModel> {
        TrainedModel::new(self.networks, self.config, self.history)
    }
}

/// Trains for `config.iterations` iterations. With zero iterations the
/// initialized, untrained model is returned.
pub fn train(
    train: &LabeledDataset,
    config: &TrainingConfig,
    rng: ChaCha8Rng,
) -> Result<TrainedModel> {
    train_with_observer(train, config, rng, |_| {})
}

/// [`train`] with a per-iteration observer over the step diagnostics.
pub fn train_with_observer<F>(
    train: &LabeledDataset,
    config: &TrainingConfig,
    rng: ChaCha8Rng,
    mut observer: F,
) -> Result<TrainedModel>
where
    F: FnMut(&StepDiagnostics<'_>),
{
    let mut trainer = Trainer::new(train, *config, rng)?;
    for _ in 0..config.iterations {
        trainer.step(&mut observer)?;
    }
    trainer.finish()
}
