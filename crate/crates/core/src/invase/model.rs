//! The three-network model and test-time prediction.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invase::config::TrainingConfig;
use crate::invase::gaussian::GaussianPrediction;
use crate::invase::mask::{suppress_batch, threshold_mask, SelectionMask};
use crate::matrix::Matrix;
use crate::nn::{Activation, DenseNetwork};

/// Hidden width shared by all three networks.
pub const HIDDEN_UNITS: usize = 100;

/// Selector, predictor (trunk plus mean and log-variance heads as a
/// two-column output layer), and baseline.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelNetworks {
    pub selector: DenseNetwork,
    pub predictor: DenseNetwork,
    pub baseline: DenseNetwork,
}

impl ModelNetworks {
    /// Fresh networks for `dim` input features:
    /// selector `d -> 100 -> 100 -> d` (relu, relu, sigmoid),
    /// predictor `2d -> 100 -> 100 -> 2` (relu, relu, identity),
    /// baseline `d -> 100 -> 100 -> 1` (relu, relu, identity).
    /// Initialization order is fixed so a seeded RNG reproduces the model.
    pub fn init<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Config("feature dimension must be positive".into()));
        }
        let selector = DenseNetwork::init(
            dim,
            &[
                (HIDDEN_UNITS, Activation::Relu),
                (HIDDEN_UNITS, Activation::Relu),
                (dim, Activation::Sigmoid),
            ],
            rng,
        )?;
        let predictor = DenseNetwork::init(
            2 * dim,
            &[
                (HIDDEN_UNITS, Activation::Relu),
                (HIDDEN_UNITS, Activation::Relu),
                (2, Activation::Identity),
            ],
            rng,
        )?;
        let baseline = DenseNetwork::init(
            dim,
            &[
                (HIDDEN_UNITS, Activation::Relu),
                (HIDDEN_UNITS, Activation::Relu),
                (1, Activation::Identity),
            ],
            rng,
        )?;
        Ok(Self {
            selector,
            predictor,
            baseline,
        })
    }

    pub fn dim(&self) -> usize {
        self.selector.input_dim()
    }

    pub fn validate_dims(&self) -> Result<()> {
        let d = self.dim();
        let ok = self.selector.output_dim() == d
            && self.predictor.input_dim() == 2 * d
            && self.predictor.output_dim() == 2
            && self.baseline.input_dim() == d
            && self.baseline.output_dim() == 1;
        if ok {
            Ok(())
        } else {
            Err(Error::Config(
                "selector/predictor/baseline dimensions are inconsistent".into(),
            ))
        }
    }
}

/// One history record, captured every 100 training iterations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistoryRow {
    pub iteration: usize,
    pub predictor_loss: f64,
    pub baseline_loss: f64,
    pub mean_reward: f64,
    pub mean_mask_size: f64,
    pub mean_logvar: f64,
}

/// CSV header shared by every history export.
pub const HISTORY_HEADER: &str =
    "iteration,predictor_loss,baseline_loss,mean_reward,mean_mask_size,mean_logvar";

pub fn history_to_csv(rows: &[HistoryRow]) -> String {
    let mut out = String::from(HISTORY_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.iteration,
            r.predictor_loss,
            r.baseline_loss,
            r.mean_reward,
            r.mean_mask_size,
            r.mean_logvar
        ));
    }
    out
}

/// An immutable trained model: the three networks, the configuration it was
/// trained under, and the recorded history.
#[derive(Clone, Debug)]
pub struct TrainedModel {
    networks: ModelNetworks,
    config: TrainingConfig,
    history: Vec<HistoryRow>,
}

impl TrainedModel {
    pub fn new(
        networks: ModelNetworks,
        config: TrainingConfig,
        history: Vec<HistoryRow>,
    ) -> Result<Self> {
        networks.validate_dims()?;
        Ok(Self {
            networks,
            config,
            history,
        })
    }

    pub fn dim(&self) -> usize {
        self.networks.dim()
    }

    pub fn networks(&self) -> &ModelNetworks {
        &self.networks
    }

    pub fn config(&self) -> &TrainingConfig {
        &self.config
    }

    pub fn history(&self) -> &[HistoryRow] {
        &self.history
    }

    /// Selector probabilities for a (standardized) batch.
    pub fn select_probabilities(&self, batch: &Matrix) -> Result<Matrix> {
        let pi = self.networks.selector.forward_values(batch)?;
        if !pi.is_finite() {
            return Err(Error::Training(
                "non-finite selector probabilities".into(),
            ));
        }
        Ok(pi)
    }

    /// Deterministic test-time predictions: masks thresholded at 0.5, no
    /// sampling. Outside uncertainty mode the log-variance is frozen at zero.
    pub fn predict(&self, batch: &Matrix) -> Result<Vec<(SelectionMask, GaussianPrediction)>> {
        if batch.cols() != self.dim() {
            return Err(Error::Usage(format!(
                "batch width {} does not match model dimension {}",
                batch.cols(),
                self.dim()
            )));
        }
        let pi = self.select_probabilities(batch)?;
        let mut masks = Matrix::zeros(batch.rows(), self.dim());
        let mut mask_rows = Vec::with_capacity(batch.rows());
        for r in 0..batch.rows() {
            let m = threshold_mask(pi.row(r));
            for (j, &s) in m.iter().enumerate() {
                masks.set(r, j, if s { 1.0 } else { 0.0 });
            }
            mask_rows.push(m);
        }
        let suppressed = suppress_batch(batch, &masks)?;
        let outputs = self.networks.predictor.forward_values(&suppressed)?;
        let mut result = Vec::with_capacity(batch.rows());
        for r in 0..batch.rows() {
            let mask = SelectionMask::new(pi.row(r).to_vec(), mask_rows[r].clone())?;
            let raw_lv = if self.config.uncertainty_enabled {
                outputs.get(r, 1)
            } else {
                0.0
            };
            result.push((mask, GaussianPrediction::new(outputs.get(r, 0), raw_lv)));
        }
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream_rng, Purpose};

    #[test]
    fn architecture_shapes() {
        let mut rng = stream_rng(0, Purpose::Train, 0);
        let nets = ModelNetworks::init(30, &mut rng).unwrap();
        assert_eq!(nets.selector.input_dim(), 30);
        assert_eq!(nets.selector.output_dim(), 30);
        assert_eq!(nets.predictor.input_dim(), 60);
        assert_eq!(nets.predictor.output_dim(), 2);
        assert_eq!(nets.baseline.input_dim(), 30);
        assert_eq!(nets.baseline.output_dim(), 1);
        nets.validate_dims().unwrap();
    }

    #[test]
    fn seeded_init_is_reproducible() {
        let a = ModelNetworks::init(5, &mut stream_rng(3, Purpose::Train, 1)).unwrap();
        let b = ModelNetworks::init(5, &mut stream_rng(3, Purpose::Train, 1)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn predict_thresholds_and_is_repeatable() {
        let mut rng = stream_rng(17, Purpose::Train, 0);
        let nets = ModelNetworks::init(4, &mut rng).unwrap();
        let model = TrainedModel::new(nets, TrainingConfig::default(), vec![]).unwrap();
        let batch =
            Matrix::from_rows(&[vec![0.4, -1.0, 0.2, 1.3], vec![0.0, 0.0, 0.0, 0.0]]).unwrap();
        let a = model.predict(&batch).unwrap();
        let b = model.predict(&batch).unwrap();
        for ((ma, pa), (mb, pb)) in a.iter().zip(&b) {
            assert_eq!(ma, mb);
            assert_eq!(pa, pb);
            for (&p, &s) in ma.probabilities().iter().zip(ma.mask()) {
                assert_eq!(s, p > 0.5);
            }
        }
    }

    #[test]
    fn vanilla_mode_reports_unit_variance() {
        let mut rng = stream_rng(17, Purpose::Train, 0);
        let nets = ModelNetworks::init(3, &mut rng).unwrap();
        let config = TrainingConfig {
            uncertainty_enabled: false,
            ..TrainingConfig::default()
        };
        let model = TrainedModel::new(nets, config, vec![]).unwrap();
        let batch = Matrix::from_rows(&[vec![0.5, -0.5, 1.0]]).unwrap();
        let (_, pred) = &model.predict(&batch).unwrap()[0];
        assert_eq!(pred.log_variance(), 0.0);
        assert_eq!(pred.variance(), 1.0);
    }

    #[test]
    fn predict_rejects_wrong_width() {
        let mut rng = stream_rng(1, Purpose::Train, 0);
        let nets = ModelNetworks::init(3, &mut rng).unwrap();
        let model = TrainedModel::new(nets, TrainingConfig::default(), vec![]).unwrap();
        let batch = Matrix::zeros(1, 4);
        assert!(matches!(model.predict(&batch), Err(Error::Usage(_))));
    }

    #[test]
    fn zero_weight_selector_gives_half_probabilities() {
        let mut rng = stream_rng(1, Purpose::Train, 0);
        let mut nets = ModelNetworks::init(3, &mut rng).unwrap();
        for layer in nets.selector.layers_mut() {
            layer.weights_mut().fill(0.0);
            layer.biases_mut().fill(0.0);
        }
        let model = TrainedModel::new(nets, TrainingConfig::default(), vec![]).unwrap();
        let batch = Matrix::from_rows(&[vec![3.0, -2.0, 0.5]]).unwrap();
        let pi = model.select_probabilities(&batch).unwrap();
        assert_eq!(pi.row(0), &[0.5, 0.5, 0.5]);
    }

    #[test]
    fn history_csv_layout() {
        let rows = vec![HistoryRow {
            iteration: 100,
            predictor_loss: 0.5,
            baseline_loss: 0.25,
            mean_reward: -0.1,
            mean_mask_size: 12.5,
            mean_logvar: -0.75,
        }];
        let csv = history_to_csv(&rows);
        assert_eq!(
            csv,
            format!("{HISTORY_HEADER}\n100,0.5,0.25,-0.1,12.5,-0.75\n")
        );
    }
}
