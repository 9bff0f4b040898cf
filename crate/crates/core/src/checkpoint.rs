//! Versioned JSON checkpoints.
//!
//! A network checkpoint stores layer dimensions, activations, and row-major
//! weights. A model checkpoint bundles the three networks with everything
//! needed to reproduce an evaluation: training config, split spec, resample
//! index, fitted standardizer, feature names, and the training history.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::data::{SplitSpec, Standardizer};
use crate::error::{Error, Result};
use crate::invase::{HistoryRow, ModelNetworks, TrainedModel, TrainingConfig};
use crate::nn::{Activation, DenseLayer, DenseNetwork};

pub const NETWORK_FORMAT: &str = "dense-network";
pub const NETWORK_VERSION: u32 = 1;
pub const MODEL_FORMAT: &str = "invase-model";
pub const MODEL_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LayerCheckpoint {
    pub inputs: usize,
    pub outputs: usize,
    pub activation: Activation,
    /// Row-major `(outputs, inputs)`.
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NetworkCheckpoint {
    pub format: String,
    pub version: u32,
    pub layers: Vec<LayerCheckpoint>,
}

impl NetworkCheckpoint {
    pub fn from_network(net: &DenseNetwork) -> Self {
        Self {
            format: NETWORK_FORMAT.to_string(),
            version: NETWORK_VERSION,
            layers: net
                .layers()
                .iter()
                .map(|l| LayerCheckpoint {
                    inputs: l.inputs(),
                    outputs: l.outputs(),
                    activation: l.activation(),
                    weights: l.weights().to_vec(),
                    biases: l.biases().to_vec(),
                })
                .collect(),
        }
    }

    pub fn to_network(&self) -> Result<DenseNetwork> {
        if self.format != NETWORK_FORMAT {
            return Err(Error::Config(format!(
                "unexpected network format tag {:?}",
                self.format
            )));
        }
        if self.version != NETWORK_VERSION {
            return Err(Error::Config(format!(
                "unsupported network checkpoint version {}",
                self.version
            )));
        }
        let layers = self
            .layers
            .iter()
            .map(|l| {
                DenseLayer::new(
                    l.inputs,
                    l.outputs,
                    l.activation,
                    l.weights.clone(),
                    l.biases.clone(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        DenseNetwork::new(layers)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelCheckpoint {
    pub format: String,
    pub version: u32,
    pub resample_index: usize,
    pub config: TrainingConfig,
    pub split: SplitSpec,
    pub feature_names: Vec<String>,
    pub standardizer: Standardizer,
    pub selector: NetworkCheckpoint,
    pub predictor: NetworkCheckpoint,
    pub baseline: NetworkCheckpoint,
    pub history: Vec<HistoryRow>,
}

impl ModelCheckpoint {
    pub fn from_model(
        model: &TrainedModel,
        resample_index: usize,
        split: SplitSpec,
        standardizer: Standardizer,
        feature_names: Vec<String>,
    ) -> Self {
        Self {
            format: MODEL_FORMAT.to_string(),
            version: MODEL_VERSION,
            resample_index,
            config: *model.config(),
            split,
            feature_names,
            standardizer,
            selector: NetworkCheckpoint::from_network(&model.networks().selector),
            predictor: NetworkCheckpoint::from_network(&model.networks().predictor),
            baseline: NetworkCheckpoint::from_network(&model.networks().baseline),
            history: model.history().to_vec(),
        }
    }

    pub fn to_model(&self) -> Result<TrainedModel> {
        if self.format != MODEL_FORMAT {
            return Err(Error::Config(format!(
                "unexpected model format tag {:?}",
                self.format
            )));
        }
        if self.version != MODEL_VERSION {
            return Err(Error::Config(format!(
                "unsupported model checkpoint version {}",
                self.version
            )));
        }
        let networks = ModelNetworks {
            selector: self.selector.to_network()?,
            predictor: self.predictor.to_network()?,
            baseline: self.baseline.to_network()?,
        };
        TrainedModel::new(networks, self.config, self.history.clone())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let json = serde_json::to_string(self)?;
        fs::write(path, json)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = fs::read_to_string(path.as_ref()).map_err(|e| Error::Data {
            row: None,
            message: format!("cannot read checkpoint {}: {e}", path.as_ref().display()),
        })?;
        let checkpoint: ModelCheckpoint = serde_json::from_str(&text)?;
        Ok(checkpoint)
    }
}
