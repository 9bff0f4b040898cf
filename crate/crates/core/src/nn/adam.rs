//! Adam optimizer with bias correction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nn::network::{DenseNetwork, LayerGrads};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdamParams {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamParams {
    fn default() -> Self {
        Self {
            learning_rate: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

impl AdamParams {
    pub fn validate(&self) -> Result<()> {
        let ok = self.learning_rate > 0.0
            && self.beta1 > 0.0
            && self.beta1 < 1.0
            && self.beta2 > 0.0
            && self.beta2 < 1.0
            && self.epsilon > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid Adam parameters: {self:?}")))
        }
    }
}

/// First/second-moment accumulators shaped like the network parameters.
#[derive(Clone, Debug)]
pub struct AdamState {
    m: Vec<LayerGrads>,
    v: Vec<LayerGrads>,
    step: u64,
    params: AdamParams,
}

impl AdamState {
    pub fn new(net: &DenseNetwork, params: AdamParams) -> Result<Self> {
        params.validate()?;
        let zeros: Vec<LayerGrads> = net.layers().iter().map(LayerGrads::zeros_like).collect();
        Ok(Self {
            m: zeros.clone(),
            v: zeros,
            step: 0,
            params,
        })
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    pub fn params(&self) -> &AdamParams {
        &self.params
    }

    /// Applies one bias-corrected Adam update in place.
    pub fn apply(&mut self, net: &mut DenseNetwork, grads: &[LayerGrads]) -> Result<()> {
        if grads.len() != net.layers().len() {
            return Err(Error::Usage(
                "gradient layer count does not match network".into(),
            ));
        }
        for (idx, (layer, grad)) in net.layers().iter().zip(grads).enumerate() {
            if grad.weights.len() != layer.weights().len()
                || grad.biases.len() != layer.biases().len()
            {
                return Err(Error::Usage(format!(
                    "gradient shape mismatch in layer {idx}"
                )));
            }
            if !grad.is_finite() {
                return Err(Error::Training(format!(
                    "non-finite gradient in layer {idx}"
                )));
            }
        }

        self.step += 1;
        let t = self.step as i32;
        let AdamParams {
            learning_rate,
            beta1,
            beta2,
            epsilon,
        } = self.params;
        let bias1 = 1.0 - beta1.powi(t);
        let bias2 = 1.0 - beta2.powi(t);

        for (idx, layer) in net.layers_mut().iter_mut().enumerate() {
            let g = &grads[idx];
            let m = &mut self.m[idx];
            let v = &mut self.v[idx];
            update_slice(
                layer.weights_mut(),
                &g.weights,
                &mut m.weights,
                &mut v.weights,
                learning_rate,
                beta1,
                beta2,
                epsilon,
                bias1,
                bias2,
            );
            update_slice(
                layer.biases_mut(),
                &g.biases,
                &mut m.biases,
                &mut v.biases,
                learning_rate,
                beta1,
                beta2,
                epsilon,
                bias1,
                bias2,
            );
        }

        if !net.is_finite() {
            return Err(Error::Training(
                "non-finite parameter after Adam update".into(),
            ));
        }
        Ok(())
    }
}

#[allow(clippy::too_many_arguments)]
fn update_slice(
    params: &mut [f64],
    grads: &[f64],
    m: &mut [f64],
    v: &mut [f64],
    lr: f64,
    beta1: f64,
    beta2: f64,
    epsilon: f64,
    bias1: f64,
    bias2: f64,
) {
    for i in 0..params.len() {
        let g = grads[i];
        m[i] = beta1 * m[i] + (1.0 - beta1) * g;
        v[i] = beta2 * v[i] + (1.0 - beta2) * g * g;
        let m_hat = m[i] / bias1;
        let v_hat = v[i] / bias2;
        params[i] -= lr * m_hat / (v_hat.sqrt() + epsilon);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::activation::Activation;
    use crate::nn::network::DenseLayer;

    fn scalar_net(value: f64) -> DenseNetwork {
        // One weight, bias zero; feeding input 1.0 makes the output equal to the weight.
        let layer =
            DenseLayer::new(1, 1, Activation::Identity, vec![value], vec![0.0]).unwrap();
        DenseNetwork::new(vec![layer]).unwrap()
    }

    fn grads_of(net: &DenseNetwork, w: f64, b: f64) -> Vec<LayerGrads> {
        net.layers()
            .iter()
            .map(|_| LayerGrads {
                weights: vec![w],
                biases: vec![b],
            })
            .collect()
    }

    #[test]
    fn zero_gradient_fresh_state_is_identity() {
        let mut net = scalar_net(1.25);
        let mut state = AdamState::new(&net, AdamParams::default()).unwrap();
        let grads = grads_of(&net, 0.0, 0.0);
        for _ in 0..10 {
            state.apply(&mut net, &grads).unwrap();
        }
        assert_eq!(net.layers()[0].weights()[0], 1.25);
        assert_eq!(state.step_count(), 10);
    }

    #[test]
    fn constant_gradient_moves_against_it() {
        let mut net = scalar_net(0.0);
        let mut state = AdamState::new(&net, AdamParams::default()).unwrap();
        let grads = grads_of(&net, 2.0, 0.0);
        for _ in 0..50 {
            state.apply(&mut net, &grads).unwrap();
        }
        assert!(net.layers()[0].weights()[0] < 0.0);
    }

    #[test]
    fn quadratic_converges_to_minimum() {
        // Loss (p - 3)^2 on a single weight; gradient 2(p - 3).
        let mut net = scalar_net(0.0);
        let params = AdamParams {
            learning_rate: 0.1,
            ..AdamParams::default()
        };
        let mut state = AdamState::new(&net, params).unwrap();
        for _ in 0..500 {
            let p = net.layers()[0].weights()[0];
            let grads = grads_of(&net, 2.0 * (p - 3.0), 0.0);
            state.apply(&mut net, &grads).unwrap();
        }
        let p = net.layers()[0].weights()[0];
        assert!((p - 3.0).abs() < 1e-3, "p = {p}");
    }

    #[test]
    fn non_finite_gradient_names_layer() {
        let mut net = scalar_net(0.0);
        let mut state = AdamState::new(&net, AdamParams::default()).unwrap();
        let grads = grads_of(&net, f64::NAN, 0.0);
        let err = state.apply(&mut net, &grads).unwrap_err();
        match err {
            Error::Training(message) => assert!(message.contains("layer 0")),
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn step_counter_increments_by_one() {
        let mut net = scalar_net(0.5);
        let mut state = AdamState::new(&net, AdamParams::default()).unwrap();
        let grads = grads_of(&net, 0.1, 0.0);
        for expected in 1..=5 {
            state.apply(&mut net, &grads).unwrap();
            assert_eq!(state.step_count(), expected);
        }
    }

    #[test]
    fn rejects_invalid_hyperparameters() {
        let net = scalar_net(0.0);
        let bad = AdamParams {
            learning_rate: -1.0,
            ..AdamParams::default()
        };
        assert!(AdamState::new(&net, bad).is_err());
    }
}
