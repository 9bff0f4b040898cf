//! Dense feed-forward networks with an exact backward pass.
//!
//! A [`DenseNetwork`] is an ordered stack of affine layers, each followed by
//! one of the three supported activations. `forward` records every
//! intermediate activation on a [`Tape`]; `backward` replays the tape and
//! returns exact chain-rule gradients for all parameters plus the inputs.

use rand::distributions::{Distribution, Uniform};
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};
use crate::nn::activation::Activation;

/// One dense layer: `y = activation(W x + b)`, weights row-major `(out, in)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseLayer {
    inputs: usize,
    outputs: usize,
    activation: Activation,
    weights: Vec<f64>,
    biases: Vec<f64>,
}

impl DenseLayer {
    pub fn new(
        inputs: usize,
        outputs: usize,
        activation: Activation,
        weights: Vec<f64>,
        biases: Vec<f64>,
    ) -> Result<Self> {
        if inputs == 0 || outputs == 0 {
            return Err(Error::Config("layer dimensions must be positive".into()));
        }
        if weights.len() != inputs * outputs || biases.len() != outputs {
            return Err(Error::Config(format!(
                "layer parameter shapes do not match {outputs}x{inputs}"
            )));
        }
        Ok(Self {
            inputs,
            outputs,
            activation,
            weights,
            biases,
        })
    }

    /// Fan-based uniform init on `(-sqrt(6/(in+out)), +sqrt(6/(in+out)))`,
    /// zero biases.
    pub fn init<R: Rng + ?Sized>(
        inputs: usize,
        outputs: usize,
        activation: Activation,
        rng: &mut R,
    ) -> Result<Self> {
        let limit = (6.0 / (inputs + outputs) as f64).sqrt();
        let dist = Uniform::new_inclusive(-limit, limit);
        let weights = (0..inputs * outputs).map(|_| dist.sample(rng)).collect();
        Self::new(inputs, outputs, activation, weights, vec![0.0; outputs])
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    pub fn weights_mut(&mut self) -> &mut [f64] {
        &mut self.weights
    }

    pub fn biases_mut(&mut self) -> &mut [f64] {
        &mut self.biases
    }

    fn forward(&self, input: &Matrix) -> Matrix {
        let n = input.rows();
        let mut out = Matrix::zeros(n, self.outputs);
        for r in 0..n {
            let x = input.row(r);
            let o = out.row_mut(r);
            for (j, oj) in o.iter_mut().enumerate() {
                let w = &self.weights[j * self.inputs..(j + 1) * self.inputs];
                *oj = self.activation.apply(self.biases[j] + dot(w, x));
            }
        }
        out
    }
}

/// Gradients for one layer, shaped exactly like its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerGrads {
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
}

impl LayerGrads {
    pub fn zeros_like(layer: &DenseLayer) -> Self {
        Self {
            weights: vec![0.0; layer.weights.len()],
            biases: vec![0.0; layer.biases.len()],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.weights.iter().all(|v| v.is_finite()) && self.biases.iter().all(|v| v.is_finite())
    }
}

/// Full gradient of a scalar loss: per-layer parameter gradients plus the
/// gradient with respect to the network input.
#[derive(Clone, Debug)]
pub struct Gradients {
    pub layers: Vec<LayerGrads>,
    pub input: Matrix,
}

/// Activations recorded during a forward pass. `activations[0]` is the input
/// batch; `activations[k + 1]` is the post-activation output of layer `k`.
/// The tape also remembers a parameter checksum so a backward call against a
/// since-updated network is rejected instead of silently producing wrong
/// gradients.
#[derive(Clone, Debug)]
pub struct Tape {
    activations: Vec<Matrix>,
    params_checksum: u64,
}

impl Tape {
    pub fn activations(&self) -> &[Matrix] {
        &self.activations
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseNetwork {
    layers: Vec<DenseLayer>,
}

impl DenseNetwork {
    /// Assembles a network from layers, checking that adjacent dimensions
    /// agree.
    pub fn new(layers: Vec<DenseLayer>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::Config("network needs at least one layer".into()));
        }
        for pair in layers.windows(2) {
            if pair[0].outputs != pair[1].inputs {
                return Err(Error::Config(format!(
                    "adjacent layer dimensions disagree: {} -> {}",
                    pair[0].outputs, pair[1].inputs
                )));
            }
        }
        Ok(Self { layers })
    }

    /// Randomly initialized network: `input_dim` fed through the given
    /// `(units, activation)` stack.
    pub fn init<R: Rng + ?Sized>(
        input_dim: usize,
        stack: &[(usize, Activation)],
        rng: &mut R,
    ) -> Result<Self> {
        let mut layers = Vec::with_capacity(stack.len());
        let mut fan_in = input_dim;
        for &(units, activation) in stack {
            layers.push(DenseLayer::init(fan_in, units, activation, rng)?);
            fan_in = units;
        }
        Self::new(layers)
    }

    pub fn layers(&self) -> &[DenseLayer] {
        &self.layers
    }

    pub fn layers_mut(&mut self) -> &mut [DenseLayer] {
        &mut self.layers
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].inputs
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().unwrap().outputs
    }

    pub fn param_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.weights.len() + l.biases.len())
            .sum()
    }

    pub fn is_finite(&self) -> bool {
        self.layers.iter().all(|l| {
            l.weights.iter().all(|v| v.is_finite()) && l.biases.iter().all(|v| v.is_finite())
        })
    }

    fn checksum(&self) -> u64 {
        let mut acc = 0u64;
        for layer in &self.layers {
            for &w in layer.weights.iter().chain(layer.biases.iter()) {
                acc = acc.rotate_left(1) ^ w.to_bits();
            }
        }
        acc
    }

    /// Runs the batch through the network, returning outputs and the tape
    /// needed by [`DenseNetwork::backward`].
    pub fn forward(&self, batch: &Matrix) -> Result<(Matrix, Tape)> {
        if batch.cols() != self.input_dim() {
            return Err(Error::Config(format!(
                "batch width {} does not match network input dimension {}",
                batch.cols(),
                self.input_dim()
            )));
        }
        if !batch.is_finite() {
            return Err(Error::Data {
                row: None,
                message: "non-finite value in network input".into(),
            });
        }
        let mut activations = Vec::with_capacity(self.layers.len() + 1);
        activations.push(batch.clone());
        for layer in &self.layers {
            let next = layer.forward(activations.last().unwrap());
            activations.push(next);
        }
        let outputs = activations.last().unwrap().clone();
        Ok((
            outputs,
            Tape {
                activations,
                params_checksum: self.checksum(),
            },
        ))
    }

    /// Inference-only forward pass (no tape).
    pub fn forward_values(&self, batch: &Matrix) -> Result<Matrix> {
        Ok(self.forward(batch)?.0)
    }

    /// Exact backward pass. `output_grad` is dL/d(outputs) for the batch the
    /// tape was recorded on; parameter gradients are summed over the batch.
    pub fn backward(&self, tape: &Tape, output_grad: &Matrix) -> Result<Gradients> {
        if tape.params_checksum != self.checksum() {
            return Err(Error::Usage(
                "stale tape: network parameters changed since the forward pass".into(),
            ));
        }
        if tape.activations.len() != self.layers.len() + 1 {
            return Err(Error::Usage(
                "tape does not match network depth".into(),
            ));
        }
        let batch_rows = tape.activations[0].rows();
        if output_grad.rows() != batch_rows || output_grad.cols() != self.output_dim() {
            return Err(Error::Usage(format!(
                "output gradient shape {}x{} does not match outputs {}x{}",
                output_grad.rows(),
                output_grad.cols(),
                batch_rows,
                self.output_dim()
            )));
        }

        let mut layer_grads: Vec<LayerGrads> =
            self.layers.iter().map(LayerGrads::zeros_like).collect();
        let mut upstream = output_grad.clone();

        for (k, layer) in self.layers.iter().enumerate().rev() {
            let input = &tape.activations[k];
            let output = &tape.activations[k + 1];
            if input.cols() != layer.inputs || output.cols() != layer.outputs {
                return Err(Error::Usage("tape does not match layer shapes".into()));
            }
            let grads = &mut layer_grads[k];
            let mut downstream = Matrix::zeros(batch_rows, layer.inputs);
            for r in 0..batch_rows {
                let x = input.row(r);
                let y = output.row(r);
                let g = upstream.row(r);
                let dx = downstream.row_mut(r);
                for j in 0..layer.outputs {
                    let dz = g[j] * layer.activation.grad_from_output(y[j]);
                    if dz == 0.0 {
                        continue;
                    }
                    grads.biases[j] += dz;
                    let wrow = &layer.weights[j * layer.inputs..(j + 1) * layer.inputs];
                    let grow = &mut grads.weights[j * layer.inputs..(j + 1) * layer.inputs];
                    crate::matrix::axpy(grow, dz, x);
                    crate::matrix::axpy(dx, dz, wrow);
                }
            }
            upstream = downstream;
        }

        Ok(Gradients {
            layers: layer_grads,
            input: upstream,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn identity_layer(dim: usize, activation: Activation) -> DenseLayer {
        let mut weights = vec![0.0; dim * dim];
        for i in 0..dim {
            weights[i * dim + i] = 1.0;
        }
        DenseLayer::new(dim, dim, activation, weights, vec![0.0; dim]).unwrap()
    }

    #[test]
    fn identity_layer_passes_input_through() {
        let net = DenseNetwork::new(vec![identity_layer(2, Activation::Identity)]).unwrap();
        let batch = Matrix::from_rows(&[vec![1.0, 2.0]]).unwrap();
        let (out, _) = net.forward(&batch).unwrap();
        assert_eq!(out.row(0), &[1.0, 2.0]);
    }

    #[test]
    fn relu_layer_clips() {
        let net = DenseNetwork::new(vec![identity_layer(2, Activation::Relu)]).unwrap();
        let batch = Matrix::from_rows(&[vec![-1.0, 2.0]]).unwrap();
        let (out, _) = net.forward(&batch).unwrap();
        assert_eq!(out.row(0), &[0.0, 2.0]);
    }

    #[test]
    fn zero_weight_sigmoid_gives_half() {
        let layer =
            DenseLayer::new(3, 2, Activation::Sigmoid, vec![0.0; 6], vec![0.0; 2]).unwrap();
        let net = DenseNetwork::new(vec![layer]).unwrap();
        let batch = Matrix::from_rows(&[vec![4.0, -7.0, 0.3]]).unwrap();
        let (out, _) = net.forward(&batch).unwrap();
        assert_eq!(out.row(0), &[0.5, 0.5]);
    }

    #[test]
    fn forward_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let net = DenseNetwork::init(
            4,
            &[(8, Activation::Relu), (3, Activation::Sigmoid)],
            &mut rng,
        )
        .unwrap();
        let batch = Matrix::from_rows(&[vec![0.3, -0.2, 0.8, 1.5], vec![0.0, 0.1, -0.9, 0.4]])
            .unwrap();
        let (a, _) = net.forward(&batch).unwrap();
        let (b, _) = net.forward(&batch).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn forward_rejects_dimension_mismatch() {
        let net = DenseNetwork::new(vec![identity_layer(2, Activation::Identity)]).unwrap();
        let batch = Matrix::from_rows(&[vec![1.0, 2.0, 3.0]]).unwrap();
        assert!(matches!(net.forward(&batch), Err(Error::Config(_))));
    }

    #[test]
    fn forward_rejects_non_finite_input() {
        let net = DenseNetwork::new(vec![identity_layer(2, Activation::Identity)]).unwrap();
        let batch = Matrix::from_rows(&[vec![1.0, f64::NAN]]).unwrap();
        assert!(matches!(net.forward(&batch), Err(Error::Data { .. })));
    }

    #[test]
    fn linear_weight_grad_is_outer_product() {
        // y = W x, single sample: dL/dW = g x^T.
        let layer = DenseLayer::new(
            2,
            2,
            Activation::Identity,
            vec![0.7, -0.3, 0.1, 0.9],
            vec![0.0; 2],
        )
        .unwrap();
        let net = DenseNetwork::new(vec![layer]).unwrap();
        let batch = Matrix::from_rows(&[vec![3.0, -2.0]]).unwrap();
        let (_, tape) = net.forward(&batch).unwrap();
        let g = Matrix::from_rows(&[vec![0.5, -1.5]]).unwrap();
        let grads = net.backward(&tape, &g).unwrap();
        assert_eq!(
            grads.layers[0].weights,
            vec![0.5 * 3.0, 0.5 * -2.0, -1.5 * 3.0, -1.5 * -2.0]
        );
        assert_eq!(grads.layers[0].biases, vec![0.5, -1.5]);
    }

    #[test]
    fn zero_output_grad_gives_zero_gradients() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let net = DenseNetwork::init(
            3,
            &[(5, Activation::Relu), (2, Activation::Identity)],
            &mut rng,
        )
        .unwrap();
        let batch = Matrix::from_rows(&[vec![0.2, 0.4, -0.8]]).unwrap();
        let (_, tape) = net.forward(&batch).unwrap();
        let g = Matrix::zeros(1, 2);
        let grads = net.backward(&tape, &g).unwrap();
        for lg in &grads.layers {
            assert!(lg.weights.iter().all(|&v| v == 0.0));
            assert!(lg.biases.iter().all(|&v| v == 0.0));
        }
        assert!(grads.input.data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn backward_rejects_stale_tape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut net = DenseNetwork::init(2, &[(2, Activation::Identity)], &mut rng).unwrap();
        let batch = Matrix::from_rows(&[vec![1.0, 1.0]]).unwrap();
        let (_, tape) = net.forward(&batch).unwrap();
        net.layers_mut()[0].weights_mut()[0] += 0.25;
        let g = Matrix::zeros(1, 2);
        assert!(matches!(net.backward(&tape, &g), Err(Error::Usage(_))));
    }

    #[test]
    fn backward_rejects_wrong_grad_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let net = DenseNetwork::init(2, &[(2, Activation::Identity)], &mut rng).unwrap();
        let batch = Matrix::from_rows(&[vec![1.0, 1.0]]).unwrap();
        let (_, tape) = net.forward(&batch).unwrap();
        let g = Matrix::zeros(1, 3);
        assert!(matches!(net.backward(&tape, &g), Err(Error::Usage(_))));
    }

    #[test]
    fn adjacent_dimension_mismatch_rejected() {
        let a = DenseLayer::init(2, 3, Activation::Relu, &mut ChaCha8Rng::seed_from_u64(0))
            .unwrap();
        let b = DenseLayer::init(4, 1, Activation::Identity, &mut ChaCha8Rng::seed_from_u64(0))
            .unwrap();
        assert!(matches!(
            DenseNetwork::new(vec![a, b]),
            Err(Error::Config(_))
        ));
    }
}
