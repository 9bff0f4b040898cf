//! Finite-difference gradient checking.
//!
//! `grad_check` compares the analytic backward pass against central
//! differences of the loss for every parameter and reports the worst
//! relative error. The loss is supplied as a closure mapping network outputs
//! to `(scalar loss, dL/doutputs)`, so arbitrary heads (l2, Gaussian NLL,
//! policy losses) can be checked against the same machinery the trainer uses.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::nn::network::DenseNetwork;

/// Max over parameters of `|analytic - numeric| / max(|analytic|, |numeric|, 1e-8)`.
pub fn grad_check<F>(net: &DenseNetwork, loss: F, batch: &Matrix, epsilon: f64) -> Result<f64>
where
    F: Fn(&Matrix) -> (f64, Matrix),
{
    if !(epsilon > 0.0 && epsilon <= 1e-3) {
        return Err(Error::Usage(format!(
            "grad_check epsilon must lie in (0, 1e-3], got {epsilon}"
        )));
    }

    let (outputs, tape) = net.forward(batch)?;
    let (_, output_grad) = loss(&outputs);
    let analytic = net.backward(&tape, &output_grad)?;

    let loss_at = |n: &DenseNetwork| -> Result<f64> {
        let out = n.forward_values(batch)?;
        Ok(loss(&out).0)
    };

    let mut worst: f64 = 0.0;
    let mut probe = net.clone();
    for l in 0..net.layers().len() {
        let weight_count = net.layers()[l].weights().len();
        let bias_count = net.layers()[l].biases().len();
        for p in 0..weight_count + bias_count {
            let read = |n: &DenseNetwork| {
                if p < weight_count {
                    n.layers()[l].weights()[p]
                } else {
                    n.layers()[l].biases()[p - weight_count]
                }
            };
            let write = |n: &mut DenseNetwork, v: f64| {
                if p < weight_count {
                    n.layers_mut()[l].weights_mut()[p] = v;
                } else {
                    n.layers_mut()[l].biases_mut()[p - weight_count] = v;
                }
            };

            let original = read(&probe);
            write(&mut probe, original + epsilon);
            let plus = loss_at(&probe)?;
            write(&mut probe, original - epsilon);
            let minus = loss_at(&probe)?;
            write(&mut probe, original);

            let numeric = (plus - minus) / (2.0 * epsilon);
            let a = if p < weight_count {
                analytic.layers[l].weights[p]
            } else {
                analytic.layers[l].biases[p - weight_count]
            };
            let rel = (a - numeric).abs() / a.abs().max(numeric.abs()).max(1e-8);
            worst = worst.max(rel);
        }
    }
    Ok(worst)
}
