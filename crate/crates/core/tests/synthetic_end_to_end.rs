//! End-to-end training behavior on synthetic data with known relevant
//! features.

use invase_core::data::{gen_synthetic, standardize};
use invase_core::eval::auc_roc;
use invase_core::invase::{
    sample_masks, selector_policy_grad, train, TrainingConfig,
};
use invase_core::matrix::Matrix;
use invase_core::nn::{Activation, AdamParams, AdamState, DenseNetwork};
use invase_core::rng::{stream_rng, Purpose};

/// Trains on a 6-feature dataset whose label depends only on feature 0 and
/// returns (mean selection probability per feature, fraction of test points
/// whose thresholded mask keeps feature 0).
fn train_and_inspect(seed: u64) -> (Vec<f64>, f64) {
    let generated = gen_synthetic(700, 6, &[0], 0.1, seed).unwrap();
    let all = &generated.dataset;
    let train_idx: Vec<usize> = (0..500).collect();
    let test_idx: Vec<usize> = (500..700).collect();
    let (train_std, test_std, _) = standardize(
        &all.subset(&train_idx).unwrap(),
        &all.subset(&test_idx).unwrap(),
    )
    .unwrap();

    let config = TrainingConfig {
        iterations: 1500,
        seed,
        ..TrainingConfig::default()
    };
    let model = train(&train_std, &config, stream_rng(seed, Purpose::Train, 0)).unwrap();

    let predictions = model.predict(test_std.features()).unwrap();
    let d = all.dim();
    let mut mean_pi = vec![0.0; d];
    let mut kept_relevant = 0usize;
    for (mask, _) in &predictions {
        for (j, &p) in mask.probabilities().iter().enumerate() {
            mean_pi[j] += p;
        }
        if mask.mask()[0] {
            kept_relevant += 1;
        }
    }
    for m in &mut mean_pi {
        *m /= predictions.len() as f64;
    }
    (mean_pi, kept_relevant as f64 / predictions.len() as f64)
}

#[test]
fn selector_prefers_the_relevant_feature_across_seeds() {
    for seed in [11, 22, 33, 44, 55] {
        let (mean_pi, kept) = train_and_inspect(seed);
        for j in 1..mean_pi.len() {
            assert!(
                mean_pi[0] > mean_pi[j],
                "seed {seed}: mean pi_0 = {:.3} not above pi_{j} = {:.3}",
                mean_pi[0],
                mean_pi[j]
            );
        }
        assert!(
            kept > 0.9,
            "seed {seed}: relevant feature kept for only {:.1}% of test points",
            kept * 100.0
        );
    }
}

#[test]
fn two_feature_bandit_drives_pi_up() {
    // Reward 1 when feature 0 is selected, 0 otherwise; gradient ascent on
    // the policy must push pi_0 toward 1 regardless of feature 1.
    for seed in [1, 2, 3, 4, 5] {
        let mut rng = stream_rng(seed, Purpose::Train, 9);
        let mut net = DenseNetwork::init(
            2,
            &[(8, Activation::Relu), (2, Activation::Sigmoid)],
            &mut rng,
        )
        .unwrap();
        let mut opt = AdamState::new(
            &net,
            AdamParams {
                learning_rate: 1e-2,
                ..AdamParams::default()
            },
        )
        .unwrap();
        let x = Matrix::from_rows(&[vec![1.0, -0.5]]).unwrap();
        for _ in 0..500 {
            let (pi, tape) = net.forward(&x).unwrap();
            let masks = sample_masks(&pi, &mut rng);
            let reward = if masks.get(0, 0) != 0.0 { 1.0 } else { 0.0 };
            let grad = selector_policy_grad(&pi, &masks, &[reward]).unwrap();
            let grads = net.backward(&tape, &grad).unwrap();
            opt.apply(&mut net, &grads.layers).unwrap();
        }
        let pi = net.forward_values(&x).unwrap();
        assert!(
            pi.get(0, 0) > 0.95,
            "seed {seed}: pi_0 = {:.3} after training",
            pi.get(0, 0)
        );
    }
}

#[test]
fn logistic_fit_on_relevant_features_separates_synthetic_data() {
    // Reference model: plain logistic regression on the relevant features
    // only; the generator must be separable enough for AUC-ROC > 0.95.
    let generated = gen_synthetic(1000, 10, &[0, 1], 0.1, 77).unwrap();
    let data = &generated.dataset;
    let relevant = &generated.relevant;

    let mut weights = vec![0.0; relevant.len()];
    let mut intercept = 0.0;
    let n = data.len();
    let lr = 0.5;
    for _ in 0..300 {
        let mut gw = vec![0.0; relevant.len()];
        let mut gb = 0.0;
        for i in 0..n {
            let row = data.features().row(i);
            let z: f64 = intercept
                + relevant
                    .iter()
                    .zip(&weights)
                    .map(|(&j, &w)| w * row[j])
                    .sum::<f64>();
            let p = 1.0 / (1.0 + (-z).exp());
            let err = p - data.labels()[i];
            for (k, &j) in relevant.iter().enumerate() {
                gw[k] += err * row[j] / n as f64;
            }
            gb += err / n as f64;
        }
        for (w, g) in weights.iter_mut().zip(&gw) {
            *w -= lr * g;
        }
        intercept -= lr * gb;
    }

    let scores: Vec<f64> = (0..n)
        .map(|i| {
            let row = data.features().row(i);
            intercept
                + relevant
                    .iter()
                    .zip(&weights)
                    .map(|(&j, &w)| w * row[j])
                    .sum::<f64>()
        })
        .collect();
    let auc = auc_roc(&scores, data.labels()).unwrap();
    assert!(auc > 0.95, "reference logistic AUC {auc}");
}
