use invase_core::data::{load_wdbc, resample, SplitSpec, Standardizer};
use invase_core::invase::{sample_masks, suppress_batch, TrainingConfig};
use invase_core::matrix::Matrix;
use invase_core::nn::AdamParams;
use invase_core::rng::{stream_rng, Purpose};
use invase_core::runner::run_resample;

fn main() {
    let dataset = load_wdbc("data/wdbc.csv").unwrap();
    let split = SplitSpec::default();
    let config = TrainingConfig {
        iterations: 5000,
        optimizer: AdamParams {
            learning_rate: 1e-4,
            ..AdamParams::default()
        },
        ..TrainingConfig::default()
    };
    for index in [7usize, 10, 12] {
        let run = run_resample(&dataset, &split, &config, index).unwrap();
        let (train_raw, test_raw) = resample(&dataset, &split, index).unwrap();
        let scaler = Standardizer::fit(&train_raw).unwrap();
        let test_std = scaler.transform_matrix(test_raw.features()).unwrap();
        let p = &run.predictions;
        let n = p.len();
        let mut by_err: Vec<usize> = (0..n).collect();
        by_err.sort_by(|&a, &b| p.squared_bias(b).partial_cmp(&p.squared_bias(a)).unwrap());
        let mut rank_of = vec![0usize; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| p.uncertainties()[b].partial_cmp(&p.uncertainties()[a]).unwrap());
        for (rank, &i) in order.iter().enumerate() {
            rank_of[i] = rank;
        }

        println!("== resample {index}");
        let nets = run.model.networks();
        for &i in by_err.iter().take(3) {
            let y = p.labels()[i];
            let x = Matrix::from_rows(&[test_std.row(i).to_vec()]).unwrap();
            // thresholded mask prediction (what eval uses)
            let (mask, pred) = &run.model.predict(&x).unwrap()[0];
            // full-mask prediction
            let ones = Matrix::from_rows(&[vec![1.0; 30]]).unwrap();
            let full_in = suppress_batch(&x, &ones).unwrap();
            let full_out = nets.predictor.forward_values(&full_in).unwrap();
            // average over 200 sampled masks at pi
            let pi = run.model.select_probabilities(&x).unwrap();
            let mut rng = stream_rng(1, Purpose::EvalRandom, 0);
            let (mut mu_acc, mut var_acc) = (0.0, 0.0);
            let draws = 200;
            for _ in 0..draws {
                let m = sample_masks(&pi, &mut rng);
                let s_in = suppress_batch(&x, &m).unwrap();
                let o = nets.predictor.forward_values(&s_in).unwrap();
                mu_acc += o.get(0, 0);
                var_acc += o.get(0, 1).clamp(-10.0, 10.0).exp();
            }
            println!(
                "  y={y} thresh: mu={:+.3} s2={:.5} rank {}/{}  |s|={}  full: mu={:+.3} s2={:.5}  sampled: mu={:+.3} s2={:.5}",
                pred.mean(),
                pred.variance(),
                rank_of[i] + 1,
                n,
                mask.l0(),
                full_out.get(0, 0),
                full_out.get(0, 1).clamp(-10.0, 10.0).exp(),
                mu_acc / draws as f64,
                var_acc / draws as f64,
            );
        }
    }
}
