use invase_core::data::{load_wdbc, SplitSpec};
use invase_core::eval::{auc_pr, auc_roc, pearson};
use invase_core::invase::TrainingConfig;
use invase_core::nn::AdamParams;
use invase_core::runner::run_resample;
use rayon::prelude::*;
use std::time::Instant;

fn main() {
    let dataset = load_wdbc("data/wdbc.csv").unwrap();
    let split = SplitSpec::default();
    let resamples: Vec<usize> = (0..12).collect();

    let variants: Vec<(&str, TrainingConfig)> = vec![
        ("b=32 lr=1e-3 it=1000 l=0.1", cfg(1000, 0.1, 32, 1e-3)),
        ("b=16 lr=1e-3 it=1500 l=0.1", cfg(1500, 0.1, 16, 1e-3)),
        ("b=64 lr=3e-4 it=3000 l=0.1", cfg(3000, 0.1, 64, 3e-4)),
        ("b=64 lr=3e-4 it=1500 l=0.1", cfg(1500, 0.1, 64, 3e-4)),
        ("b=32 lr=3e-4 it=3000 l=0.1", cfg(3000, 0.1, 32, 3e-4)),
        ("b=64 lr=1e-4 it=5000 l=0.1", cfg(5000, 0.1, 64, 1e-4)),
    ];

    for (name, config) in variants {
        let t0 = Instant::now();
        let stats: Vec<(f64, f64, f64, f64, f64)> = resamples
            .par_iter()
            .map(|&i| {
                let run = run_resample(&dataset, &split, &config, i).unwrap();
                let p = &run.predictions;
                let n = p.len();
                let roc = auc_roc(p.scores(), p.labels()).unwrap();
                let pr = auc_pr(p.scores(), p.labels()).unwrap();
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&a, &b| {
                    p.uncertainties()[b].partial_cmp(&p.uncertainties()[a]).unwrap()
                });
                let k = (0.2 * n as f64).ceil() as usize;
                let total: f64 = (0..n).map(|i| p.squared_bias(i)).sum::<f64>() / n as f64;
                let retained: f64 =
                    order[k..].iter().map(|&i| p.squared_bias(i)).sum::<f64>() / n as f64;
                let lv: Vec<f64> = p.uncertainties().iter().map(|v| v.ln()).collect();
                let sb: Vec<f64> = (0..n).map(|i| p.squared_bias(i)).collect();
                let corr = pearson(&lv, &sb);
                (roc, pr, total, retained, corr)
            })
            .collect();
        let mean = |f: fn(&(f64, f64, f64, f64, f64)) -> f64| {
            stats.iter().map(f).sum::<f64>() / stats.len() as f64
        };
        let bias0 = mean(|s| s.2);
        println!(
            "{name}: roc={:.4} pr={:.4} bias0={:.4} ratio@20%={:.1}% corr={:.3}  [{:.0}s]",
            mean(|s| s.0),
            mean(|s| s.1),
            bias0,
            100.0 * mean(|s| s.3) / bias0,
            mean(|s| s.4),
            t0.elapsed().as_secs_f64()
        );
        let per: Vec<String> = stats
            .iter()
            .map(|s| format!("{:.0}%", 100.0 * s.3 / s.2))
            .collect();
        println!("   per-resample retained: {}", per.join(" "));
    }
}

fn cfg(iterations: usize, lambda: f64, batch_size: usize, lr: f64) -> TrainingConfig {
    TrainingConfig {
        iterations,
        lambda,
        batch_size,
        optimizer: AdamParams {
            learning_rate: lr,
            ..AdamParams::default()
        },
        ..TrainingConfig::default()
    }
}
