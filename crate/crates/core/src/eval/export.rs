//! Plot-ready CSV exports: uncertainty bands along a feature and the
//! log-variance versus squared-bias scatter.

use serde::Serialize;

use crate::data::{LabeledDataset, Standardizer};
use crate::error::{Error, Result};
use crate::invase::TrainedModel;

/// One export row. Test rows carry the prediction band; train rows carry only
/// the raw feature value and label, giving the label scatter the band is read
/// against.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BandRow {
    pub is_test: bool,
    pub feature_value: f64,
    pub mu: Option<f64>,
    pub mu_minus_sigma: Option<f64>,
    pub mu_plus_sigma: Option<f64>,
    pub label: f64,
}

/// Band rows for `feature_index`: one row per test point (sorted by raw
/// feature value) followed by the training scatter for the same feature.
/// Feature values are reported on the original scale; the model consumes the
/// standardized ones.
pub fn uncertainty_band_export(
    model: &TrainedModel,
    scaler: &Standardizer,
    test: &LabeledDataset,
    train: &LabeledDataset,
    feature_index: usize,
) -> Result<Vec<BandRow>> {
    if feature_index >= test.dim() {
        return Err(Error::Usage(format!(
            "feature index {feature_index} out of range for {} features",
            test.dim()
        )));
    }
    let predictions = model.predict(&scaler.transform_matrix(test.features())?)?;

    let mut rows: Vec<BandRow> = predictions
        .iter()
        .enumerate()
        .map(|(i, (_, pred))| {
            let sigma = pred.variance().sqrt();
            BandRow {
                is_test: true,
                feature_value: test.features().get(i, feature_index),
                mu: Some(pred.mean()),
                mu_minus_sigma: Some(pred.mean() - sigma),
                mu_plus_sigma: Some(pred.mean() + sigma),
                label: test.labels()[i],
            }
        })
        .collect();
    rows.sort_by(|a, b| a.feature_value.partial_cmp(&b.feature_value).unwrap());

    let mut train_rows: Vec<BandRow> = (0..train.len())
        .map(|i| BandRow {
            is_test: false,
            feature_value: train.features().get(i, feature_index),
            mu: None,
            mu_minus_sigma: None,
            mu_plus_sigma: None,
            label: train.labels()[i],
        })
        .collect();
    train_rows.sort_by(|a, b| a.feature_value.partial_cmp(&b.feature_value).unwrap());
    rows.extend(train_rows);
    Ok(rows)
}

pub const BAND_HEADER: &str = "kind,feature_value,mu,mu_minus_sigma,mu_plus_sigma,label";

pub fn band_rows_to_csv(rows: &[BandRow]) -> String {
    let mut out = String::from(BAND_HEADER);
    out.push('\n');
    let fmt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            if r.is_test { "test" } else { "train" },
            r.feature_value,
            fmt(r.mu),
            fmt(r.mu_minus_sigma),
            fmt(r.mu_plus_sigma),
            r.label
        ));
    }
    out
}

/// Per-test-sample `(log sigma^2, squared bias)` pairs, the reward-shaping
/// ablation's scatter.
pub fn bias_vs_logvar_export(
    model: &TrainedModel,
    scaler: &Standardizer,
    test: &LabeledDataset,
) -> Result<Vec<(f64, f64)>> {
    let predictions = model.predict(&scaler.transform_matrix(test.features())?)?;
    Ok(predictions
        .iter()
        .zip(test.labels())
        .map(|((_, pred), &y)| {
            let r = y - pred.mean();
            (pred.log_variance(), r * r)
        })
        .collect())
}

pub const SCATTER_HEADER: &str = "log_variance,squared_bias";

pub fn scatter_to_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from(SCATTER_HEADER);
    out.push('\n');
    for (lv, sb) in rows {
        out.push_str(&format!("{lv},{sb}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::gen_synthetic;
    use crate::invase::{ModelNetworks, TrainingConfig};
    use crate::invase::{LOG_VARIANCE_MAX, LOG_VARIANCE_MIN};
    use crate::rng::{stream_rng, Purpose};

    fn fixture() -> (TrainedModel, Standardizer, LabeledDataset, LabeledDataset) {
        let data = gen_synthetic(60, 4, &[0], 0.0, 11).unwrap().dataset;
        let train = data.subset(&(0..40).collect::<Vec<_>>()).unwrap();
        let test = data.subset(&(40..60).collect::<Vec<_>>()).unwrap();
        let scaler = Standardizer::fit(&train).unwrap();
        let nets = ModelNetworks::init(4, &mut stream_rng(3, Purpose::Train, 0)).unwrap();
        let model = TrainedModel::new(nets, TrainingConfig::default(), vec![]).unwrap();
        (model, scaler, train, test)
    }

    #[test]
    fn band_half_width_is_sigma_and_rows_sorted() {
        let (model, scaler, train, test) = fixture();
        let rows = uncertainty_band_export(&model, &scaler, &test, &train, 2).unwrap();
        let test_rows: Vec<&BandRow> = rows.iter().filter(|r| r.is_test).collect();
        let train_rows: Vec<&BandRow> = rows.iter().filter(|r| !r.is_test).collect();
        assert_eq!(test_rows.len(), test.len());
        assert_eq!(train_rows.len(), train.len());
        for r in &test_rows {
            let half = (r.mu_plus_sigma.unwrap() - r.mu_minus_sigma.unwrap()) / 2.0;
            let mid = (r.mu_plus_sigma.unwrap() + r.mu_minus_sigma.unwrap()) / 2.0;
            assert!((mid - r.mu.unwrap()).abs() < 1e-12);
            assert!(half > 0.0);
        }
        for w in test_rows.windows(2) {
            assert!(w[0].feature_value <= w[1].feature_value);
        }
    }

    #[test]
    fn band_export_is_deterministic() {
        let (model, scaler, train, test) = fixture();
        let a = uncertainty_band_export(&model, &scaler, &test, &train, 0).unwrap();
        let b = uncertainty_band_export(&model, &scaler, &test, &train, 0).unwrap();
        assert_eq!(a, b);
        assert_eq!(band_rows_to_csv(&a), band_rows_to_csv(&b));
    }

    #[test]
    fn band_export_rejects_bad_index() {
        let (model, scaler, train, test) = fixture();
        assert!(matches!(
            uncertainty_band_export(&model, &scaler, &test, &train, 4),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn scatter_has_one_row_per_test_sample_within_clamp() {
        let (model, scaler, _, test) = fixture();
        let rows = bias_vs_logvar_export(&model, &scaler, &test).unwrap();
        assert_eq!(rows.len(), test.len());
        for (lv, sb) in rows {
            assert!((LOG_VARIANCE_MIN..=LOG_VARIANCE_MAX).contains(&lv));
            assert!(sb >= 0.0);
        }
    }
}
