//! Heteroscedastic Gaussian predictions and their negative log-likelihood.

use serde::{Deserialize, Serialize};

/// Clamp range for the raw log-variance head output. Keeps the NLL from
/// collapsing the variance to zero early in training and bounds `exp`.
pub const LOG_VARIANCE_MIN: f64 = -10.0;
pub const LOG_VARIANCE_MAX: f64 = 10.0;

/// One per-sample prediction: mean and log-variance. The log-variance is
/// clamped at construction, so the variance is always positive and bounded.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianPrediction {
    mean: f64,
    log_variance: f64,
}

impl GaussianPrediction {
    pub fn new(mean: f64, raw_log_variance: f64) -> Self {
        Self {
            mean,
            log_variance: raw_log_variance.clamp(LOG_VARIANCE_MIN, LOG_VARIANCE_MAX),
        }
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn log_variance(&self) -> f64 {
        self.log_variance
    }

    /// The uncertainty score sigma^2 = exp(log-variance).
    pub fn variance(&self) -> f64 {
        self.log_variance.exp()
    }
}

/// Gaussian negative log-likelihood up to its additive constant:
/// `log(sigma^2)/2 + (y - mu)^2 / (2 sigma^2)`.
pub fn gaussian_nll(pred: &GaussianPrediction, y: f64) -> f64 {
    let residual = y - pred.mean;
    0.5 * pred.log_variance + residual * residual / (2.0 * pred.variance())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_unit_variance_prediction_has_zero_loss() {
        let p = GaussianPrediction::new(1.5, 0.0);
        assert_eq!(gaussian_nll(&p, 1.5), 0.0);
    }

    #[test]
    fn unit_residual_unit_variance_is_half() {
        let p = GaussianPrediction::new(0.0, 0.0);
        assert_eq!(gaussian_nll(&p, 1.0), 0.5);
    }

    #[test]
    fn direct_substitution_case() {
        // mu = 0, y = 2, sigma^2 = 2: ln(2)/2 + 4/4 = 1.34657...
        let p = GaussianPrediction::new(0.0, 2.0_f64.ln());
        let expected = 0.5 * 2.0_f64.ln() + 1.0;
        assert!((gaussian_nll(&p, 2.0) - expected).abs() < 1e-12);
        assert!((expected - 1.34657).abs() < 1e-5);
    }

    #[test]
    fn variance_is_always_positive() {
        for raw in [-1e9, -20.0, -0.1, 0.0, 3.5, 25.0, 1e9] {
            let p = GaussianPrediction::new(0.0, raw);
            assert!(p.variance() > 0.0);
            assert!(p.log_variance() >= LOG_VARIANCE_MIN);
            assert!(p.log_variance() <= LOG_VARIANCE_MAX);
        }
    }

    #[test]
    fn nll_minimizer_over_variance_is_the_squared_residual() {
        // For fixed residual r^2, scan log-variance on a fine grid and refine;
        // the minimizer must sit at sigma^2 = r^2 (closed form: d/dv of
        // ln(v)/2 + r^2/(2v) vanishes at v = r^2).
        for r2 in [0.04f64, 1.0, 9.0] {
            let nll_at = |log_var: f64| {
                let p = GaussianPrediction::new(0.0, log_var);
                gaussian_nll(&p, r2.sqrt())
            };
            let mut best = (f64::INFINITY, 0.0);
            let mut lo = LOG_VARIANCE_MIN;
            let mut hi = LOG_VARIANCE_MAX;
            for _ in 0..4 {
                let steps = 2000;
                for i in 0..=steps {
                    let lv = lo + (hi - lo) * i as f64 / steps as f64;
                    let v = nll_at(lv);
                    if v < best.0 {
                        best = (v, lv);
                    }
                }
                let width = (hi - lo) / steps as f64 * 4.0;
                lo = best.1 - width;
                hi = best.1 + width;
            }
            let sigma2 = best.1.exp();
            assert!(
                (sigma2 - r2).abs() < 1e-4 * r2.max(1.0),
                "r2={r2}: minimizer {sigma2}"
            );
        }
    }
}
