//! Gaussian naive Bayes: per-class feature means and variances with a
//! Laplace-smoothed prior. Posteriors are computed in log space and
//! normalized to sum to one.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

const VARIANCE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct GaussianNb {
    n_classes: usize,
    priors: Vec<f64>,
    means: Vec<Vec<f64>>,
    variances: Vec<Vec<f64>>,
}

impl GaussianNb {
    /// Fits class-conditional Gaussians. Priors use add-one smoothing:
    /// `(count + 1) / (n + n_classes)`.
    pub fn fit(features: &Matrix, labels: &[usize], n_classes: usize) -> Result<Self> {
        let n = features.n_rows();
        let m = features.n_cols();
        if n_classes < 2 {
            return Err(Error::Validation(
                "class likelihoods need at least 2 classes".into(),
            ));
        }
        let mut counts = vec![0usize; n_classes];
        let mut means = vec![vec![0.0; m]; n_classes];
        for (i, &c) in labels.iter().enumerate() {
            counts[c] += 1;
            for j in 0..m {
                means[c][j] += features.get(i, j);
            }
        }
        for c in 0..n_classes {
            if counts[c] > 0 {
                for j in 0..m {
                    means[c][j] /= counts[c] as f64;
                }
            }
        }
        let mut variances = vec![vec![0.0; m]; n_classes];
        for (i, &c) in labels.iter().enumerate() {
            for j in 0..m {
                let d = features.get(i, j) - means[c][j];
                variances[c][j] += d * d;
            }
        }
        for c in 0..n_classes {
            for j in 0..m {
                let v = if counts[c] > 0 { variances[c][j] / counts[c] as f64 } else { 0.0 };
                variances[c][j] = v.max(VARIANCE_FLOOR);
            }
        }
        let priors = counts
            .iter()
            .map(|&c| (c as f64 + 1.0) / (n as f64 + n_classes as f64))
            .collect();
        Ok(GaussianNb { n_classes, priors, means, variances })
    }

    /// Normalized posterior probabilities for a feature row.
    pub fn posterior(&self, row: &[f64]) -> Vec<f64> {
        let mut log_post = Vec::with_capacity(self.n_classes);
        for c in 0..self.n_classes {
            let mut lp = self.priors[c].ln();
            for (j, &v) in row.iter().enumerate() {
                let var = self.variances[c][j];
                let d = v - self.means[c][j];
                lp += -0.5 * (2.0 * std::f64::consts::PI * var).ln() - d * d / (2.0 * var);
            }
            log_post.push(lp);
        }
        let max = log_post.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut post: Vec<f64> = log_post.iter().map(|lp| (lp - max).exp()).collect();
        let sum: f64 = post.iter().sum();
        for p in &mut post {
            *p /= sum;
        }
        post
    }
}

/// Per-class posterior for training instance `i`, with parameters estimated
/// on the full dataset.
pub fn class_likelihoods(
    features: &Matrix,
    labels: &[usize],
    n_classes: usize,
    i: usize,
) -> Result<Vec<f64>> {
    let model = GaussianNb::fit(features, labels, n_classes)?;
    Ok(model.posterior(features.row(i)))
}
