//! One-vs-rest logistic regression trained by fixed-iteration full-batch
//! gradient descent. Weights start at zero, so the fit is deterministic.

use crate::matrix::Matrix;

#[derive(Debug, Clone)]
pub struct LogisticOvr {
    /// Per-class weight vectors, intercept first.
    weights: Vec<Vec<f64>>,
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

impl LogisticOvr {
    pub fn fit(
        features: &Matrix,
        labels: &[usize],
        n_classes: usize,
        epochs: usize,
        rate: f64,
    ) -> Self {
        let n = features.n_rows();
        let p = features.n_cols() + 1;
        let mut weights = Vec::with_capacity(n_classes);
        for class in 0..n_classes {
            let targets: Vec<f64> =
                labels.iter().map(|&c| if c == class { 1.0 } else { 0.0 }).collect();
            let mut w = vec![0.0; p];
            for _ in 0..epochs {
                let mut grad = vec![0.0; p];
                for i in 0..n {
                    let mut z = w[0];
                    for j in 0..features.n_cols() {
                        z += w[j + 1] * features.get(i, j);
                    }
                    let err = sigmoid(z) - targets[i];
                    grad[0] += err;
                    for j in 0..features.n_cols() {
                        grad[j + 1] += err * features.get(i, j);
                    }
                }
                for (wj, gj) in w.iter_mut().zip(&grad) {
                    *wj -= rate * gj / n as f64;
                }
            }
            weights.push(w);
        }
        LogisticOvr { weights }
    }

    /// Per-class sigmoid scores normalized to sum to one.
    pub fn predict_proba(&self, row: &[f64]) -> Vec<f64> {
        let mut scores: Vec<f64> = self
            .weights
            .iter()
            .map(|w| {
                let mut z = w[0];
                for (j, &v) in row.iter().enumerate() {
                    z += w[j + 1] * v;
                }
                sigmoid(z)
            })
            .collect();
        let sum: f64 = scores.iter().sum();
        for s in &mut scores {
            *s /= sum;
        }
        scores
    }
}
