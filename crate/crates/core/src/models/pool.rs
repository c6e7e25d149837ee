//! Learner pools: a small set of classifiers and regressors with different
//! biases, used to score instance hardness through cross-validated
//! out-of-fold predictions.
//!
//! Every learner is deterministic given the seed passed to `fit`; learners
//! without internal randomness simply ignore it. Probability vectors are
//! non-negative and sum to one.

use crate::matrix::Matrix;
use crate::models::bayes::GaussianNb;
use crate::models::cart::{fit_cart, CartTree, TreeTarget};
use crate::models::knn::nearest_training_rows;
use crate::models::linear::{fit_ols, fit_ridge, predict_linear};
use crate::models::logistic::LogisticOvr;
use crate::rng::SplitMix64;

pub trait Classifier: Send + Sync {
    fn name(&self) -> &'static str;
    fn fit(
        &self,
        features: &Matrix,
        labels: &[usize],
        n_classes: usize,
        seed: u64,
    ) -> Box<dyn FittedClassifier>;
}

pub trait FittedClassifier: Send + Sync {
    /// Per-class probabilities, non-negative, summing to one.
    fn predict_proba(&self, row: &[f64]) -> Vec<f64>;
}

pub trait Regressor: Send + Sync {
    fn name(&self) -> &'static str;
    fn fit(&self, features: &Matrix, responses: &[f64], seed: u64) -> Box<dyn FittedRegressor>;
}

pub trait FittedRegressor: Send + Sync {
    fn predict(&self, row: &[f64]) -> f64;
}

// ---------------------------------------------------------------------------
// classifiers

struct NbClassifier;

impl Classifier for NbClassifier {
    fn name(&self) -> &'static str {
        "nb"
    }
    fn fit(
        &self,
        features: &Matrix,
        labels: &[usize],
        n_classes: usize,
        _seed: u64,
    ) -> Box<dyn FittedClassifier> {
        let model = GaussianNb::fit(features, labels, n_classes)
            .expect("pool training sets always carry at least two classes");
        Box::new(FittedNb { model })
    }
}

struct FittedNb {
    model: GaussianNb,
}

impl FittedClassifier for FittedNb {
    fn predict_proba(&self, row: &[f64]) -> Vec<f64> {
        self.model.posterior(row)
    }
}

struct KnnClassifier {
    k: usize,
}

impl Classifier for KnnClassifier {
    fn name(&self) -> &'static str {
        "knn5"
    }
    fn fit(
        &self,
        features: &Matrix,
        labels: &[usize],
        n_classes: usize,
        _seed: u64,
    ) -> Box<dyn FittedClassifier> {
        Box::new(FittedKnnClassifier {
            train: features.clone(),
            labels: labels.to_vec(),
            n_classes,
            k: self.k,
        })
    }
}

struct FittedKnnClassifier {
    train: Matrix,
    labels: Vec<usize>,
    n_classes: usize,
    k: usize,
}

impl FittedClassifier for FittedKnnClassifier {
    fn predict_proba(&self, row: &[f64]) -> Vec<f64> {
        let neighbors = nearest_training_rows(&self.train, row, self.k);
        let mut probs = vec![0.0; self.n_classes];
        for &j in &neighbors {
            probs[self.labels[j]] += 1.0;
        }
        let total = neighbors.len() as f64;
        for p in &mut probs {
            *p /= total;
        }
        probs
    }
}

struct CartClassifier {
    min_leaf: usize,
}

impl Classifier for CartClassifier {
    fn name(&self) -> &'static str {
        "cart"
    }
    fn fit(
        &self,
        features: &Matrix,
        labels: &[usize],
        n_classes: usize,
        _seed: u64,
    ) -> Box<dyn FittedClassifier> {
        let tree = fit_cart(features, &TreeTarget::Classes { labels, n_classes }, self.min_leaf);
        Box::new(FittedCartClassifier { tree })
    }
}

struct FittedCartClassifier {
    tree: CartTree,
}

impl FittedClassifier for FittedCartClassifier {
    fn predict_proba(&self, row: &[f64]) -> Vec<f64> {
        self.tree.leaf_class_frequencies(row)
    }
}

struct LogisticClassifier {
    epochs: usize,
    rate: f64,
}

impl Classifier for LogisticClassifier {
    fn name(&self) -> &'static str {
        "logistic"
    }
    fn fit(
        &self,
        features: &Matrix,
        labels: &[usize],
        n_classes: usize,
        _seed: u64,
    ) -> Box<dyn FittedClassifier> {
        let model = LogisticOvr::fit(features, labels, n_classes, self.epochs, self.rate);
        Box::new(FittedLogistic { model })
    }
}

struct FittedLogistic {
    model: LogisticOvr,
}

impl FittedClassifier for FittedLogistic {
    fn predict_proba(&self, row: &[f64]) -> Vec<f64> {
        self.model.predict_proba(row)
    }
}

/// Bootstrap sample indices: `n` draws with replacement.
fn bootstrap_indices(rng: &mut SplitMix64, n: usize) -> Vec<usize> {
    (0..n).map(|_| rng.next_below(n as u64) as usize).collect()
}

struct BaggedCartClassifier {
    trees: usize,
    min_leaf: usize,
}

impl Classifier for BaggedCartClassifier {
    fn name(&self) -> &'static str {
        "bagged_cart"
    }
    fn fit(
        &self,
        features: &Matrix,
        labels: &[usize],
        n_classes: usize,
        seed: u64,
    ) -> Box<dyn FittedClassifier> {
        let n = features.n_rows();
        let mut rng = SplitMix64::new(seed);
        let trees = (0..self.trees)
            .map(|_| {
                let idx = bootstrap_indices(&mut rng, n);
                let sample = features.select_rows(&idx);
                let sample_labels: Vec<usize> = idx.iter().map(|&i| labels[i]).collect();
                fit_cart(
                    &sample,
                    &TreeTarget::Classes { labels: &sample_labels, n_classes },
                    self.min_leaf,
                )
            })
            .collect();
        Box::new(FittedBaggedClassifier { trees, n_classes })
    }
}

struct FittedBaggedClassifier {
    trees: Vec<CartTree>,
    n_classes: usize,
}

impl FittedClassifier for FittedBaggedClassifier {
    fn predict_proba(&self, row: &[f64]) -> Vec<f64> {
        let mut probs = vec![0.0; self.n_classes];
        for tree in &self.trees {
            for (p, q) in probs.iter_mut().zip(tree.leaf_class_frequencies(row)) {
                *p += q;
            }
        }
        for p in &mut probs {
            *p /= self.trees.len() as f64;
        }
        probs
    }
}

// ---------------------------------------------------------------------------
// regressors

/// Mean predictor used when a training fold is too small to determine the
/// full coefficient vector.
fn intercept_only(responses: &[f64]) -> Vec<f64> {
    vec![responses.iter().sum::<f64>() / responses.len() as f64]
}

struct OlsRegressor;

impl Regressor for OlsRegressor {
    fn name(&self) -> &'static str {
        "ols"
    }
    fn fit(&self, features: &Matrix, responses: &[f64], _seed: u64) -> Box<dyn FittedRegressor> {
        let coefficients = match fit_ols(features, responses) {
            Ok(fit) => fit.coefficients,
            Err(_) => intercept_only(responses),
        };
        Box::new(FittedLinear { coefficients })
    }
}

struct RidgeRegressor {
    lambda: f64,
}

impl Regressor for RidgeRegressor {
    fn name(&self) -> &'static str {
        "ridge"
    }
    fn fit(&self, features: &Matrix, responses: &[f64], _seed: u64) -> Box<dyn FittedRegressor> {
        let coefficients = match fit_ridge(features, responses, self.lambda) {
            Ok(fit) => fit.coefficients,
            Err(_) => intercept_only(responses),
        };
        Box::new(FittedLinear { coefficients })
    }
}

struct FittedLinear {
    coefficients: Vec<f64>,
}

impl FittedRegressor for FittedLinear {
    fn predict(&self, row: &[f64]) -> f64 {
        predict_linear(&self.coefficients, row)
    }
}

struct KnnRegressor {
    k: usize,
}

impl Regressor for KnnRegressor {
    fn name(&self) -> &'static str {
        "knn5"
    }
    fn fit(&self, features: &Matrix, responses: &[f64], _seed: u64) -> Box<dyn FittedRegressor> {
        Box::new(FittedKnnRegressor {
            train: features.clone(),
            responses: responses.to_vec(),
            k: self.k,
        })
    }
}

struct FittedKnnRegressor {
    train: Matrix,
    responses: Vec<f64>,
    k: usize,
}

impl FittedRegressor for FittedKnnRegressor {
    fn predict(&self, row: &[f64]) -> f64 {
        let neighbors = nearest_training_rows(&self.train, row, self.k);
        neighbors.iter().map(|&j| self.responses[j]).sum::<f64>() / neighbors.len() as f64
    }
}

struct CartRegressor {
    min_leaf: usize,
}

impl Regressor for CartRegressor {
    fn name(&self) -> &'static str {
        "cart"
    }
    fn fit(&self, features: &Matrix, responses: &[f64], _seed: u64) -> Box<dyn FittedRegressor> {
        let tree = fit_cart(features, &TreeTarget::Values(responses), self.min_leaf);
        Box::new(FittedCartRegressor { tree })
    }
}

struct FittedCartRegressor {
    tree: CartTree,
}

impl FittedRegressor for FittedCartRegressor {
    fn predict(&self, row: &[f64]) -> f64 {
        self.tree.predict_mean(row)
    }
}

struct BaggedCartRegressor {
    trees: usize,
    min_leaf: usize,
}

impl Regressor for BaggedCartRegressor {
    fn name(&self) -> &'static str {
        "bagged_cart"
    }
    fn fit(&self, features: &Matrix, responses: &[f64], seed: u64) -> Box<dyn FittedRegressor> {
        let n = features.n_rows();
        let mut rng = SplitMix64::new(seed);
        let trees = (0..self.trees)
            .map(|_| {
                let idx = bootstrap_indices(&mut rng, n);
                let sample = features.select_rows(&idx);
                let sample_responses: Vec<f64> = idx.iter().map(|&i| responses[i]).collect();
                fit_cart(&sample, &TreeTarget::Values(&sample_responses), self.min_leaf)
            })
            .collect();
        Box::new(FittedBaggedRegressor { trees })
    }
}

struct FittedBaggedRegressor {
    trees: Vec<CartTree>,
}

impl FittedRegressor for FittedBaggedRegressor {
    fn predict(&self, row: &[f64]) -> f64 {
        self.trees.iter().map(|t| t.predict_mean(row)).sum::<f64>() / self.trees.len() as f64
    }
}

// ---------------------------------------------------------------------------
// default pools

/// Gaussian naive Bayes, 5-nearest-neighbors, a CART tree, one-vs-rest
/// logistic regression, and bagged CART (20 bootstrap trees).
pub fn default_classification_pool() -> Vec<Box<dyn Classifier>> {
    vec![
        Box::new(NbClassifier),
        Box::new(KnnClassifier { k: 5 }),
        Box::new(CartClassifier { min_leaf: 2 }),
        Box::new(LogisticClassifier { epochs: 500, rate: 0.1 }),
        Box::new(BaggedCartClassifier { trees: 20, min_leaf: 2 }),
    ]
}

/// Ordinary least squares, ridge, 5-nearest-neighbors, a CART regression
/// tree, and bagged CART (20 bootstrap trees).
pub fn default_regression_pool() -> Vec<Box<dyn Regressor>> {
    vec![
        Box::new(OlsRegressor),
        Box::new(RidgeRegressor { lambda: 1e-2 }),
        Box::new(KnnRegressor { k: 5 }),
        Box::new(CartRegressor { min_leaf: 5 }),
        Box::new(BaggedCartRegressor { trees: 20, min_leaf: 5 }),
    ]
}
