//! Lightweight learners shared by the hardness measures and the
//! instance-hardness pools: CART trees, least-squares fits, Gaussian naive
//! Bayes, nearest-neighbor prediction, and one-vs-rest logistic regression.

pub mod bayes;
pub mod cart;
pub mod knn;
pub mod linear;
pub mod logistic;
pub mod pool;

pub use bayes::{class_likelihoods, GaussianNb};
pub use cart::{fit_cart, CartTree, LeafInfo, TreeTarget};
pub use knn::loo_knn_regress;
pub use linear::{fit_ols, fit_ridge, simple_linear_fit, OlsFit};
pub use logistic::LogisticOvr;
pub use pool::{
    default_classification_pool, default_regression_pool, Classifier, FittedClassifier,
    FittedRegressor, Regressor,
};

pub use crate::stats::spearman;
