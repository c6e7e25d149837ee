//! Instance hardness: one minus the mean credit a pool of learners gives an
//! instance's true target, with every prediction taken out of fold.
//!
//! For classification the credit is the probability assigned to the true
//! class. For regression it is `exp(-(y - yhat)^2 / gamma)` with `gamma` the
//! signal power `mean(y^2)`, making the exponent a normalized squared error.
//! Learners see min-max-scaled features; regression targets stay raw so the
//! signal-power normalization keeps its meaning.

use crate::dataset::{scale, Dataset};
use crate::error::{Error, Result};
use crate::models::pool::{Classifier, Regressor};
use crate::rng::{derive_seed, SplitMix64};

/// Floor applied to a zero signal power so the exponent stays defined.
pub const GAMMA_FLOOR: f64 = 1e-12;

/// Deterministic fold assignment. Stratified plans deal each class's
/// shuffled members round-robin, keeping per-fold class counts within one
/// instance of each other.
#[derive(Debug, Clone)]
pub struct CvPlan {
    pub folds: usize,
    /// Fold index of every instance.
    pub assignment: Vec<usize>,
    pub stratified: bool,
    pub seed: u64,
    pub warnings: Vec<String>,
}

impl CvPlan {
    /// Training and held-out indices of a fold, both ascending.
    pub fn split(&self, fold: usize) -> (Vec<usize>, Vec<usize>) {
        let mut train = Vec::new();
        let mut test = Vec::new();
        for (i, &f) in self.assignment.iter().enumerate() {
            if f == fold {
                test.push(i);
            } else {
                train.push(i);
            }
        }
        (train, test)
    }
}

/// Builds a cross-validation plan: stratified for classification, plain for
/// regression. When a class has fewer members than the requested fold count,
/// the count drops to the smallest class size (with a warning); below two
/// usable folds the plan is rejected.
pub fn make_cv_plan(ds: &Dataset, folds: usize, seed: u64) -> Result<CvPlan> {
    let n = ds.n();
    if folds < 2 {
        return Err(Error::Parameter("fold count must be at least 2".into()));
    }
    if n < folds {
        return Err(Error::Validation(format!(
            "{n} instances cannot fill {folds} folds"
        )));
    }
    let mut warnings = Vec::new();
    let mut rng = SplitMix64::new(seed);
    let mut assignment = vec![0usize; n];
    match ds.labels() {
        Some(labels) => {
            let counts = ds.class_counts().expect("classification dataset");
            let smallest = counts.iter().copied().min().unwrap_or(0);
            let folds_eff = folds.min(smallest);
            if folds_eff < 2 {
                return Err(Error::Validation(format!(
                    "smallest class has {smallest} members; cross-validation needs at least 2"
                )));
            }
            if folds_eff < folds {
                warnings.push(format!(
                    "fold count reduced from {folds} to {folds_eff} to match the smallest class"
                ));
            }
            for class in 0..ds.n_classes() {
                let mut members: Vec<usize> =
                    (0..n).filter(|&i| labels[i] == class).collect();
                rng.shuffle(&mut members);
                for (pos, &i) in members.iter().enumerate() {
                    assignment[i] = pos % folds_eff;
                }
            }
            Ok(CvPlan { folds: folds_eff, assignment, stratified: true, seed, warnings })
        }
        None => {
            let mut order: Vec<usize> = (0..n).collect();
            rng.shuffle(&mut order);
            for (pos, &i) in order.iter().enumerate() {
                assignment[i] = pos % folds;
            }
            Ok(CvPlan { folds, assignment, stratified: false, seed, warnings })
        }
    }
}

/// Out-of-fold predictions of a pool, one entry per learner.
#[derive(Debug, Clone)]
pub enum PoolPredictions {
    /// Per learner, per instance: full probability vector.
    Classification(Vec<Vec<Vec<f64>>>),
    /// Per learner, per instance: predicted response (raw scale).
    Regression(Vec<Vec<f64>>),
}

#[derive(Debug, Clone)]
pub struct IhResult {
    /// Per-instance hardness in `[0, 1]`.
    pub ih: Vec<f64>,
    pub predictions: PoolPredictions,
    pub learner_names: Vec<String>,
    pub folds: usize,
    pub seed: u64,
    /// Signal power used by the regression credit; `None` for classification.
    pub gamma: Option<f64>,
    pub warnings: Vec<String>,
}

impl IhResult {
    /// Scalar out-of-fold prediction per learner and instance: the
    /// probability of the true class, or the predicted response.
    pub fn scalar_predictions(&self, labels: Option<&[usize]>) -> Vec<Vec<f64>> {
        match &self.predictions {
            PoolPredictions::Classification(probas) => {
                let labels = labels.expect("labels required for classification predictions");
                probas
                    .iter()
                    .map(|per_instance| {
                        per_instance
                            .iter()
                            .enumerate()
                            .map(|(i, p)| p[labels[i]])
                            .collect()
                    })
                    .collect()
            }
            PoolPredictions::Regression(preds) => preds.clone(),
        }
    }
}

fn fit_seed(master: u64, learner: usize, fold: usize, folds: usize) -> u64 {
    derive_seed(master, (learner * folds + fold) as u64 + 1)
}

/// Hardness under a classifier pool: `1 - mean_j p_j(true class)` with every
/// probability produced by the model that did not train on the instance.
pub fn ih_classification(
    ds: &Dataset,
    pool: &[Box<dyn Classifier>],
    plan: &CvPlan,
) -> Result<IhResult> {
    if pool.is_empty() {
        return Err(Error::Parameter("learner pool is empty".into()));
    }
    let labels = ds
        .labels()
        .ok_or_else(|| Error::Validation("classification hardness needs class labels".into()))?;
    let n = ds.n();
    let n_classes = ds.n_classes();
    let view = scale(ds);

    let mut probas: Vec<Vec<Vec<f64>>> = vec![vec![Vec::new(); n]; pool.len()];
    for fold in 0..plan.folds {
        let (train_idx, test_idx) = plan.split(fold);
        let train_x = view.features.select_rows(&train_idx);
        let train_y: Vec<usize> = train_idx.iter().map(|&i| labels[i]).collect();
        for (j, learner) in pool.iter().enumerate() {
            let model = learner.fit(&train_x, &train_y, n_classes, fit_seed(plan.seed, j, fold, plan.folds));
            for &i in &test_idx {
                probas[j][i] = model.predict_proba(view.features.row(i));
            }
        }
    }

    let ih = (0..n)
        .map(|i| {
            let credit: f64 = probas.iter().map(|per| per[i][labels[i]]).sum();
            1.0 - credit / pool.len() as f64
        })
        .collect();
    Ok(IhResult {
        ih,
        predictions: PoolPredictions::Classification(probas),
        learner_names: pool.iter().map(|l| l.name().to_string()).collect(),
        folds: plan.folds,
        seed: plan.seed,
        gamma: None,
        warnings: plan.warnings.clone(),
    })
}

/// Signal power `mean(y^2)` of the raw responses; a zero signal is floored
/// at [`GAMMA_FLOOR`]. Returns the value and whether the floor applied.
pub fn gamma_signal_power(responses: &[f64]) -> (f64, bool) {
    let gamma = responses.iter().map(|y| y * y).sum::<f64>() / responses.len() as f64;
    if gamma == 0.0 {
        (GAMMA_FLOOR, true)
    } else {
        (gamma, false)
    }
}

/// Hardness under a regressor pool:
/// `1 - mean_j exp(-(y - yhat_j)^2 / gamma)`.
pub fn ih_regression(
    ds: &Dataset,
    pool: &[Box<dyn Regressor>],
    plan: &CvPlan,
) -> Result<IhResult> {
    if pool.is_empty() {
        return Err(Error::Parameter("learner pool is empty".into()));
    }
    let responses = ds
        .responses()
        .ok_or_else(|| Error::Validation("regression hardness needs a continuous target".into()))?;
    let n = ds.n();
    let view = scale(ds);
    let (gamma, floored) = gamma_signal_power(responses);
    let mut warnings = plan.warnings.clone();
    if floored {
        warnings.push(format!(
            "signal power is zero; flooring gamma at {GAMMA_FLOOR:e}"
        ));
    }

    let mut predictions: Vec<Vec<f64>> = vec![vec![0.0; n]; pool.len()];
    for fold in 0..plan.folds {
        let (train_idx, test_idx) = plan.split(fold);
        let train_x = view.features.select_rows(&train_idx);
        let train_y: Vec<f64> = train_idx.iter().map(|&i| responses[i]).collect();
        for (j, learner) in pool.iter().enumerate() {
            let model = learner.fit(&train_x, &train_y, fit_seed(plan.seed, j, fold, plan.folds));
            for &i in &test_idx {
                predictions[j][i] = model.predict(view.features.row(i));
            }
        }
    }

    let ih = (0..n)
        .map(|i| {
            let credit: f64 = predictions
                .iter()
                .map(|per| {
                    let err = responses[i] - per[i];
                    (-(err * err) / gamma).exp()
                })
                .sum();
            1.0 - credit / pool.len() as f64
        })
        .collect();
    Ok(IhResult {
        ih,
        predictions: PoolPredictions::Regression(predictions),
        learner_names: pool.iter().map(|l| l.name().to_string()).collect(),
        folds: plan.folds,
        seed: plan.seed,
        gamma: Some(gamma),
        warnings,
    })
}
