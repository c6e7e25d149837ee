//! The eight regression hardness measures. All of them consume min-max
//! scaled features; every response-based measure except LE also reads the
//! scaled response in `[0, 1]`, so values are comparable across datasets.
//! LE reports raw-space residual magnitudes (see [`le`]).

use crate::dataset::{scale, Dataset, TaskKind};
use crate::error::{Error, Result};
use crate::geometry::{
    build_mst, epsilon_graph, pairwise_distances, DistanceMatrix, MstAdjacency,
};
use crate::hm::class::density;
use crate::hm::{HardnessProfile, REGRESSION_CATALOG, REGRESSION_MEASURES};
use crate::matrix::Matrix;
use crate::models::cart::{fit_cart, CartTree, TreeTarget};
use crate::models::knn::loo_knn_regress;
use crate::models::linear::{fit_ols, simple_linear_fit};
use crate::stats::spearman;

/// Residual magnitude below which an instance counts as explained by the
/// current single-feature fit.
pub const CFE_RESIDUAL_THRESHOLD: f64 = 0.1;

/// Tunables of the regression profile.
#[derive(Debug, Clone)]
pub struct RegParams {
    /// Neighborhood size for the leave-one-out squared error (clamped to
    /// `n - 1`).
    pub k: usize,
    /// Histogram bin count for HB.
    pub hb_bins: usize,
    /// Distance quantile defining the proximity-graph threshold.
    pub de_quantile: f64,
    /// Minimum leaf size of the regression tree behind TD.
    pub td_min_leaf: usize,
}

impl Default for RegParams {
    fn default() -> Self {
        RegParams { k: 5, hb_bins: 10, de_quantile: 0.15, td_min_leaf: 5 }
    }
}

/// One elimination round of the collective feature efficiency sweep.
#[derive(Debug, Clone)]
pub struct CfeRound {
    pub feature: usize,
    pub correlation: f64,
    pub removed: Vec<usize>,
}

/// Full trace of the sweep: rounds in execution order, plus the removal
/// round (1-based) or survivor status of every instance.
#[derive(Debug, Clone)]
pub struct CfeTrace {
    pub rounds: Vec<CfeRound>,
    /// `Some(round)` when the instance was removed in that 1-based round.
    pub removal_round: Vec<Option<usize>>,
}

impl CfeTrace {
    pub fn n_rounds(&self) -> usize {
        self.rounds.len()
    }
}

/// Iteratively removes instances explained by the single most correlated
/// remaining feature. The measure is `(round - 1) / rounds` for removed
/// instances and `1.0` for survivors, so instances explained immediately
/// score 0 and instances no feature explains score 1.
pub fn cfe(features: &Matrix, scaled_responses: &[f64]) -> Result<(Vec<f64>, CfeTrace)> {
    let n = features.n_rows();
    let m = features.n_cols();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut feature_used = vec![false; m];
    let mut removal_round: Vec<Option<usize>> = vec![None; n];
    let mut rounds: Vec<CfeRound> = Vec::new();

    loop {
        if remaining.len() < 3 || feature_used.iter().all(|&u| u) {
            break;
        }
        let y: Vec<f64> = remaining.iter().map(|&i| scaled_responses[i]).collect();
        let mut chosen: Option<(usize, f64)> = None;
        for f in 0..m {
            if feature_used[f] {
                continue;
            }
            let column: Vec<f64> = remaining.iter().map(|&i| features.get(i, f)).collect();
            let rho = spearman(&column, &y)?;
            let better = match chosen {
                None => true,
                Some((_, best)) => rho.abs() > best.abs(),
            };
            if better {
                chosen = Some((f, rho));
            }
        }
        let (feature, correlation) = chosen.expect("an unused feature exists");
        feature_used[feature] = true;
        let column: Vec<f64> = remaining.iter().map(|&i| features.get(i, feature)).collect();
        let residuals = simple_linear_fit(&column, &y)?;
        let round_no = rounds.len() + 1;
        let mut removed = Vec::new();
        for (pos, &i) in remaining.iter().enumerate() {
            if residuals[pos].abs() <= CFE_RESIDUAL_THRESHOLD {
                removed.push(i);
                removal_round[i] = Some(round_no);
            }
        }
        let no_removals = removed.is_empty();
        remaining.retain(|&i| removal_round[i].is_none());
        rounds.push(CfeRound { feature, correlation, removed });
        if remaining.is_empty() || (correlation == 0.0 && no_removals) {
            break;
        }
    }

    let total_rounds = rounds.len().max(1);
    let values = removal_round
        .iter()
        .map(|round| match round {
            Some(l) => (l - 1) as f64 / total_rounds as f64,
            None => 1.0,
        })
        .collect();
    Ok((values, CfeTrace { rounds, removal_round }))
}

/// Absolute residual of the full multiple linear fit, in raw response
/// units. Scaling the response would divide by the observed range, which
/// itself grows with the label noise and flattens the trend the measure is
/// meant to expose; the residual keeps its raw magnitude instead.
pub fn le(features: &Matrix, raw_responses: &[f64]) -> Result<Vec<f64>> {
    let fit = fit_ols(features, raw_responses)?;
    Ok(fit.residuals.iter().map(|r| r.abs()).collect())
}

/// Mean absolute output difference across `i`'s MST neighbors.
pub fn s1(mst: &MstAdjacency, scaled_responses: &[f64], i: usize) -> f64 {
    let neighbors = mst.neighbors(i);
    neighbors
        .iter()
        .map(|&j| (scaled_responses[i] - scaled_responses[j]).abs())
        .sum::<f64>()
        / neighbors.len() as f64
}

/// Mean feature-space distance to the neighbors in the response ordering
/// (one neighbor at the extremes, two inside). Distances are divided by the
/// unit-cube diameter `sqrt(m)` so the value stays in `[0, 1]` regardless of
/// the feature count; with one feature this is the raw distance.
pub fn s2(features: &Matrix, scaled_responses: &[f64]) -> Vec<f64> {
    let n = features.n_rows();
    let diameter = (features.n_cols() as f64).sqrt();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        scaled_responses[a]
            .total_cmp(&scaled_responses[b])
            .then_with(|| a.cmp(&b))
    });
    let mut out = vec![0.0; n];
    for (pos, &i) in order.iter().enumerate() {
        let mut total = 0.0;
        let mut count = 0.0;
        if pos > 0 {
            total += crate::matrix::euclidean(features.row(i), features.row(order[pos - 1]));
            count += 1.0;
        }
        if pos + 1 < n {
            total += crate::matrix::euclidean(features.row(i), features.row(order[pos + 1]));
            count += 1.0;
        }
        out[i] = total / (count * diameter);
    }
    out
}

/// Squared error of a leave-one-out k-nearest-neighbor regressor.
pub fn s3(dm: &DistanceMatrix, scaled_responses: &[f64], i: usize, k: usize) -> Result<f64> {
    let k_eff = k.min(dm.n() - 1).max(1);
    let prediction = loo_knn_regress(dm, scaled_responses, i, k_eff)?;
    let err = scaled_responses[i] - prediction;
    Ok(err * err)
}

/// Complement of the population share of `i`'s histogram bin. Bins split
/// `[0, 1]` into `bins` equal widths; the last bin is right-inclusive.
pub fn hb(scaled_responses: &[f64], bins: usize) -> Vec<f64> {
    let n = scaled_responses.len();
    let bin_of = |v: f64| -> usize { ((v * bins as f64).floor() as usize).min(bins - 1) };
    let mut counts = vec![0usize; bins];
    for &v in scaled_responses {
        counts[bin_of(v)] += 1;
    }
    scaled_responses
        .iter()
        .map(|&v| 1.0 - counts[bin_of(v)] as f64 / n as f64)
        .collect()
}

/// Leaf depth of a regression tree normalized by its maximum depth.
pub fn td_reg(tree: &CartTree, i: usize) -> f64 {
    if tree.max_depth() == 0 {
        return 0.0;
    }
    tree.training_leaf(i).depth as f64 / tree.max_depth() as f64
}

/// Computes all eight measures over shared geometry products.
pub fn regression_profile(ds: &Dataset, params: &RegParams) -> Result<HardnessProfile> {
    if ds.kind() != TaskKind::Regression {
        return Err(Error::Validation(format!(
            "dataset '{}' does not carry a continuous target",
            ds.name
        )));
    }
    ds.validate_for_measures()?;
    let view = scale(ds);
    let y = view.responses.as_deref().expect("regression dataset");
    let n = ds.n();

    let dm = pairwise_distances(&view.features);
    let mst = build_mst(&dm)?;
    let graph = epsilon_graph(&dm, params.de_quantile, false, None)?;
    let tree = fit_cart(&view.features, &TreeTarget::Values(y), params.td_min_leaf);

    let (cfe_values, _) = cfe(&view.features, y)?;
    let le_values = le(&view.features, ds.responses().expect("regression dataset"))?;
    let s3_values: Result<Vec<f64>> = (0..n).map(|i| s3(&dm, y, i, params.k)).collect();

    let columns: Vec<(String, Vec<f64>)> = vec![
        ("CFE".into(), cfe_values),
        ("LE".into(), le_values),
        ("S1".into(), (0..n).map(|i| s1(&mst, y, i)).collect()),
        ("S2".into(), s2(&view.features, y)),
        ("S3".into(), s3_values?),
        ("HB".into(), hb(y, params.hb_bins)),
        ("TD".into(), (0..n).map(|i| td_reg(&tree, i)).collect()),
        ("De".into(), (0..n).map(|i| density(&graph, i)).collect()),
    ];
    debug_assert_eq!(
        columns.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>(),
        REGRESSION_MEASURES.to_vec()
    );
    Ok(HardnessProfile::new(REGRESSION_CATALOG, columns, Vec::new()))
}

/// Convenience entry: the trace alone, for diagnostic dumps.
pub fn cfe_trace(ds: &Dataset) -> Result<CfeTrace> {
    let view = scale(ds);
    let y = view.responses.as_deref().ok_or_else(|| {
        Error::Validation("collective feature efficiency needs a continuous target".into())
    })?;
    Ok(cfe(&view.features, y)?.1)
}
