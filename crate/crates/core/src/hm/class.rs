//! The twelve classification hardness measures.
//!
//! Each function consumes precomputed geometry or model products so the
//! profile can share one distance matrix, one MST, one local-set table, and
//! one proximity graph across all measures. Values land in `[0, 1]` with
//! larger meaning harder.

use crate::dataset::{scale, Dataset, TaskKind};
use crate::error::{Error, Result};
use crate::geometry::{
    build_mst, epsilon_graph, knn, local_sets, pairwise_distances, DistanceMatrix,
    EpsilonGraph, LocalSetInfo, MstAdjacency,
};
use crate::hm::{HardnessProfile, CLASSIFICATION_CATALOG, CLASSIFICATION_MEASURES};
use crate::models::bayes::GaussianNb;
use crate::models::cart::{fit_cart, CartTree, TreeTarget};

/// Tunables of the classification profile.
#[derive(Debug, Clone)]
pub struct ClassParams {
    /// Neighborhood size for kDN (clamped to `n - 1`).
    pub k: usize,
    /// Minimum leaf size of the tree behind DCP.
    pub dcp_min_leaf: usize,
    /// Distance quantile defining the proximity-graph threshold.
    pub de_quantile: f64,
}

impl Default for ClassParams {
    fn default() -> Self {
        ClassParams { k: 5, dcp_min_leaf: 5, de_quantile: 0.15 }
    }
}

/// Fraction of the k nearest neighbors that carry a different label.
pub fn kdn(dm: &DistanceMatrix, labels: &[usize], k: usize) -> Result<Vec<f64>> {
    let n = dm.n();
    let k_eff = k.min(n - 1).max(1);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let neighbors = knn(dm, i, k_eff)?;
        let disagreeing = neighbors.iter().filter(|&&j| labels[j] != labels[i]).count();
        out.push(disagreeing as f64 / k_eff as f64);
    }
    Ok(out)
}

/// Complement of the fraction of same-label instances in `i`'s leaf.
pub fn dcp(tree: &CartTree, labels: &[usize], i: usize) -> f64 {
    let leaf = tree.training_leaf(i);
    let same = leaf.class_counts[labels[i]] as f64;
    1.0 - same / leaf.members.len() as f64
}

/// Leaf depth normalized by the tree's maximum depth; 0 for a root-only tree.
pub fn td(tree: &CartTree, i: usize) -> f64 {
    if tree.max_depth() == 0 {
        return 0.0;
    }
    tree.training_leaf(i).depth as f64 / tree.max_depth() as f64
}

/// Complement of the margin between the posterior of the true class and the
/// best other class, rescaled to `[0, 1]`.
pub fn cld(posterior: &[f64], true_class: usize) -> f64 {
    let own = posterior[true_class];
    let best_other = posterior
        .iter()
        .enumerate()
        .filter(|&(c, _)| c != true_class)
        .map(|(_, &p)| p)
        .fold(f64::NEG_INFINITY, f64::max);
    (1.0 - (own - best_other)) / 2.0
}

/// Complement of the frequency of `i`'s class.
pub fn cb(labels: &[usize], class_counts: &[usize], i: usize) -> f64 {
    1.0 - class_counts[labels[i]] as f64 / labels.len() as f64
}

/// Fraction of features whose value falls inside the overlap interval with
/// some other class. Per feature and class pair, the overlap interval is the
/// intersection of the two class ranges, bounds inclusive.
pub fn f1_fraction(features: &crate::matrix::Matrix, labels: &[usize], n_classes: usize) -> Vec<f64> {
    let n = features.n_rows();
    let m = features.n_cols();
    // per feature, per class min and max
    let mut mins = vec![vec![f64::INFINITY; n_classes]; m];
    let mut maxs = vec![vec![f64::NEG_INFINITY; n_classes]; m];
    for i in 0..n {
        let c = labels[i];
        for f in 0..m {
            let v = features.get(i, f);
            mins[f][c] = mins[f][c].min(v);
            maxs[f][c] = maxs[f][c].max(v);
        }
    }
    (0..n)
        .map(|i| {
            let own = labels[i];
            let overlapped = (0..m)
                .filter(|&f| {
                    let v = features.get(i, f);
                    (0..n_classes).any(|c| {
                        if c == own {
                            return false;
                        }
                        let lo = mins[f][own].max(mins[f][c]);
                        let hi = maxs[f][own].min(maxs[f][c]);
                        lo <= hi && v >= lo && v <= hi
                    })
                })
                .count();
            overlapped as f64 / m as f64
        })
        .collect()
}

/// Fraction of `i`'s MST neighbors with a different label.
pub fn n1(mst: &MstAdjacency, labels: &[usize], i: usize) -> f64 {
    let neighbors = mst.neighbors(i);
    let different = neighbors.iter().filter(|&&j| labels[j] != labels[i]).count();
    different as f64 / neighbors.len() as f64
}

/// Bounded intra/extra distance ratio `a / (a + b)` where `a` is the nearest
/// same-class distance and `b` the nearest-enemy distance. Monotone in the
/// raw ratio `a / b` and confined to `[0, 1]`.
pub fn n2(
    dm: &DistanceMatrix,
    ls: &LocalSetInfo,
    labels: &[usize],
    class_counts: &[usize],
    i: usize,
) -> f64 {
    if class_counts[labels[i]] < 2 {
        return 1.0;
    }
    let a = (0..dm.n())
        .filter(|&j| j != i && labels[j] == labels[i])
        .map(|j| dm.get(i, j))
        .fold(f64::INFINITY, f64::min);
    let b = ls.enemy_distance[i];
    if a == 0.0 && b == 0.0 {
        0.5
    } else if b == 0.0 {
        1.0
    } else {
        a / (a + b)
    }
}

/// Complement of the local-set cardinality relative to the class size.
pub fn lsc(ls: &LocalSetInfo, labels: &[usize], class_counts: &[usize], i: usize) -> f64 {
    let others = class_counts[labels[i]].saturating_sub(1);
    if others == 0 {
        return 1.0;
    }
    1.0 - ls.members[i].len() as f64 / others as f64
}

/// Complement of the local-set radius (the nearest-enemy distance) divided
/// by the farthest same-class distance, clipped at one.
pub fn lsr(
    dm: &DistanceMatrix,
    ls: &LocalSetInfo,
    labels: &[usize],
    class_counts: &[usize],
    i: usize,
) -> f64 {
    if class_counts[labels[i]] < 2 {
        return 1.0;
    }
    let d_ne = ls.enemy_distance[i];
    if d_ne == 0.0 {
        return 1.0;
    }
    let farthest_friend = (0..dm.n())
        .filter(|&j| j != i && labels[j] == labels[i])
        .map(|j| dm.get(i, j))
        .fold(f64::NEG_INFINITY, f64::max);
    if farthest_friend == 0.0 {
        // all friends coincide with i and sit strictly inside the radius
        return 0.0;
    }
    1.0 - (d_ne / farthest_friend).min(1.0)
}

/// Complement of the fraction of other instances whose local sets contain `i`.
pub fn usefulness(ls: &LocalSetInfo, n: usize, i: usize) -> f64 {
    1.0 - ls.containing_count[i] as f64 / (n - 1) as f64
}

/// Complement of `i`'s degree in the proximity graph, relative to `n - 1`.
pub fn density(graph: &EpsilonGraph, i: usize) -> f64 {
    let n = graph.degrees.len();
    1.0 - graph.degrees[i] as f64 / (n - 1) as f64
}

/// Computes all twelve measures over shared geometry products.
pub fn classification_profile(ds: &Dataset, params: &ClassParams) -> Result<HardnessProfile> {
    if ds.kind() != TaskKind::Classification {
        return Err(Error::Validation(format!(
            "dataset '{}' does not carry class labels",
            ds.name
        )));
    }
    ds.validate_for_measures()?;
    let labels = ds.labels().expect("classification dataset");
    let n = ds.n();
    let n_classes = ds.n_classes();
    let class_counts = ds.class_counts().expect("classification dataset");

    let mut warnings = Vec::new();
    for (c, &count) in class_counts.iter().enumerate() {
        if count == 1 {
            warnings.push(format!(
                "class '{}' has a single member; N2, LSC and LSR emit 1.0 for it",
                ds.class_names().unwrap()[c]
            ));
        }
    }

    let view = scale(ds);
    let dm = pairwise_distances(&view.features);
    let mst = build_mst(&dm)?;
    let ls = local_sets(&dm, labels)?;
    let graph = epsilon_graph(&dm, params.de_quantile, true, Some(labels))?;

    let tree_td = fit_cart(
        &view.features,
        &TreeTarget::Classes { labels, n_classes },
        1,
    );
    let tree_dcp = fit_cart(
        &view.features,
        &TreeTarget::Classes { labels, n_classes },
        params.dcp_min_leaf,
    );
    let nb = GaussianNb::fit(&view.features, labels, n_classes)?;

    let columns: Vec<(String, Vec<f64>)> = vec![
        ("kDN".into(), kdn(&dm, labels, params.k)?),
        ("DCP".into(), (0..n).map(|i| dcp(&tree_dcp, labels, i)).collect()),
        ("TD".into(), (0..n).map(|i| td(&tree_td, i)).collect()),
        (
            "CLD".into(),
            (0..n)
                .map(|i| cld(&nb.posterior(view.features.row(i)), labels[i]))
                .collect(),
        ),
        ("CB".into(), (0..n).map(|i| cb(labels, &class_counts, i)).collect()),
        ("F1".into(), f1_fraction(&view.features, labels, n_classes)),
        ("N1".into(), (0..n).map(|i| n1(&mst, labels, i)).collect()),
        (
            "N2".into(),
            (0..n).map(|i| n2(&dm, &ls, labels, &class_counts, i)).collect(),
        ),
        (
            "LSC".into(),
            (0..n).map(|i| lsc(&ls, labels, &class_counts, i)).collect(),
        ),
        (
            "LSR".into(),
            (0..n).map(|i| lsr(&dm, &ls, labels, &class_counts, i)).collect(),
        ),
        ("U".into(), (0..n).map(|i| usefulness(&ls, n, i)).collect()),
        ("De".into(), (0..n).map(|i| density(&graph, i)).collect()),
    ];

    debug_assert_eq!(
        columns.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>(),
        CLASSIFICATION_MEASURES.to_vec()
    );
    Ok(HardnessProfile::new(CLASSIFICATION_CATALOG, columns, warnings))
}
