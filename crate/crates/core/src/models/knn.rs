//! Nearest-neighbor prediction: a leave-one-out regression helper for the
//! measures plus train/test learners for the pools.

use crate::error::Result;
use crate::geometry::{knn, DistanceMatrix};
use crate::matrix::{euclidean, Matrix};

/// Mean response of the `k` nearest neighbors of `i`, never using `i`'s own
/// response.
pub fn loo_knn_regress(
    dm: &DistanceMatrix,
    responses: &[f64],
    i: usize,
    k: usize,
) -> Result<f64> {
    let neighbors = knn(dm, i, k)?;
    Ok(neighbors.iter().map(|&j| responses[j]).sum::<f64>() / neighbors.len() as f64)
}

/// Indices of the `k` nearest training rows to `row`, ties broken by
/// ascending index.
pub fn nearest_training_rows(train: &Matrix, row: &[f64], k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..train.n_rows()).collect();
    order.sort_by(|&a, &b| {
        euclidean(train.row(a), row)
            .total_cmp(&euclidean(train.row(b), row))
            .then_with(|| a.cmp(&b))
    });
    order.truncate(k.min(train.n_rows()));
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::scale;
    use crate::fixtures;
    use crate::geometry::pairwise_distances;

    #[test]
    fn loo_mean_over_the_three_neighbors() {
        let ds = fixtures::four_point_line();
        let view = scale(&ds);
        let dm = pairwise_distances(&view.features);
        let y = view.responses.unwrap();
        let pred = loo_knn_regress(&dm, &y, 0, 3).unwrap();
        assert!((pred - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn constant_responses_predict_the_constant() {
        let ds = fixtures::four_point_line();
        let view = scale(&ds);
        let dm = pairwise_distances(&view.features);
        let y = vec![0.7; 4];
        assert!((loo_knn_regress(&dm, &y, 2, 3).unwrap() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn duplicate_featured_pair_returns_the_twin_response() {
        let m = Matrix::from_rows(vec![vec![0.0], vec![0.0], vec![9.0]]).unwrap();
        let dm = pairwise_distances(&m);
        let y = [1.0, 5.0, 9.0];
        assert_eq!(loo_knn_regress(&dm, &y, 0, 1).unwrap(), 5.0);
    }

    #[test]
    fn prediction_ignores_own_response() {
        let ds = fixtures::four_point_line();
        let view = scale(&ds);
        let dm = pairwise_distances(&view.features);
        let mut y = view.responses.unwrap();
        let before = loo_knn_regress(&dm, &y, 1, 2).unwrap();
        y[1] += 100.0;
        let after = loo_knn_regress(&dm, &y, 1, 2).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn nearest_rows_break_ties_by_index() {
        let m = Matrix::from_rows(vec![vec![1.0], vec![-1.0], vec![1.0]]).unwrap();
        assert_eq!(nearest_training_rows(&m, &[0.0], 2), vec![0, 1]);
    }
}
