//! Tiny hand-checkable datasets shared by unit tests, integration tests,
//! and documentation examples.

use crate::dataset::{Dataset, Target};
use crate::matrix::Matrix;

/// Two well-separated clusters of three points each.
///
/// Class `c0`: A=(0,0), B=(0,1), C=(1,0). Class `c1`: D=(10,10), E=(10,11),
/// F=(11,10). Rows A..F are indices 0..5. Both columns span `[0, 11]`, so
/// min-max scaling divides every coordinate by 11 and preserves all distance
/// ratios.
pub fn six_point_two_cluster() -> Dataset {
    let features = Matrix::from_rows(vec![
        vec![0.0, 0.0],
        vec![0.0, 1.0],
        vec![1.0, 0.0],
        vec![10.0, 10.0],
        vec![10.0, 11.0],
        vec![11.0, 10.0],
    ])
    .unwrap();
    Dataset::from_parts(
        "six_point_two_cluster",
        vec!["f0".into(), "f1".into()],
        features,
        Target::Labels {
            names: vec!["c0".into(), "c1".into()],
            ids: vec![0, 0, 0, 1, 1, 1],
        },
        "class",
    )
    .unwrap()
}

/// Four collinear points with a perfectly linear response: x = y = 0..3.
/// After scaling both become (0, 1/3, 2/3, 1).
pub fn four_point_line() -> Dataset {
    let features = Matrix::from_rows(vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]]).unwrap();
    Dataset::from_parts(
        "four_point_line",
        vec!["x".into()],
        features,
        Target::Responses(vec![0.0, 1.0, 2.0, 3.0]),
        "y",
    )
    .unwrap()
}
