//! Least-squares fits via the normal equations, with a tiny ridge jitter as
//! the fallback for singular designs.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

const SINGULAR_JITTER: f64 = 1e-10;

/// Fitted linear model: intercept-first coefficients, fitted values, and
/// per-instance residuals (`actual - fitted`).
#[derive(Debug, Clone)]
pub struct OlsFit {
    pub coefficients: Vec<f64>,
    pub fitted: Vec<f64>,
    pub residuals: Vec<f64>,
}

/// Solves `a x = b` in place by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot collapses to (near) zero.
fn solve_system(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale: f64 = a
        .iter()
        .flat_map(|row| row.iter().map(|v| v.abs()))
        .fold(0.0, f64::max)
        .max(1.0);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r1, &r2| a[r1][col].abs().total_cmp(&a[r2][col].abs()))
            .unwrap();
        if a[pivot_row][col].abs() < 1e-12 * scale {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in (row + 1)..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Gram matrix `X'^T X'` and right-hand side `X'^T y` for the design with a
/// leading intercept column.
fn normal_equations(features: &Matrix, y: &[f64]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = features.n_rows();
    let p = features.n_cols() + 1;
    let design_entry = |i: usize, j: usize| -> f64 {
        if j == 0 {
            1.0
        } else {
            features.get(i, j - 1)
        }
    };
    let mut gram = vec![vec![0.0; p]; p];
    let mut rhs = vec![0.0; p];
    for i in 0..n {
        for j in 0..p {
            let xj = design_entry(i, j);
            rhs[j] += xj * y[i];
            for k in j..p {
                gram[j][k] += xj * design_entry(i, k);
            }
        }
    }
    for j in 0..p {
        for k in 0..j {
            gram[j][k] = gram[k][j];
        }
    }
    (gram, rhs)
}

fn fit_with_penalty(features: &Matrix, y: &[f64], penalty: f64) -> Result<OlsFit> {
    let n = features.n_rows();
    let p = features.n_cols() + 1;
    if n <= p {
        return Err(Error::Underdetermined(format!(
            "{n} rows cannot determine {p} coefficients"
        )));
    }
    let (mut gram, rhs) = normal_equations(features, y);
    for (j, row) in gram.iter_mut().enumerate() {
        if j > 0 {
            row[j] += penalty;
        }
    }
    let coefficients = match solve_system(gram.clone(), rhs.clone()) {
        Some(c) => c,
        None => {
            for (j, row) in gram.iter_mut().enumerate() {
                row[j] += SINGULAR_JITTER;
            }
            solve_system(gram, rhs).ok_or_else(|| {
                Error::Underdetermined("design matrix is numerically singular".into())
            })?
        }
    };
    let mut fitted = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    for i in 0..n {
        let mut yhat = coefficients[0];
        for j in 0..features.n_cols() {
            yhat += coefficients[j + 1] * features.get(i, j);
        }
        fitted.push(yhat);
        residuals.push(y[i] - yhat);
    }
    Ok(OlsFit { coefficients, fitted, residuals })
}

/// Ordinary least squares with an intercept. Needs `n > m + 1` rows.
pub fn fit_ols(features: &Matrix, y: &[f64]) -> Result<OlsFit> {
    fit_with_penalty(features, y, 0.0)
}

/// Ridge regression; the intercept is not penalized.
pub fn fit_ridge(features: &Matrix, y: &[f64], lambda: f64) -> Result<OlsFit> {
    fit_with_penalty(features, y, lambda)
}

/// Least-squares line through `(column, y)`; returns per-instance residuals.
pub fn simple_linear_fit(column: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    let m = Matrix::from_rows(column.iter().map(|&v| vec![v]).collect())?;
    Ok(fit_ols(&m, y)?.residuals)
}

/// Predicts with an intercept-first coefficient vector.
pub fn predict_linear(coefficients: &[f64], row: &[f64]) -> f64 {
    coefficients[0]
        + row
            .iter()
            .zip(&coefficients[1..])
            .map(|(x, c)| x * c)
            .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::scale;
    use crate::fixtures;
    use crate::rng::SplitMix64;

    #[test]
    fn perfect_line_has_zero_residuals() {
        let ds = fixtures::four_point_line();
        let view = scale(&ds);
        let y = view.responses.clone().unwrap();
        let fit = fit_ols(&view.features, &y).unwrap();
        assert!((fit.coefficients[0]).abs() < 1e-12);
        assert!((fit.coefficients[1] - 1.0).abs() < 1e-12);
        assert!(fit.residuals.iter().all(|r| r.abs() < 1e-12));
    }

    #[test]
    fn constant_response_fits_the_mean() {
        let m = Matrix::from_rows(vec![vec![0.0], vec![0.25], vec![0.5], vec![1.0]]).unwrap();
        let y = [2.0, 2.0, 2.0, 2.0];
        let fit = fit_ols(&m, &y).unwrap();
        assert!((fit.coefficients[0] - 2.0).abs() < 1e-12);
        assert!(fit.coefficients[1].abs() < 1e-12);
        assert!(fit.residuals.iter().all(|r| r.abs() < 1e-12));
    }

    #[test]
    fn residuals_are_orthogonal_to_the_design() {
        let mut rng = SplitMix64::new(13);
        let rows: Vec<Vec<f64>> = (0..50)
            .map(|_| vec![rng.next_f64(), rng.next_f64(), rng.next_f64()])
            .collect();
        let m = Matrix::from_rows(rows).unwrap();
        let y: Vec<f64> = (0..50).map(|_| rng.next_f64()).collect();
        let fit = fit_ols(&m, &y).unwrap();
        let residual_sum: f64 = fit.residuals.iter().sum();
        assert!(residual_sum.abs() <= 1e-8 * 50.0);
        for j in 0..3 {
            let dot: f64 = (0..50).map(|i| m.get(i, j) * fit.residuals[i]).sum();
            assert!(dot.abs() < 1e-6, "column {j} dot {dot}");
        }
    }

    #[test]
    fn underdetermined_systems_are_rejected() {
        let m = Matrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0], vec![0.5, 0.5]]).unwrap();
        assert!(matches!(
            fit_ols(&m, &[1.0, 2.0, 3.0]),
            Err(Error::Underdetermined(_))
        ));
    }

    #[test]
    fn collinear_design_survives_via_jitter() {
        // second column duplicates the first
        let rows: Vec<Vec<f64>> = (0..8).map(|i| vec![i as f64, i as f64]).collect();
        let m = Matrix::from_rows(rows).unwrap();
        let y: Vec<f64> = (0..8).map(|i| i as f64).collect();
        let fit = fit_ols(&m, &y).unwrap();
        assert!(fit.residuals.iter().all(|r| r.abs() < 1e-4));
    }

    #[test]
    fn ridge_shrinks_coefficients() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64 / 9.0]).collect();
        let m = Matrix::from_rows(rows).unwrap();
        let y: Vec<f64> = (0..10).map(|i| i as f64 / 9.0).collect();
        let ols = fit_ols(&m, &y).unwrap();
        let ridge = fit_ridge(&m, &y, 1.0).unwrap();
        assert!(ridge.coefficients[1].abs() < ols.coefficients[1].abs());
    }

    #[test]
    fn simple_fit_matches_full_fit_on_one_column() {
        let column = [0.0, 0.1, 0.4, 0.9, 1.0];
        let y = [0.2, 0.3, 0.5, 0.8, 1.1];
        let residuals = simple_linear_fit(&column, &y).unwrap();
        let m = Matrix::from_rows(column.iter().map(|&v| vec![v]).collect()).unwrap();
        let fit = fit_ols(&m, &y).unwrap();
        for (a, b) in residuals.iter().zip(&fit.residuals) {
            assert_eq!(a, b);
        }
    }
}
