//! Seeded synthetic dataset generators: two-dimensional Gaussian classes on
//! a circle with growing spread, and a noisy linear response with growing
//! label noise. Sweeps vary one difficulty parameter while deriving one seed
//! per dataset, so any single dataset can be regenerated from the manifest.

use crate::dataset::{Dataset, TaskKind, Target};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::SplitMix64;

/// Circle radius hosting the class centers.
pub const CENTER_RADIUS: f64 = std::f64::consts::SQRT_2;

/// Description of a one-parameter difficulty sweep.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub kind: TaskKind,
    /// Instances per dataset.
    pub n: usize,
    /// Difficulty values, strictly positive and ascending: class spread for
    /// classification, label-noise deviation for regression.
    pub params: Vec<f64>,
    pub base_seed: u64,
    pub n_classes: usize,
    pub slope: f64,
    pub intercept: f64,
}

impl SweepSpec {
    /// Twenty spreads from 0.1 to 2.0 in steps of 0.1, 500 instances each.
    pub fn default_classification(base_seed: u64) -> Self {
        SweepSpec {
            kind: TaskKind::Classification,
            n: 500,
            params: (1..=20).map(|i| i as f64 / 10.0).collect(),
            base_seed,
            n_classes: 2,
            slope: 1.0,
            intercept: 0.0,
        }
    }

    /// Ten noise levels from 0.1 to 1.0 in steps of 0.1, 500 instances each.
    pub fn default_regression(base_seed: u64) -> Self {
        SweepSpec {
            kind: TaskKind::Regression,
            n: 500,
            params: (1..=10).map(|i| i as f64 / 10.0).collect(),
            base_seed,
            n_classes: 0,
            slope: 1.0,
            intercept: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 10 {
            return Err(Error::Parameter(format!(
                "sweep datasets need at least 10 instances (got {})",
                self.n
            )));
        }
        if self.params.is_empty() {
            return Err(Error::Parameter("sweep has no parameter values".into()));
        }
        if self.params.iter().any(|&p| p <= 0.0) {
            return Err(Error::Parameter(
                "sweep parameters must be strictly positive".into(),
            ));
        }
        if self.params.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter(
                "sweep parameters must be strictly ascending".into(),
            ));
        }
        if self.kind == TaskKind::Classification && self.n_classes < 2 {
            return Err(Error::Parameter(
                "classification sweeps need at least 2 classes".into(),
            ));
        }
        Ok(())
    }

    /// Dataset name for one parameter value; the value keeps its shortest
    /// round-trip formatting so names are stable.
    pub fn dataset_name(&self, param: f64) -> String {
        match self.kind {
            TaskKind::Classification => format!("normals_sd{param}"),
            TaskKind::Regression => format!("linear_sigma{param}"),
        }
    }
}

/// Center of class `c` out of `n_classes`: equally spaced on the radius
/// `sqrt(2)` circle starting at the 45-degree diagonal, so with two classes
/// both coordinates carry the separation.
fn class_center(c: usize, n_classes: usize) -> (f64, f64) {
    let angle = std::f64::consts::FRAC_PI_4
        + 2.0 * std::f64::consts::PI * c as f64 / n_classes as f64;
    (CENTER_RADIUS * angle.cos(), CENTER_RADIUS * angle.sin())
}

/// Two-dimensional Gaussian classes with centers equally spaced on a circle.
/// Class sizes differ by at most one; earlier classes get the remainder.
pub fn gen_gaussians(n: usize, sd: f64, n_classes: usize, seed: u64) -> Result<Dataset> {
    if sd <= 0.0 {
        return Err(Error::Parameter(format!("spread must be positive (got {sd})")));
    }
    if n_classes < 2 {
        return Err(Error::Parameter("need at least 2 classes".into()));
    }
    if n < n_classes * 2 {
        return Err(Error::Parameter(format!(
            "{n} instances cannot cover {n_classes} classes twice"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut rows = Vec::with_capacity(n);
    let mut ids = Vec::with_capacity(n);
    let base = n / n_classes;
    let extra = n % n_classes;
    for c in 0..n_classes {
        let count = base + usize::from(c < extra);
        let (cx, cy) = class_center(c, n_classes);
        for _ in 0..count {
            let x = cx + sd * rng.next_gauss();
            let y = cy + sd * rng.next_gauss();
            rows.push(vec![x, y]);
            ids.push(c);
        }
    }
    let names = (0..n_classes).map(|c| format!("c{c}")).collect();
    Dataset::from_parts(
        format!("normals_sd{sd}"),
        vec!["f0".into(), "f1".into()],
        Matrix::from_rows(rows)?,
        Target::Labels { names, ids },
        "class",
    )
}

/// Uniform inputs on `[0, 1]` with a linear response plus Gaussian label
/// noise of deviation `sigma`.
pub fn gen_linear(n: usize, sigma: f64, seed: u64, slope: f64, intercept: f64) -> Result<Dataset> {
    if sigma < 0.0 {
        return Err(Error::Parameter(format!(
            "noise deviation must be non-negative (got {sigma})"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut rows = Vec::with_capacity(n);
    let mut responses = Vec::with_capacity(n);
    for _ in 0..n {
        let x = rng.next_f64();
        let noise = if sigma > 0.0 { sigma * rng.next_gauss() } else { 0.0 };
        rows.push(vec![x]);
        responses.push(slope * x + intercept + noise);
    }
    Dataset::from_parts(
        format!("linear_sigma{sigma}"),
        vec!["f0".into()],
        Matrix::from_rows(rows)?,
        Target::Responses(responses),
        "y",
    )
}

/// One dataset per parameter value, seeded `base_seed + index`.
pub fn gen_sweep(spec: &SweepSpec) -> Result<Vec<Dataset>> {
    spec.validate()?;
    spec.params
        .iter()
        .enumerate()
        .map(|(idx, &param)| {
            let seed = spec.base_seed + idx as u64;
            match spec.kind {
                TaskKind::Classification => gen_gaussians(spec.n, param, spec.n_classes, seed),
                TaskKind::Regression => gen_linear(spec.n, param, seed, spec.slope, spec.intercept),
            }
        })
        .collect()
}
