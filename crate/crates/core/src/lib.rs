//! Per-instance hardness analysis for tabular datasets.
//!
//! Two families of scores quantify how hard each instance of a dataset is to
//! predict:
//!
//! - **Hardness measures** explain *why* an instance is difficult from data
//!   geometry alone: neighborhood label conflict, class overlap, local-set
//!   shrinkage, linearity violations. See [`hm::class`] (twelve measures for
//!   classification) and [`hm::reg`] (eight for regression). Every measure
//!   is oriented so larger means harder.
//! - **Instance hardness** measures *how often* a pool of diverse learners
//!   actually fails on the instance, using cross-validated out-of-fold
//!   predictions. See [`ih`].
//!
//! [`synth`] generates seeded difficulty sweeps (growing class spread,
//! growing label noise) for studying how the scores react, and
//! [`fixtures`] holds the tiny hand-checkable datasets used across the test
//! suites.
//!
//! ```
//! use hardness_core::hm::class::{classification_profile, ClassParams};
//!
//! let dataset = hardness_core::fixtures::six_point_two_cluster();
//! let profile = classification_profile(&dataset, &ClassParams::default()).unwrap();
//! assert_eq!(profile.value("kDN", 0), Some(0.6));
//! ```

pub mod dataset;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod hm;
pub mod ih;
pub mod matrix;
pub mod models;
pub mod rng;
pub mod stats;
pub mod synth;

pub use dataset::{load_csv, scale, Dataset, DatasetSidecar, ScaledView, Target, TargetSpec, TaskKind};
pub use error::{Error, Result};
pub use hm::HardnessProfile;
pub use ih::{make_cv_plan, CvPlan, IhResult};
pub use matrix::Matrix;
