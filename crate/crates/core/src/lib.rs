//! Gaze analytics for headline factuality studies.
//!
//! The crate is split along the processing pipeline:
//!
//! - [`gaze`]: fixation detection on raw gaze streams and the five per-AOI
//!   eye-tracking measures.
//! - [`stats`]: random-intercept linear mixed model fitted by maximum
//!   likelihood, Wald tests with Bonferroni gating, and no-intercept
//!   logistic regression.
//! - [`factuality`]: the participant-ensembled logistic classifier, its
//!   per-participant standardization and the Monte Carlo cross-validation
//!   harness with its two sensitivity sweeps.
//! - [`synth`]: seeded generators for measure-level datasets and gaze
//!   streams with planted fixations.
//!
//! The numerical core in [`stats`] and the scoring parts of [`factuality`]
//! are generic over the floating point type (see [`Real`]). The aliases
//! below fix the scalar to `f64`, which is what the pipeline uses.

pub mod error;
pub mod factuality;
pub mod gaze;
pub mod scalar;
pub mod stats;
pub mod synth;

pub use error::{Error, ErrorCategory, Result};
pub use scalar::Real;

pub type DesignRow = stats::DesignRow<f64>;
pub type MixedFit = stats::MixedFitResult<f64>;
pub type LogisticFit = stats::LogisticFit<f64>;
pub type Matrix = stats::linalg::Matrix<f64>;
pub type EnsembleModel = factuality::EnsembleModel<f64>;
pub type StandardizedRecord = factuality::StandardizedRecord<f64>;
