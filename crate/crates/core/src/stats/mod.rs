//! Estimators and hypothesis tests.

mod descriptive;
mod design;
mod inference;
pub mod linalg;
mod logistic;
mod mixed;
mod report;

pub use descriptive::{mean, sample_variance, zscore, zscore_with, ZScoreStats};
pub use design::design_rows;
pub use inference::{bonferroni_gate, normal_cdf, wald_test, WaldTest, Z_975};
pub use logistic::{
    fit_logistic_ml, fit_logistic_ml_with, log_likelihood, log_likelihood_gradient,
    predict_logistic, sigmoid, LogisticFit, LogisticOptions,
};
pub use mixed::{
    fit_mixed_model, fit_mixed_model_with, profile_log_likelihood, DesignRow, FixedEffect,
    MixedFitResult, MixedOptions, FIXED_EFFECT_NAMES,
};
pub use report::{fixed_effects_csv, fixed_effects_table};
