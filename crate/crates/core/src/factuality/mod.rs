//! Ensemble factuality classifier, its evaluation harness and sweeps.
//!
//! Each participant's score for a headline averages two one-feature-family
//! logistic models, one on total gaze duration interacted with headline
//! position and one on total fixation duration interacted with headline
//! length. Headline scores average participant scores over a held-out
//! ensemble of participants.

mod cv;
mod metrics;
mod model;
mod report;
mod standardize;

pub use cv::{
    monte_carlo_cv, sweep_ensemble_size, sweep_standardization_screens, CvConfig, Dataset,
    EvalReport, StandardizationScope, SweepPoint,
};
pub use metrics::auc;
pub use model::{headline_score, participant_score, train_ensemble_model, EnsembleModel};
pub use report::{eval_report_csv, eval_report_table, sweep_csv, sweep_table};
pub use standardize::{standardize_per_participant, StandardizedRecord};
