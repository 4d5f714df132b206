//! Seeded synthetic data: measure-level studies drawn from the mixed model
//! and gaze streams with planted fixations.

mod design;
mod measures;
mod stream;

pub use design::{fixture_corpus, paper_design, StudyDesign};
pub use measures::{
    generate_measures, participant_ids, GeneratorConfig, MeasureCoefficients, SyntheticStudy,
    PUBLISHED_COEFFICIENTS,
};
pub use stream::{
    generate_gaze_stream, generate_gaze_stream_with, plan_reading_session, synthesize_sessions,
    write_plan_csv, PLAN_HEADER, FixationPlan, PlannedFixation, SaccadeSpeedRange,
};
