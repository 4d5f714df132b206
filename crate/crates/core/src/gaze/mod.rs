//! From raw gaze streams to fixations and per-AOI eye-tracking measures.

mod fixation;
pub mod io;
mod measures;
mod types;

pub use fixation::{detect_fixations, px_per_degree};
pub use measures::{assign_aoi, compute_measures, group_sessions, Session};
pub use types::*;
