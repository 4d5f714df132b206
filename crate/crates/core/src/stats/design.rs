use crate::error::Result;
use crate::gaze::{AoiPosition, Gender, Label, Measure, MeasureRecord};
use crate::stats::descriptive::zscore;
use crate::stats::mixed::DesignRow;

/// Builds mixed-model rows for one measure. With `standardize`, the
/// response is z-scored over all records first.
pub fn design_rows(records: &[MeasureRecord], measure: Measure, standardize: bool) -> Result<Vec<DesignRow<f64>>> {
    let raw: Vec<f64> = records.iter().map(|r| measure.get(r)).collect();
    let y = if standardize { zscore(&raw)? } else { raw };
    Ok(records
        .iter()
        .zip(y)
        .map(|(r, y)| DesignRow {
            participant_id: r.participant_id.clone(),
            i_true: r.label == Label::TrueNews,
            i_middle: r.position == AoiPosition::Middle,
            i_bottom: r.position == AoiPosition::Bottom,
            i_male: r.gender == Gender::Male,
            l: r.length_norm,
            y,
        })
        .collect())
}
