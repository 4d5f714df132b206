use crate::error::{Error, Result};
use crate::gaze::types::{
    AoiPosition, Corpus, Fixation, GazeSample, Gender, MeasureRecord, ScreenLayout,
};

/// The position of the AOI containing `(x, y)`, if any. Bounds are inclusive.
pub fn assign_aoi(x: f64, y: f64, layout: &ScreenLayout) -> Option<AoiPosition> {
    layout
        .aois
        .iter()
        .find(|a| a.rect.contains(x, y))
        .map(|a| a.position)
}

/// Total length of the union of closed intervals.
fn union_length(mut intervals: Vec<(f64, f64)>) -> f64 {
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let mut current: Option<(f64, f64)> = None;
    for (s, e) in intervals {
        match current {
            Some((cs, ce)) if s <= ce => current = Some((cs, ce.max(e))),
            Some((cs, ce)) => {
                total += ce - cs;
                current = Some((s, e));
            }
            None => current = Some((s, e)),
        }
    }
    if let Some((cs, ce)) = current {
        total += ce - cs;
    }
    total
}

/// Computes the five measures for each AOI of one (participant, screen)
/// session.
///
/// Fixations belong to the AOI containing their centroid. Gaze duration is
/// the time covered by consecutive valid sample pairs that both lie in the
/// AOI, merged with the intervals of the AOI's fixations, so that it always
/// includes the fixation time.
///
/// Returns the records ordered top, middle, bottom.
pub fn compute_measures(
    participant_id: &str,
    gender: Gender,
    samples: &[GazeSample],
    fixations: &[Fixation],
    layout: &ScreenLayout,
    corpus: &Corpus,
) -> Result<Vec<MeasureRecord>> {
    if let Some(s) = samples
        .iter()
        .find(|s| s.screen_id != layout.screen_id || s.participant_id != participant_id)
    {
        return Err(Error::Config(format!(
            "sample for participant {} on screen {} passed with layout of screen {} for participant {participant_id}",
            s.participant_id, s.screen_id, layout.screen_id
        )));
    }

    let mut dwell: [Vec<(f64, f64)>; 3] = Default::default();
    for w in samples.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if !(a.valid && b.valid) {
            continue;
        }
        if let (Some(pa), Some(pb)) = (assign_aoi(a.x, a.y, layout), assign_aoi(b.x, b.y, layout)) {
            if pa == pb {
                dwell[pa.index()].push((a.t_ms, b.t_ms));
            }
        }
    }

    let mut per_aoi: [Vec<&Fixation>; 3] = Default::default();
    for f in fixations {
        if let Some(p) = assign_aoi(f.centroid_x, f.centroid_y, layout) {
            per_aoi[p.index()].push(f);
        }
    }

    layout
        .aois
        .iter()
        .map(|aoi| {
            let headline = corpus.get(&aoi.headline_id).ok_or_else(|| {
                Error::Config(format!(
                    "screen {} refers to headline {} missing from the corpus",
                    layout.screen_id, aoi.headline_id
                ))
            })?;
            let k = aoi.position.index();
            let fx = &per_aoi[k];
            let fix_total: f64 = fx.iter().map(|f| f.duration_ms).sum();
            let count = fx.len();
            let first = fx
                .iter()
                .min_by(|a, b| a.start_ms.total_cmp(&b.start_ms))
                .map_or(0.0, |f| f.duration_ms);
            let mut intervals = dwell[k].clone();
            intervals.extend(fx.iter().map(|f| (f.start_ms, f.end_ms)));
            Ok(MeasureRecord {
                participant_id: participant_id.to_string(),
                headline_id: headline.headline_id.clone(),
                position: aoi.position,
                gender,
                label: headline.label,
                length_norm: headline.length_norm,
                total_gaze_duration: union_length(intervals),
                total_fixation_duration: fix_total,
                total_fixation_count: count as f64,
                average_fixation_duration: if count > 0 { fix_total / count as f64 } else { 0.0 },
                first_fixation_duration: first,
            })
        })
        .collect()
}

/// Samples of one participant on one screen.
#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    pub participant_id: String,
    pub screen_id: String,
    pub samples: Vec<GazeSample>,
}

/// Splits a sample stream into sessions, keeping the order in which each
/// (participant, screen) pair first appears and the within-session row
/// order.
pub fn group_sessions(samples: Vec<GazeSample>) -> Vec<Session> {
    let mut sessions: Vec<Session> = Vec::new();
    let mut index: std::collections::HashMap<(String, String), usize> = Default::default();
    for s in samples {
        let key = (s.participant_id.clone(), s.screen_id.clone());
        let k = *index.entry(key).or_insert_with(|| {
            sessions.push(Session {
                participant_id: s.participant_id.clone(),
                screen_id: s.screen_id.clone(),
                samples: Vec::new(),
            });
            sessions.len() - 1
        });
        sessions[k].samples.push(s);
    }
    sessions
}
