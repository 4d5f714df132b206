use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::gaze::{AoiPosition, MeasureRecord};
use crate::scalar::Real;
use crate::stats::ZScoreStats;

/// Gaze and fixation durations z-scored within one participant.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizedRecord<T> {
    pub participant_id: String,
    pub headline_id: String,
    pub position: AoiPosition,
    /// Normalized headline length.
    pub l: T,
    pub z_gaze: T,
    pub z_fixdur: T,
}

/// Z-scores each participant's total gaze duration and total fixation
/// duration using the mean and sample deviation over the headlines in
/// `standardization_headlines` only. All of the participant's records,
/// inside the set or not, are transformed with those statistics.
pub fn standardize_per_participant(
    records: &[MeasureRecord],
    standardization_headlines: &HashSet<String>,
) -> Result<Vec<StandardizedRecord<f64>>> {
    let mut by_participant: BTreeMap<&str, (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for r in records {
        let entry = by_participant.entry(r.participant_id.as_str()).or_default();
        if standardization_headlines.contains(&r.headline_id) {
            entry.0.push(r.total_gaze_duration);
            entry.1.push(r.total_fixation_duration);
        }
    }
    let mut stats = BTreeMap::new();
    for (pid, (gaze, fixdur)) in &by_participant {
        let named = |e: Error| match e {
            Error::Degenerate(msg) => Error::Degenerate(format!("participant {pid}: {msg}")),
            other => other,
        };
        let g = ZScoreStats::estimate(gaze).map_err(named)?;
        let f = ZScoreStats::estimate(fixdur).map_err(named)?;
        stats.insert(*pid, (g, f));
    }
    Ok(records
        .iter()
        .map(|r| {
            let (g, f) = &stats[r.participant_id.as_str()];
            StandardizedRecord {
                participant_id: r.participant_id.clone(),
                headline_id: r.headline_id.clone(),
                position: r.position,
                l: r.length_norm,
                z_gaze: g.apply(r.total_gaze_duration),
                z_fixdur: f.apply(r.total_fixation_duration),
            }
        })
        .collect())
}

impl<T: Real> StandardizedRecord<T> {
    pub fn gaze_features(&self) -> [T; 3] {
        let mut out = [T::zero(); 3];
        out[self.position.index()] = self.z_gaze;
        out
    }

    pub fn fixdur_feature(&self) -> T {
        self.l * self.z_fixdur
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaze::{Gender, Label};
    use approx::assert_abs_diff_eq;

    fn rec(pid: &str, hid: usize, gaze: f64, fixdur: f64) -> MeasureRecord {
        MeasureRecord {
            participant_id: pid.into(),
            headline_id: format!("h{hid}"),
            position: AoiPosition::ALL[hid % 3],
            gender: Gender::Female,
            label: if hid % 3 == 0 { Label::FalseNews } else { Label::TrueNews },
            length_norm: hid as f64 * 0.1 - 0.3,
            total_gaze_duration: gaze,
            total_fixation_duration: fixdur,
            total_fixation_count: 1.0,
            average_fixation_duration: fixdur,
            first_fixation_duration: fixdur,
        }
    }

    fn all_ids(n: usize) -> HashSet<String> {
        (0..n).map(|h| format!("h{h}")).collect()
    }

    #[test]
    fn full_set_gives_unit_moments() {
        let recs: Vec<_> = (0..9)
            .flat_map(|h| {
                let h64 = h as f64;
                [
                    rec("a", h, 1000.0 + 37.0 * h64 * h64, 500.0 + 11.0 * h64),
                    rec("b", h, 3000.0 - 90.0 * h64, 100.0 + (h64 * 1.3).sin() * 40.0),
                ]
            })
            .collect();
        let z = standardize_per_participant(&recs, &all_ids(9)).unwrap();
        for pid in ["a", "b"] {
            let g: Vec<f64> = z.iter().filter(|r| r.participant_id == pid).map(|r| r.z_gaze).collect();
            let f: Vec<f64> = z.iter().filter(|r| r.participant_id == pid).map(|r| r.z_fixdur).collect();
            assert_abs_diff_eq!(crate::stats::mean(&g), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(crate::stats::sample_variance(&g), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(crate::stats::sample_variance(&f), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn subset_statistics_applied_to_all_records() {
        let recs: Vec<_> = (0..6).map(|h| rec("a", h, h as f64, 2.0 * h as f64 + 1.0)).collect();
        let set: HashSet<String> = ["h0", "h1", "h2"].iter().map(|s| s.to_string()).collect();
        let z = standardize_per_participant(&recs, &set).unwrap();
        // mean 1, sd 1 over {0, 1, 2}
        let zs: Vec<f64> = z.iter().map(|r| r.z_gaze).collect();
        assert_eq!(zs, vec![-1.0, 0.0, 1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn affine_transform_of_participant_is_invisible() {
        let base: Vec<_> = (0..7).map(|h| rec("a", h, 400.0 + (h * h) as f64, 90.0 + 3.0 * h as f64)).collect();
        let mut recs = base.clone();
        recs.extend(base.iter().map(|r| MeasureRecord {
            participant_id: "b".into(),
            total_gaze_duration: 2.5 * r.total_gaze_duration + 300.0,
            total_fixation_duration: 0.5 * r.total_fixation_duration - 10.0,
            ..r.clone()
        }));
        let z = standardize_per_participant(&recs, &all_ids(7)).unwrap();
        for (a, b) in z[..7].iter().zip(&z[7..]) {
            assert_abs_diff_eq!(a.z_gaze, b.z_gaze, epsilon = 1e-12);
            assert_abs_diff_eq!(a.z_fixdur, b.z_fixdur, epsilon = 1e-12);
        }
    }

    #[test]
    fn zero_variance_names_participant() {
        let recs: Vec<_> = (0..4).map(|h| rec("p17", h, 5.0, h as f64)).collect();
        match standardize_per_participant(&recs, &all_ids(4)) {
            Err(Error::Degenerate(msg)) => assert!(msg.contains("p17"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
