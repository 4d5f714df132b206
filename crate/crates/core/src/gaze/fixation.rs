//! Dispersion-threshold fixation identification (I-DT) with a velocity
//! filter.

use crate::error::{Error, Result};
use crate::gaze::types::{FixationParams, Fixation, GazeSample, ScreenGeometry};

/// Pixels subtended by one degree of visual angle at the screen centre.
pub fn px_per_degree(geom: &ScreenGeometry) -> f64 {
    geom.viewing_distance_mm * 1f64.to_radians().tan() * geom.dpi / 25.4
}

fn check_order(samples: &[GazeSample]) -> Result<()> {
    for w in samples.windows(2) {
        if !(w[1].t_ms > w[0].t_ms) {
            return Err(Error::InputOrder {
                participant: w[1].participant_id.clone(),
                screen: w[1].screen_id.clone(),
                previous: w[0].t_ms,
                current: w[1].t_ms,
            });
        }
    }
    Ok(())
}

#[derive(Clone, Copy)]
struct BBox {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl BBox {
    fn at(s: &GazeSample) -> Self {
        Self {
            x0: s.x,
            x1: s.x,
            y0: s.y,
            y1: s.y,
        }
    }

    fn grow(self, s: &GazeSample) -> Self {
        Self {
            x0: self.x0.min(s.x),
            x1: self.x1.max(s.x),
            y0: self.y0.min(s.y),
            y1: self.y1.max(s.y),
        }
    }

    fn within(&self, limit: f64) -> bool {
        self.x1 - self.x0 <= limit && self.y1 - self.y0 <= limit
    }
}

/// Detects fixations in the samples of one (participant, screen) session.
///
/// A window starting at a valid sample grows while the horizontal and the
/// vertical extent of its valid samples both stay within the dispersion
/// threshold and no run of invalid samples is longer than
/// `max_gap_samples`. The window becomes a fixation when it spans at least
/// `min_duration_ms`, holds two or more valid samples and its mean
/// point-to-point speed is below the velocity threshold; detection then
/// resumes after it. Otherwise the window start advances by one sample.
pub fn detect_fixations(
    samples: &[GazeSample],
    geom: &ScreenGeometry,
    params: &FixationParams,
) -> Result<Vec<Fixation>> {
    geom.validate()?;
    params.validate()?;
    check_order(samples)?;

    let ppd = px_per_degree(geom);
    let limit = params.dispersion_threshold_deg * ppd;
    let mut fixations = Vec::new();
    let mut members: Vec<usize> = Vec::new();

    let mut i = 0;
    while i < samples.len() {
        if !samples[i].valid {
            i += 1;
            continue;
        }
        members.clear();
        members.push(i);
        let mut bbox = BBox::at(&samples[i]);
        let mut gap = 0;
        for (j, s) in samples.iter().enumerate().skip(i + 1) {
            if !s.valid {
                gap += 1;
                if gap > params.max_gap_samples {
                    break;
                }
                continue;
            }
            let grown = bbox.grow(s);
            if !grown.within(limit) {
                break;
            }
            bbox = grown;
            gap = 0;
            members.push(j);
        }

        let first = &samples[members[0]];
        let last = &samples[*members.last().unwrap()];
        let span = last.t_ms - first.t_ms;
        if members.len() >= 2 && span >= params.min_duration_ms {
            let speed_sum: f64 = members
                .windows(2)
                .map(|w| {
                    let (a, b) = (&samples[w[0]], &samples[w[1]]);
                    let dist_deg = (b.x - a.x).hypot(b.y - a.y) / ppd;
                    dist_deg / ((b.t_ms - a.t_ms) / 1000.0)
                })
                .sum();
            let mean_speed = speed_sum / (members.len() - 1) as f64;
            if mean_speed <= params.velocity_threshold_deg_s {
                let n = members.len() as f64;
                let (sx, sy) = members
                    .iter()
                    .fold((0.0, 0.0), |(sx, sy), &k| (sx + samples[k].x, sy + samples[k].y));
                fixations.push(Fixation {
                    centroid_x: sx / n,
                    centroid_y: sy / n,
                    start_ms: first.t_ms,
                    end_ms: last.t_ms,
                    duration_ms: span,
                    n_samples: members.len(),
                });
                i = *members.last().unwrap() + 1;
                continue;
            }
        }
        i += 1;
    }
    Ok(fixations)
}
