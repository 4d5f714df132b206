use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use std::io::Write;

use crate::gaze::io::{csv_writer, write_err};
use crate::gaze::{px_per_degree, AoiPosition, Corpus, GazeSample, LayoutSet, ScreenGeometry, ScreenLayout};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlannedFixation {
    /// AOI the fixation was planned on, if any.
    pub position: Option<AoiPosition>,
    pub x: f64,
    pub y: f64,
    pub duration_ms: f64,
}

/// Ground truth for one synthetic session.
#[derive(Debug, Clone, PartialEq)]
pub struct FixationPlan {
    pub participant_id: String,
    pub screen_id: String,
    pub fixations: Vec<PlannedFixation>,
    /// One speed per transition between consecutive fixations.
    pub saccade_speeds_deg_s: Vec<f64>,
}

impl FixationPlan {
    fn validate(&self, geom: &ScreenGeometry) -> Result<()> {
        let plan_err = |msg: String| Err(Error::Plan(format!("{}/{}: {msg}", self.participant_id, self.screen_id)));
        for (k, f) in self.fixations.iter().enumerate() {
            if !(0.0..=geom.width_px).contains(&f.x) || !(0.0..=geom.height_px).contains(&f.y) {
                return plan_err(format!("fixation {k} at ({}, {}) lies outside the screen", f.x, f.y));
            }
            if !(f.duration_ms > 0.0 && f.duration_ms.is_finite()) {
                return plan_err(format!("fixation {k} has non-positive duration"));
            }
        }
        let transitions = self.fixations.len().saturating_sub(1);
        if self.saccade_speeds_deg_s.len() != transitions {
            return plan_err(format!(
                "{} saccade speeds for {transitions} transitions",
                self.saccade_speeds_deg_s.len()
            ));
        }
        if let Some(v) = self.saccade_speeds_deg_s.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
            return plan_err(format!("saccade speed {v} is not positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaccadeSpeedRange {
    pub min_deg_s: f64,
    pub max_deg_s: f64,
}

impl Default for SaccadeSpeedRange {
    fn default() -> Self {
        Self { min_deg_s: 200.0, max_deg_s: 450.0 }
    }
}

impl FixationPlan {
    /// Planned time from the first fixation's onset to the last one's end,
    /// with saccades taking distance over speed.
    pub fn total_ms(&self, geom: &ScreenGeometry) -> f64 {
        let ppd = px_per_degree(geom);
        let fix: f64 = self.fixations.iter().map(|f| f.duration_ms).sum();
        let sacc: f64 = self
            .fixations
            .windows(2)
            .zip(&self.saccade_speeds_deg_s)
            .map(|(w, v)| (w[1].x - w[0].x).hypot(w[1].y - w[0].y) / ppd / v * 1000.0)
            .sum();
        fix + sacc
    }
}

/// [`generate_gaze_stream_with`] driven by a ChaCha8 generator seeded
/// with `seed`.
pub fn generate_gaze_stream(
    plan: &FixationPlan,
    geom: &ScreenGeometry,
    noise_sd_deg: f64,
    seed: u64,
) -> Result<Vec<GazeSample>> {
    generate_gaze_stream_with(plan, geom, noise_sd_deg, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Renders a plan as a gaze stream sampled at `t = j * period`.
///
/// Phase boundaries are laid out in continuous time and rounded to the
/// nearest sample, so each fixation's sampled span is within one period
/// of its planned duration and the stream has `round(total / period) + 1`
/// samples. A saccade too short to leave a grid point between two
/// fixations delays the rest of the timeline by up to 1.5 periods. Grid points inside a saccade lie on the straight path
/// between the two fixations. Isotropic Gaussian noise with the given SD
/// in degrees is added to every sample.
pub fn generate_gaze_stream_with<R: Rng + ?Sized>(
    plan: &FixationPlan,
    geom: &ScreenGeometry,
    noise_sd_deg: f64,
    rng: &mut R,
) -> Result<Vec<GazeSample>> {
    geom.validate()?;
    plan.validate(geom)?;
    if !(noise_sd_deg >= 0.0 && noise_sd_deg.is_finite()) {
        return Err(Error::Config("noise SD must be finite and non-negative".into()));
    }
    let period = geom.sample_period_ms();
    let ppd = px_per_degree(geom);
    let noise = Normal::new(0.0, noise_sd_deg * ppd).expect("valid noise SD");

    // First and last sample index of every fixation.
    let mut spans: Vec<(usize, usize)> = Vec::with_capacity(plan.fixations.len());
    let mut t = 0.0;
    for (k, f) in plan.fixations.iter().enumerate() {
        if k > 0 {
            let prev = &plan.fixations[k - 1];
            let dist_deg = (f.x - prev.x).hypot(f.y - prev.y) / ppd;
            t += dist_deg / plan.saccade_speeds_deg_s[k - 1] * 1000.0;
        }
        let min_start = spans.last().map_or(0, |&(_, e)| e + 1);
        let mut start = (t / period).round() as usize;
        if start < min_start {
            // Saccade shorter than the sampling grid resolves: delay the
            // timeline so the fixation keeps its planned length.
            start = min_start;
            t = start as f64 * period;
        }
        t += f.duration_ms;
        let end = ((t / period).round() as usize).max(start + 1);
        spans.push((start, end));
    }

    let mut samples = Vec::new();
    let mut emit = |j: usize, x: f64, y: f64, rng: &mut R| {
        samples.push(GazeSample {
            participant_id: plan.participant_id.clone(),
            screen_id: plan.screen_id.clone(),
            t_ms: j as f64 * period,
            x: x + noise.sample(rng),
            y: y + noise.sample(rng),
            valid: true,
        });
    };
    for (k, (f, &(start, end))) in plan.fixations.iter().zip(&spans).enumerate() {
        for j in start..=end {
            emit(j, f.x, f.y, rng);
        }
        if let (Some(next), Some(&(next_start, _))) = (plan.fixations.get(k + 1), spans.get(k + 1)) {
            let steps = (next_start - end) as f64;
            for j in end + 1..next_start {
                let a = (j - end) as f64 / steps;
                emit(j, f.x + a * (next.x - f.x), f.y + a * (next.y - f.y), rng);
            }
        }
    }
    Ok(samples)
}

/// Plans a left-to-right, top-to-bottom read of one screen: one to six
/// fixations per headline depending on its length, 150 to 400 ms each,
/// evenly spread over the AOI's width.
pub fn plan_reading_session<R: Rng + ?Sized>(
    participant_id: &str,
    layout: &ScreenLayout,
    corpus: &Corpus,
    speeds: SaccadeSpeedRange,
    rng: &mut R,
) -> Result<FixationPlan> {
    if !(speeds.min_deg_s > 0.0 && speeds.min_deg_s <= speeds.max_deg_s) {
        return Err(Error::Config("saccade speed range must be positive and ordered".into()));
    }
    let mut fixations = Vec::new();
    for aoi in &layout.aois {
        let h = corpus.get(&aoi.headline_id).ok_or_else(|| {
            Error::Config(format!("layout {} refers to unknown headline {}", layout.screen_id, aoi.headline_id))
        })?;
        let max_n = (h.word_count as usize / 2).clamp(1, 6);
        let n = rng.random_range(1..=max_n);
        let r = aoi.rect;
        let width = (r.x1 - r.x0) / n as f64;
        let cy = (r.y0 + r.y1) / 2.0;
        for j in 0..n {
            fixations.push(PlannedFixation {
                position: Some(aoi.position),
                x: r.x0 + (j as f64 + 0.5) * width,
                y: cy,
                duration_ms: rng.random_range(150.0..=400.0),
            });
        }
    }
    let saccade_speeds_deg_s = (1..fixations.len())
        .map(|_| rng.random_range(speeds.min_deg_s..=speeds.max_deg_s))
        .collect();
    Ok(FixationPlan {
        participant_id: participant_id.to_string(),
        screen_id: layout.screen_id.clone(),
        fixations,
        saccade_speeds_deg_s,
    })
}

/// Plans and renders one reading session per participant and screen, in
/// participant then screen order, all drawn from one generator seeded
/// with `seed`.
pub fn synthesize_sessions(
    participants: &[String],
    layouts: &LayoutSet,
    corpus: &Corpus,
    geom: &ScreenGeometry,
    noise_sd_deg: f64,
    seed: u64,
) -> Result<(Vec<GazeSample>, Vec<FixationPlan>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::new();
    let mut plans = Vec::with_capacity(participants.len() * layouts.screens.len());
    for pid in participants {
        for layout in &layouts.screens {
            let plan = plan_reading_session(pid, layout, corpus, SaccadeSpeedRange::default(), &mut rng)?;
            samples.extend(generate_gaze_stream_with(&plan, geom, noise_sd_deg, &mut rng)?);
            plans.push(plan);
        }
    }
    Ok((samples, plans))
}

pub const PLAN_HEADER: [&str; 8] = [
    "participant_id",
    "screen_id",
    "index",
    "position",
    "x_px",
    "y_px",
    "duration_ms",
    "saccade_speed_deg_s",
];

/// One row per planned fixation; the saccade speed is that of the
/// movement leaving the fixation and is empty for the last one.
pub fn write_plan_csv<W: Write>(w: W, plans: &[FixationPlan]) -> Result<()> {
    let mut out = csv_writer(w);
    let err = write_err;
    out.write_record(PLAN_HEADER).map_err(err)?;
    for plan in plans {
        for (k, f) in plan.fixations.iter().enumerate() {
            out.write_record([
                plan.participant_id.clone(),
                plan.screen_id.clone(),
                k.to_string(),
                f.position.map_or(String::new(), |p| p.as_str().to_string()),
                f.x.to_string(),
                f.y.to_string(),
                f.duration_ms.to_string(),
                plan.saccade_speeds_deg_s.get(k).map_or(String::new(), |v| v.to_string()),
            ])
            .map_err(err)?;
        }
    }
    out.flush().map_err(|e| Error::io("<output>", e))
}
