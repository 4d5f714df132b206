use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One tracker sample, in screen pixels, timed from screen onset.
#[derive(Debug, Clone, PartialEq)]
pub struct GazeSample {
    pub participant_id: String,
    pub screen_id: String,
    pub t_ms: f64,
    pub x: f64,
    pub y: f64,
    pub valid: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScreenGeometry {
    pub width_px: f64,
    pub height_px: f64,
    pub dpi: f64,
    pub viewing_distance_mm: f64,
    pub sample_rate_hz: f64,
}

impl Default for ScreenGeometry {
    /// 24" 1920x1200 panel at 170 DPI viewed from 60 cm, 30 Hz tracker.
    fn default() -> Self {
        Self {
            width_px: 1920.0,
            height_px: 1200.0,
            dpi: 170.0,
            viewing_distance_mm: 600.0,
            sample_rate_hz: 30.0,
        }
    }
}

impl ScreenGeometry {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("width_px", self.width_px),
            ("height_px", self.height_px),
            ("dpi", self.dpi),
            ("viewing_distance_mm", self.viewing_distance_mm),
            ("sample_rate_hz", self.sample_rate_hz),
        ];
        for (name, v) in fields {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("geometry {name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn sample_period_ms(&self) -> f64 {
        1000.0 / self.sample_rate_hz
    }

    pub fn mm_to_px(&self, mm: f64) -> f64 {
        mm * self.dpi / 25.4
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FixationParams {
    pub dispersion_threshold_deg: f64,
    pub min_duration_ms: f64,
    pub velocity_threshold_deg_s: f64,
    /// Consecutive invalid samples tolerated inside one fixation.
    pub max_gap_samples: usize,
}

impl Default for FixationParams {
    fn default() -> Self {
        Self {
            dispersion_threshold_deg: 2.0,
            min_duration_ms: 100.0,
            velocity_threshold_deg_s: 30.0,
            max_gap_samples: 1,
        }
    }
}

impl FixationParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("dispersion_threshold_deg", self.dispersion_threshold_deg),
            ("min_duration_ms", self.min_duration_ms),
            ("velocity_threshold_deg_s", self.velocity_threshold_deg_s),
        ];
        for (name, v) in fields {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("fixation {name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fixation {
    pub centroid_x: f64,
    pub centroid_y: f64,
    pub start_ms: f64,
    pub end_ms: f64,
    pub duration_ms: f64,
    pub n_samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AoiPosition {
    Top,
    Middle,
    Bottom,
}

impl AoiPosition {
    pub const ALL: [AoiPosition; 3] = [AoiPosition::Top, AoiPosition::Middle, AoiPosition::Bottom];

    pub fn as_str(self) -> &'static str {
        match self {
            AoiPosition::Top => "top",
            AoiPosition::Middle => "middle",
            AoiPosition::Bottom => "bottom",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for AoiPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AoiPosition {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "top" | "1" => Ok(AoiPosition::Top),
            "middle" | "2" => Ok(AoiPosition::Middle),
            "bottom" | "3" => Ok(AoiPosition::Bottom),
            other => Err(format!("unknown AOI position {other:?}")),
        }
    }
}

/// Axis-aligned rectangle in pixels, bounds inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl From<[f64; 4]> for Rect {
    fn from([x0, y0, x1, y1]: [f64; 4]) -> Self {
        Self { x0, y0, x1, y1 }
    }
}

impl From<Rect> for [f64; 4] {
    fn from(r: Rect) -> Self {
        [r.x0, r.y0, r.x1, r.y1]
    }
}

impl Rect {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x <= self.x1 && y >= self.y0 && y <= self.y1
    }

    pub fn intersects(&self, other: &Rect) -> bool {
        self.x0 <= other.x1 && other.x0 <= self.x1 && self.y0 <= other.y1 && other.y0 <= self.y1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aoi {
    pub headline_id: String,
    pub position: AoiPosition,
    pub rect: Rect,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLayout")]
pub struct ScreenLayout {
    pub screen_id: String,
    /// Ordered top, middle, bottom.
    pub aois: Vec<Aoi>,
}

#[derive(Deserialize)]
struct RawLayout {
    screen_id: String,
    aois: Vec<Aoi>,
}

impl TryFrom<RawLayout> for ScreenLayout {
    type Error = Error;
    fn try_from(raw: RawLayout) -> Result<Self> {
        ScreenLayout::new(raw.screen_id, raw.aois)
    }
}

impl ScreenLayout {
    /// Validates that each position occurs once, rectangles are proper and
    /// the three AOIs are pairwise disjoint.
    pub fn new(screen_id: String, mut aois: Vec<Aoi>) -> Result<Self> {
        if aois.len() != 3 {
            return Err(Error::Config(format!(
                "screen {screen_id}: expected 3 AOIs, found {}",
                aois.len()
            )));
        }
        aois.sort_by_key(|a| a.position);
        for (a, want) in aois.iter().zip(AoiPosition::ALL) {
            if a.position != want {
                return Err(Error::Config(format!(
                    "screen {screen_id}: positions must be top, middle and bottom once each"
                )));
            }
            let r = a.rect;
            if !(r.x0 < r.x1 && r.y0 < r.y1) {
                return Err(Error::Config(format!(
                    "screen {screen_id}: degenerate rectangle for {}",
                    a.position
                )));
            }
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                if aois[i].rect.intersects(&aois[j].rect) {
                    return Err(Error::Config(format!(
                        "screen {screen_id}: AOIs {} and {} overlap",
                        aois[i].position, aois[j].position
                    )));
                }
            }
        }
        Ok(Self { screen_id, aois })
    }

    pub fn aoi(&self, position: AoiPosition) -> &Aoi {
        &self.aois[position.index()]
    }
}

/// All screen layouts of a study, as stored in the layout file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutSet {
    pub screens: Vec<ScreenLayout>,
}

impl LayoutSet {
    pub fn screen(&self, screen_id: &str) -> Option<&ScreenLayout> {
        self.screens.iter().find(|s| s.screen_id == screen_id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    TrueNews,
    FalseNews,
}

impl Label {
    pub fn is_true(self) -> bool {
        self == Label::TrueNews
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::TrueNews => "true",
            Label::FalseNews => "false",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "true" | "true_news" | "1" | "real" => Ok(Label::TrueNews),
            "false" | "false_news" | "0" | "fake" => Ok(Label::FalseNews),
            other => Err(format!("unknown label {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gender {
    Male,
    Female,
}

impl Gender {
    pub fn as_str(self) -> &'static str {
        match self {
            Gender::Male => "male",
            Gender::Female => "female",
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Gender {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "male" | "m" => Ok(Gender::Male),
            "female" | "f" => Ok(Gender::Female),
            other => Err(format!("unknown gender {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Headline {
    pub headline_id: String,
    pub text: String,
    pub label: Label,
    pub word_count: u32,
    /// Word count z-scored over the corpus.
    pub length_norm: f64,
}

/// Summary counts of a headline corpus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusStats {
    pub n_true: usize,
    pub n_false: usize,
    pub mean_words: f64,
    pub mean_words_true: f64,
    pub mean_words_false: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub headlines: Vec<Headline>,
}

impl Corpus {
    /// Builds a corpus and fills in `length_norm` (sample-variance z-score
    /// of the word counts).
    pub fn new(mut headlines: Vec<Headline>) -> Result<Self> {
        if let Some(h) = headlines.iter().find(|h| h.word_count == 0) {
            return Err(Error::Config(format!("headline {} has zero words", h.headline_id)));
        }
        let mut ids: Vec<&str> = headlines.iter().map(|h| h.headline_id.as_str()).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Config(format!("duplicate headline id {}", w[0])));
        }
        let counts: Vec<f64> = headlines.iter().map(|h| f64::from(h.word_count)).collect();
        let stats = crate::stats::ZScoreStats::estimate(&counts)?;
        for h in &mut headlines {
            h.length_norm = stats.apply(f64::from(h.word_count));
        }
        Ok(Self { headlines })
    }

    pub fn get(&self, headline_id: &str) -> Option<&Headline> {
        self.headlines.iter().find(|h| h.headline_id == headline_id)
    }

    pub fn stats(&self) -> CorpusStats {
        let mean_of = |f: &dyn Fn(&Headline) -> bool| {
            let sel: Vec<f64> = self
                .headlines
                .iter()
                .filter(|h| f(h))
                .map(|h| f64::from(h.word_count))
                .collect();
            if sel.is_empty() {
                0.0
            } else {
                sel.iter().sum::<f64>() / sel.len() as f64
            }
        };
        CorpusStats {
            n_true: self.headlines.iter().filter(|h| h.label.is_true()).count(),
            n_false: self.headlines.iter().filter(|h| !h.label.is_true()).count(),
            mean_words: mean_of(&|_| true),
            mean_words_true: mean_of(&|h| h.label.is_true()),
            mean_words_false: mean_of(&|h| !h.label.is_true()),
        }
    }
}

/// The five eye-tracking measures of one participant on one headline,
/// with the covariates the models need.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureRecord {
    pub participant_id: String,
    pub headline_id: String,
    pub position: AoiPosition,
    pub gender: Gender,
    pub label: Label,
    pub length_norm: f64,
    pub total_gaze_duration: f64,
    pub total_fixation_duration: f64,
    pub total_fixation_count: f64,
    pub average_fixation_duration: f64,
    pub first_fixation_duration: f64,
}

/// Selects one of the five measures of a [`MeasureRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    TotalGazeDuration,
    TotalFixationDuration,
    TotalFixationCount,
    AverageFixationDuration,
    FirstFixationDuration,
}

impl Measure {
    pub const ALL: [Measure; 5] = [
        Measure::TotalGazeDuration,
        Measure::TotalFixationDuration,
        Measure::TotalFixationCount,
        Measure::AverageFixationDuration,
        Measure::FirstFixationDuration,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::TotalGazeDuration => "total_gaze_duration",
            Measure::TotalFixationDuration => "total_fixation_duration",
            Measure::TotalFixationCount => "total_fixation_count",
            Measure::AverageFixationDuration => "average_fixation_duration",
            Measure::FirstFixationDuration => "first_fixation_duration",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Measure::TotalGazeDuration => "Total gaze duration",
            Measure::TotalFixationDuration => "Total fixation duration",
            Measure::TotalFixationCount => "Total fixation count",
            Measure::AverageFixationDuration => "Average fixation duration",
            Measure::FirstFixationDuration => "First fixation duration",
        }
    }

    pub fn get(self, r: &MeasureRecord) -> f64 {
        match self {
            Measure::TotalGazeDuration => r.total_gaze_duration,
            Measure::TotalFixationDuration => r.total_fixation_duration,
            Measure::TotalFixationCount => r.total_fixation_count,
            Measure::AverageFixationDuration => r.average_fixation_duration,
            Measure::FirstFixationDuration => r.first_fixation_duration,
        }
    }
}

impl FromStr for Measure {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim().to_ascii_lowercase();
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .or(match s.as_str() {
                "gaze" | "gd" => Some(Measure::TotalGazeDuration),
                "fixdur" | "fd" => Some(Measure::TotalFixationDuration),
                "fixcount" => Some(Measure::TotalFixationCount),
                "avgfix" => Some(Measure::AverageFixationDuration),
                "firstfix" => Some(Measure::FirstFixationDuration),
                _ => None,
            })
            .ok_or_else(|| format!("unknown measure {s:?}"))
    }
}

impl MeasureRecord {
    /// Checks the raw-millisecond relations between the measures. Only
    /// meaningful for records computed from gaze streams; standardized
    /// synthetic records do not satisfy them.
    pub fn check_raw_invariants(&self) -> Result<()> {
        let bad = |msg: &str| {
            Err(Error::Numerical(format!(
                "measure record {}/{}: {msg}",
                self.participant_id, self.headline_id
            )))
        };
        if self.total_fixation_duration > self.total_gaze_duration + 1e-9 {
            return bad("fixation duration exceeds gaze duration");
        }
        if self.total_fixation_count == 0.0 {
            if self.total_fixation_duration != 0.0
                || self.average_fixation_duration != 0.0
                || self.first_fixation_duration != 0.0
            {
                return bad("zero fixations but nonzero fixation measures");
            }
        } else {
            let avg = self.total_fixation_duration / self.total_fixation_count;
            if (avg - self.average_fixation_duration).abs() > 1e-9 * avg.abs().max(1.0) {
                return bad("average fixation duration is not total / count");
            }
        }
        Ok(())
    }
}
