use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::gaze::{AoiPosition, Gender, Measure, MeasureRecord};
use crate::synth::design::StudyDesign;

/// Fixed effects of one measure in standardized units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureCoefficients {
    pub b: f64,
    pub c_true: f64,
    pub c_middle: f64,
    pub c_bottom: f64,
    pub c_male: f64,
    pub c_length: f64,
}

impl MeasureCoefficients {
    pub const ZERO: Self = Self {
        b: 0.0,
        c_true: 0.0,
        c_middle: 0.0,
        c_bottom: 0.0,
        c_male: 0.0,
        c_length: 0.0,
    };

    /// In the order of [`crate::stats::FIXED_EFFECT_NAMES`].
    pub fn as_array(&self) -> [f64; 6] {
        [self.b, self.c_true, self.c_middle, self.c_bottom, self.c_male, self.c_length]
    }

    const fn published(c_true: f64, c_middle: f64, c_bottom: f64, c_male: f64, c_length: f64) -> Self {
        Self { b: 0.0, c_true, c_middle, c_bottom, c_male, c_length }
    }
}

/// Published fixed-effect estimates, indexed like [`Measure::ALL`].
pub const PUBLISHED_COEFFICIENTS: [MeasureCoefficients; 5] = [
    MeasureCoefficients::published(0.154, -0.026, -0.054, -0.149, 0.174),
    MeasureCoefficients::published(0.109, -0.083, -0.239, -0.202, 0.100),
    MeasureCoefficients::published(0.115, -0.037, -0.199, -0.164, 0.118),
    MeasureCoefficients::published(0.025, -0.003, -0.130, -0.006, 0.059),
    MeasureCoefficients::published(0.034, 0.014, -0.120, -0.016, 0.056),
];

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub n_participants: usize,
    pub coefficients: [MeasureCoefficients; 5],
    pub sigma2_participant: f64,
    pub sigma2_residual: f64,
    /// Probability that a participant is male.
    pub gender_ratio: f64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            n_participants: 55,
            coefficients: PUBLISHED_COEFFICIENTS,
            sigma2_participant: 0.25,
            sigma2_residual: 1.0,
            gender_ratio: 31.0 / 55.0,
            seed: 0,
        }
    }
}

impl GeneratorConfig {
    /// All effects and the participant variance set to zero.
    pub fn null(seed: u64) -> Self {
        Self {
            coefficients: [MeasureCoefficients::ZERO; 5],
            sigma2_participant: 0.0,
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_participants == 0 {
            return Err(Error::Config("n_participants must be positive".into()));
        }
        if !(self.sigma2_participant >= 0.0 && self.sigma2_participant.is_finite()) {
            return Err(Error::Config("sigma2_participant must be finite and non-negative".into()));
        }
        if !(self.sigma2_residual > 0.0 && self.sigma2_residual.is_finite()) {
            return Err(Error::Config("sigma2_residual must be finite and positive".into()));
        }
        if !(0.0..=1.0).contains(&self.gender_ratio) {
            return Err(Error::Config("gender_ratio must lie in [0, 1]".into()));
        }
        let finite = self.coefficients.iter().all(|c| c.as_array().iter().all(|v| v.is_finite()));
        if !finite {
            return Err(Error::Config("coefficients must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticStudy {
    pub participants: Vec<(String, Gender)>,
    /// One record per participant and headline, participants outermost,
    /// then screens, then top to bottom.
    pub records: Vec<MeasureRecord>,
}

pub fn participant_ids(n: usize) -> Vec<String> {
    let width = n.to_string().len().max(2);
    (1..=n).map(|i| format!("p{i:0width$}")).collect()
}

/// Draws every measure from the random-intercept model
/// `y = b + c·x + p_i + e`, with an independent participant intercept per
/// measure. Values are in standardized units.
pub fn generate_measures(config: &GeneratorConfig, design: &StudyDesign) -> Result<SyntheticStudy> {
    config.validate()?;
    let placements = design.placements()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let n = config.n_participants;
    let genders: Vec<Gender> = (0..n)
        .map(|_| if rng.random_bool(config.gender_ratio) { Gender::Male } else { Gender::Female })
        .collect();
    let participants: Vec<(String, Gender)> = participant_ids(n).into_iter().zip(genders).collect();

    let unit = Normal::new(0.0, 1.0).expect("unit normal");
    let sd_p = config.sigma2_participant.sqrt();
    let sd_r = config.sigma2_residual.sqrt();

    let mut records = Vec::with_capacity(n * placements.len());
    for (pid, gender) in &participants {
        let intercepts: [f64; 5] = std::array::from_fn(|_| sd_p * unit.sample(&mut rng));
        let male = if *gender == Gender::Male { 1.0 } else { 0.0 };
        for &(_, aoi, k) in &placements {
            let h = &design.corpus.headlines[k];
            let x_true = if h.label.is_true() { 1.0 } else { 0.0 };
            let x_mid = if aoi.position == AoiPosition::Middle { 1.0 } else { 0.0 };
            let x_bot = if aoi.position == AoiPosition::Bottom { 1.0 } else { 0.0 };
            let y: [f64; 5] = std::array::from_fn(|m| {
                let c = &config.coefficients[m];
                c.b + c.c_true * x_true
                    + c.c_middle * x_mid
                    + c.c_bottom * x_bot
                    + c.c_male * male
                    + c.c_length * h.length_norm
                    + intercepts[m]
                    + sd_r * unit.sample(&mut rng)
            });
            records.push(MeasureRecord {
                participant_id: pid.clone(),
                headline_id: h.headline_id.clone(),
                position: aoi.position,
                gender: *gender,
                label: h.label,
                length_norm: h.length_norm,
                total_gaze_duration: y[0],
                total_fixation_duration: y[1],
                total_fixation_count: y[2],
                average_fixation_duration: y[3],
                first_fixation_duration: y[4],
            });
        }
    }
    debug_assert_eq!(Measure::ALL.len(), 5);
    Ok(SyntheticStudy { participants, records })
}
