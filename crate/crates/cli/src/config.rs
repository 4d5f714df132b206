//! Run configuration: a TOML file whose values individual flags override.

use std::path::{Path, PathBuf};

use gazecheck::gaze::{FixationParams, ScreenGeometry};
use gazecheck::{Error, Result};
use serde::Deserialize;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub paths: Paths,
    pub geometry: ScreenGeometry,
    pub fixation: FixationParams,
    pub cv: CvSection,
    pub mixedfit: MixedfitSection,
    pub sweep: SweepSection,
    pub synth: SynthSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Paths {
    pub gaze: Option<PathBuf>,
    pub layout: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
    pub participants: Option<PathBuf>,
    pub measures: Option<PathBuf>,
    pub out_dir: PathBuf,
}

impl Default for Paths {
    fn default() -> Self {
        Self {
            gaze: None,
            layout: None,
            corpus: None,
            participants: None,
            measures: None,
            out_dir: PathBuf::from("."),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CvSection {
    pub iterations: usize,
    pub train_size: usize,
    pub threshold: f64,
    /// Restrict standardization to this many screens; all headlines if unset.
    pub screens: Option<usize>,
}

impl Default for CvSection {
    fn default() -> Self {
        Self {
            iterations: 5000,
            train_size: 27,
            threshold: 0.5,
            screens: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MixedfitSection {
    pub alpha: f64,
    /// Number of tests the Bonferroni correction divides `alpha` by.
    pub family_size: usize,
}

impl Default for MixedfitSection {
    fn default() -> Self {
        Self {
            alpha: 0.05,
            family_size: 5,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub screens: Vec<usize>,
    pub ensemble: Vec<usize>,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            screens: vec![1, 2, 3, 4, 6, 9, 12, 18, 24, 30, 36],
            ensemble: vec![1, 3, 5, 10, 15, 20, 25, 28],
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthSection {
    pub n_participants: usize,
    pub sigma2_participant: f64,
    pub sigma2_residual: f64,
    pub gender_ratio: f64,
    /// Zero all fixed effects and the participant variance.
    pub null: bool,
    /// Also write gaze streams and their fixation plans.
    pub gaze: bool,
    pub noise_sd_deg: f64,
}

impl Default for SynthSection {
    fn default() -> Self {
        Self {
            n_participants: 55,
            sigma2_participant: 0.25,
            sigma2_residual: 1.0,
            gender_ratio: 31.0 / 55.0,
            null: false,
            gaze: false,
            noise_sd_deg: 0.1,
        }
    }
}

impl RunConfig {
    /// Reads a config file. Relative paths inside it are taken relative to
    /// the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::parse(&text, &path.display().to_string())?;
        if let Some(base) = path.parent() {
            cfg.paths.rebase(base);
        }
        Ok(cfg)
    }

    pub fn parse(text: &str, file: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map_or(0, |s| text[..s.start.min(text.len())].matches('\n').count() as u64 + 1);
            Error::Parse {
                file: file.to_string(),
                line,
                msg: e.message().to_string(),
            }
        })
    }
}

impl Paths {
    fn rebase(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for p in [
            &mut self.gaze,
            &mut self.layout,
            &mut self.corpus,
            &mut self.participants,
            &mut self.measures,
        ]
        .into_iter()
        .flatten()
        {
            fix(p);
        }
        fix(&mut self.out_dir);
    }
}

/// Path that must be supplied by flag or config.
pub fn required<'a>(p: &'a Option<PathBuf>, what: &str) -> Result<&'a Path> {
    p.as_deref()
        .ok_or_else(|| Error::Config(format!("no {what} file given (flag or [paths] {what})")))
}
