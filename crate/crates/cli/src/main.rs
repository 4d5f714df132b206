//! `gazecheck`: fixation detection, eye-tracking measures, mixed-model
//! tests and factuality evaluation from the command line.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gazecheck::gaze::Measure;
use gazecheck::{ErrorCategory, Result};

use commands::SweepKind;
use config::RunConfig;

#[derive(Parser)]
#[command(name = "gazecheck", version, about = "Eye-tracking analysis of headline factuality judgements")]
struct Cli {
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for every random draw.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for output files.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect fixations in a gaze stream.
    Detect {
        #[arg(long)]
        gaze: Option<PathBuf>,
        #[command(flatten)]
        fixation: FixationArgs,
    },
    /// Compute the five per-headline measures from a gaze stream.
    Measures {
        #[arg(long)]
        gaze: Option<PathBuf>,
        #[arg(long)]
        layout: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        participants: Option<PathBuf>,
        #[command(flatten)]
        fixation: FixationArgs,
    },
    /// Fit the random-intercept model and test its fixed effects.
    Mixedfit {
        #[arg(long)]
        measures: Option<PathBuf>,
        /// Measure name or alias, or `all`.
        #[arg(long, default_value = "all")]
        measure: String,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Monte Carlo cross-validation of the ensemble classifier.
    Evaluate {
        #[arg(long)]
        measures: Option<PathBuf>,
        #[command(flatten)]
        cv: CvArgs,
        /// Standardize over this many screens instead of all headlines.
        #[arg(long)]
        screens: Option<usize>,
    },
    /// Cross-validation across standardization set sizes or ensemble sizes.
    Sweep {
        #[arg(long, value_enum)]
        which: SweepKind,
        /// Comma-separated sweep points.
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<usize>>,
        #[arg(long)]
        measures: Option<PathBuf>,
        #[command(flatten)]
        cv: CvArgs,
    },
    /// Write a seeded synthetic study.
    Synth {
        /// Corpus to lay out; the bundled placeholder corpus if omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        participants: Option<usize>,
        /// Zero all effects.
        #[arg(long)]
        null: bool,
        /// Also write gaze streams with their fixation plans.
        #[arg(long)]
        gaze: bool,
        #[arg(long)]
        noise_sd_deg: Option<f64>,
    },
}

#[derive(Args)]
struct FixationArgs {
    #[arg(long)]
    dispersion_deg: Option<f64>,
    #[arg(long)]
    min_duration_ms: Option<f64>,
    #[arg(long)]
    velocity_deg_s: Option<f64>,
    #[arg(long)]
    max_gap: Option<usize>,
}

#[derive(Args)]
struct CvArgs {
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    train_size: Option<usize>,
    #[arg(long)]
    threshold: Option<f64>,
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

fn set_path(slot: &mut Option<PathBuf>, v: Option<PathBuf>) {
    if v.is_some() {
        *slot = v;
    }
}

impl FixationArgs {
    fn apply(self, cfg: &mut RunConfig) {
        set(&mut cfg.fixation.dispersion_threshold_deg, self.dispersion_deg);
        set(&mut cfg.fixation.min_duration_ms, self.min_duration_ms);
        set(&mut cfg.fixation.velocity_threshold_deg_s, self.velocity_deg_s);
        set(&mut cfg.fixation.max_gap_samples, self.max_gap);
    }
}

impl CvArgs {
    fn apply(self, cfg: &mut RunConfig) {
        set(&mut cfg.cv.iterations, self.iterations);
        set(&mut cfg.cv.train_size, self.train_size);
        set(&mut cfg.cv.threshold, self.threshold);
    }
}

fn parse_measures(s: &str) -> Result<Vec<Measure>> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(Measure::ALL.to_vec());
    }
    s.split(',')
        .map(|m| m.parse().map_err(gazecheck::Error::Config))
        .collect()
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    set(&mut cfg.seed, cli.seed);
    set(&mut cfg.paths.out_dir, cli.out_dir);

    match cli.command {
        Command::Detect { gaze, fixation } => {
            set_path(&mut cfg.paths.gaze, gaze);
            fixation.apply(&mut cfg);
            commands::detect(&cfg)
        }
        Command::Measures { gaze, layout, corpus, participants, fixation } => {
            set_path(&mut cfg.paths.gaze, gaze);
            set_path(&mut cfg.paths.layout, layout);
            set_path(&mut cfg.paths.corpus, corpus);
            set_path(&mut cfg.paths.participants, participants);
            fixation.apply(&mut cfg);
            commands::measures(&cfg)
        }
        Command::Mixedfit { measures, measure, alpha } => {
            set_path(&mut cfg.paths.measures, measures);
            set(&mut cfg.mixedfit.alpha, alpha);
            commands::mixedfit(&cfg, &parse_measures(&measure)?)
        }
        Command::Evaluate { measures, cv, screens } => {
            set_path(&mut cfg.paths.measures, measures);
            cv.apply(&mut cfg);
            if screens.is_some() {
                cfg.cv.screens = screens;
            }
            commands::evaluate(&cfg)
        }
        Command::Sweep { which, values, measures, cv } => {
            set_path(&mut cfg.paths.measures, measures);
            cv.apply(&mut cfg);
            match which {
                SweepKind::Screens => set(&mut cfg.sweep.screens, values),
                SweepKind::Ensemble => set(&mut cfg.sweep.ensemble, values),
            }
            commands::sweep(&cfg, which)
        }
        Command::Synth { corpus, participants, null, gaze, noise_sd_deg } => {
            set_path(&mut cfg.paths.corpus, corpus);
            set(&mut cfg.synth.n_participants, participants);
            cfg.synth.null |= null;
            cfg.synth.gaze |= gaze;
            set(&mut cfg.synth.noise_sd_deg, noise_sd_deg);
            commands::synth(&cfg)
        }
    }
}

fn exit_code(category: ErrorCategory) -> u8 {
    match category {
        ErrorCategory::Config => 2,
        ErrorCategory::Io => 3,
        ErrorCategory::Parse => 4,
        ErrorCategory::Numerical => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let category = e.category();
            eprintln!("gazecheck: {} error: {e}", format!("{category:?}").to_lowercase());
            ExitCode::from(exit_code(category))
        }
    }
}
