use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use gazecheck::factuality::{
    eval_report_csv, eval_report_table, monte_carlo_cv, sweep_csv, sweep_ensemble_size,
    sweep_standardization_screens, sweep_table, CvConfig, Dataset, StandardizationScope,
};
use gazecheck::gaze::io::{
    create, open, read_corpus_csv, read_gaze_csv, read_layout_json, read_measures_csv,
    read_participants_csv, write_corpus_csv, write_fixations_csv, write_gaze_csv,
    write_layout_json, write_measures_csv, write_participants_csv,
};
use gazecheck::gaze::{compute_measures, detect_fixations, group_sessions, Corpus, Measure};
use gazecheck::stats::{design_rows, fit_mixed_model, fixed_effects_csv, fixed_effects_table};
use gazecheck::synth::{
    fixture_corpus, generate_measures, paper_design, synthesize_sessions, write_plan_csv,
    GeneratorConfig, MeasureCoefficients,
};
use gazecheck::{Error, Result};

use crate::config::{required, RunConfig};

fn file_name(path: &Path) -> String {
    path.display().to_string()
}

fn output_path(cfg: &RunConfig, name: &str) -> Result<PathBuf> {
    let dir = &cfg.paths.out_dir;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    Ok(dir.join(name))
}

fn write_text(cfg: &RunConfig, name: &str, text: &str) -> Result<PathBuf> {
    let path = output_path(cfg, name)?;
    fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

fn write_with(cfg: &RunConfig, name: &str, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<PathBuf> {
    let path = output_path(cfg, name)?;
    let mut w = create(&path)?;
    f(&mut w)?;
    w.flush().map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

fn load_measures(cfg: &RunConfig) -> Result<Vec<gazecheck::gaze::MeasureRecord>> {
    let path = required(&cfg.paths.measures, "measures")?;
    read_measures_csv(open(path)?, &file_name(path))
}

fn load_corpus(cfg: &RunConfig) -> Result<Corpus> {
    let path = required(&cfg.paths.corpus, "corpus")?;
    read_corpus_csv(open(path)?, &file_name(path))
}

pub fn detect(cfg: &RunConfig) -> Result<()> {
    let path = required(&cfg.paths.gaze, "gaze")?;
    let samples = read_gaze_csv(open(path)?, &file_name(path))?;
    let sessions = group_sessions(samples);
    let mut found = Vec::with_capacity(sessions.len());
    for s in &sessions {
        found.push(detect_fixations(&s.samples, &cfg.geometry, &cfg.fixation)?);
    }
    let rows = sessions
        .iter()
        .zip(&found)
        .flat_map(|(s, fs)| fs.iter().map(move |f| (s.participant_id.as_str(), s.screen_id.as_str(), f)));
    let out = write_with(cfg, "fixations.csv", |w| write_fixations_csv(w, rows))?;
    let total: usize = found.iter().map(Vec::len).sum();
    println!("{} sessions, {total} fixations -> {}", sessions.len(), out.display());
    Ok(())
}

pub fn measures(cfg: &RunConfig) -> Result<()> {
    let gaze_path = required(&cfg.paths.gaze, "gaze")?;
    let layout_path = required(&cfg.paths.layout, "layout")?;
    let part_path = required(&cfg.paths.participants, "participants")?;
    let samples = read_gaze_csv(open(gaze_path)?, &file_name(gaze_path))?;
    let layouts = read_layout_json(open(layout_path)?, &file_name(layout_path))?;
    let corpus = load_corpus(cfg)?;
    let genders: HashMap<String, _> = read_participants_csv(open(part_path)?, &file_name(part_path))?
        .into_iter()
        .collect();

    let mut records = Vec::new();
    for s in group_sessions(samples) {
        let layout = layouts
            .screen(&s.screen_id)
            .ok_or_else(|| Error::Config(format!("screen {} missing from layout file", s.screen_id)))?;
        let gender = *genders.get(&s.participant_id).ok_or_else(|| {
            Error::Config(format!("participant {} missing from participants file", s.participant_id))
        })?;
        let fixations = detect_fixations(&s.samples, &cfg.geometry, &cfg.fixation)?;
        records.extend(compute_measures(&s.participant_id, gender, &s.samples, &fixations, layout, &corpus)?);
    }
    let out = write_with(cfg, "measures.csv", |w| write_measures_csv(w, &records))?;
    println!("{} measure records -> {}", records.len(), out.display());
    Ok(())
}

pub fn mixedfit(cfg: &RunConfig, which: &[Measure]) -> Result<()> {
    let records = load_measures(cfg)?;
    let mf = &cfg.mixedfit;
    if mf.family_size == 0 || !(mf.alpha > 0.0 && mf.alpha < 1.0) {
        return Err(Error::Config("alpha must lie in (0, 1) and family_size be positive".into()));
    }
    let gate = mf.alpha / mf.family_size as f64;
    let mut csv = String::from("measure,term,coef,std_err,z,p_value,ci_low,ci_high,reject\n");
    let mut table = String::new();
    for &m in which {
        let fit = fit_mixed_model(&design_rows(&records, m, true)?)?;
        let reject: Vec<bool> = fit.fixed_effects.iter().map(|e| e.p_value < gate).collect();
        csv.push_str(&fixed_effects_csv(m.name(), &fit, &reject));
        if !table.is_empty() {
            table.push('\n');
        }
        table.push_str(&fixed_effects_table(m.title(), &fit, &reject));
    }
    table.push_str(&format!("reject: p < {} / {}\n", mf.alpha, mf.family_size));
    write_text(cfg, "mixedfit.csv", &csv)?;
    write_text(cfg, "mixedfit.txt", &table)?;
    print!("{table}");
    Ok(())
}

fn cv_config(cfg: &RunConfig) -> CvConfig {
    CvConfig {
        n_iterations: cfg.cv.iterations,
        train_size: cfg.cv.train_size,
        threshold: cfg.cv.threshold,
        seed: cfg.seed,
        scope: cfg.cv.screens.map_or(StandardizationScope::AllHeadlines, StandardizationScope::Screens),
    }
}

pub fn evaluate(cfg: &RunConfig) -> Result<()> {
    let data = Dataset::from_records(&load_measures(cfg)?)?;
    let report = monte_carlo_cv(&data, &cv_config(cfg))?;
    let table = eval_report_table(&report);
    write_text(cfg, "evaluate.csv", &eval_report_csv(&report))?;
    write_text(cfg, "evaluate.txt", &table)?;
    print!("{table}");
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepKind {
    Screens,
    Ensemble,
}

pub fn sweep(cfg: &RunConfig, kind: SweepKind) -> Result<()> {
    let data = Dataset::from_records(&load_measures(cfg)?)?;
    let cv = cv_config(cfg);
    let (name, label, points) = match kind {
        SweepKind::Screens => (
            "screens",
            "screens",
            sweep_standardization_screens(&data, &cv, &cfg.sweep.screens)?,
        ),
        SweepKind::Ensemble => (
            "ensemble",
            "ensemble",
            sweep_ensemble_size(&data, &cv, &cfg.sweep.ensemble)?,
        ),
    };
    let table = sweep_table(label, &points);
    write_text(cfg, &format!("sweep_{name}.csv"), &sweep_csv(&points))?;
    write_text(cfg, &format!("sweep_{name}.txt"), &table)?;
    print!("{table}");
    Ok(())
}

pub fn synth(cfg: &RunConfig) -> Result<()> {
    let corpus = match &cfg.paths.corpus {
        Some(p) => read_corpus_csv(open(p)?, &file_name(p))?,
        None => fixture_corpus(),
    };
    let design = paper_design(&corpus, &cfg.geometry)?;
    let s = &cfg.synth;
    let mut gen = GeneratorConfig {
        n_participants: s.n_participants,
        sigma2_participant: s.sigma2_participant,
        sigma2_residual: s.sigma2_residual,
        gender_ratio: s.gender_ratio,
        seed: cfg.seed,
        ..GeneratorConfig::default()
    };
    if s.null {
        gen.coefficients = [MeasureCoefficients::ZERO; 5];
        gen.sigma2_participant = 0.0;
    }
    let study = generate_measures(&gen, &design)?;

    write_with(cfg, "headlines.csv", |w| write_corpus_csv(w, &design.corpus))?;
    write_with(cfg, "layout.json", |w| write_layout_json(w, &design.layouts))?;
    write_with(cfg, "participants.csv", |w| write_participants_csv(w, &study.participants))?;
    write_with(cfg, "measures.csv", |w| write_measures_csv(w, &study.records))?;
    let mut written = vec!["headlines.csv", "layout.json", "participants.csv", "measures.csv"];

    if s.gaze {
        let ids: Vec<String> = study.participants.iter().map(|p| p.0.clone()).collect();
        // Offset so the streams do not reuse the measure generator's draws.
        let stream_seed = cfg.seed ^ 0x9E37_79B9_7F4A_7C15;
        let (samples, plans) =
            synthesize_sessions(&ids, &design.layouts, &design.corpus, &cfg.geometry, s.noise_sd_deg, stream_seed)?;
        write_with(cfg, "gaze.csv", |w| write_gaze_csv(w, &samples))?;
        write_with(cfg, "plan.csv", |w| write_plan_csv(w, &plans))?;
        written.extend(["gaze.csv", "plan.csv"]);
    }
    println!(
        "{} participants x {} headlines -> {} ({})",
        study.participants.len(),
        design.corpus.headlines.len(),
        cfg.paths.out_dir.display(),
        written.join(", ")
    );
    Ok(())
}
