//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always shown; exits non-zero if any
//! criterion fails.

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use gazecheck::factuality::{monte_carlo_cv, CvConfig, Dataset, EvalReport, StandardizationScope};
use gazecheck::gaze::io::{open, read_corpus_csv};
use gazecheck::gaze::{detect_fixations, px_per_degree, FixationParams, Label, Measure, ScreenGeometry};
use gazecheck::stats::{
    design_rows, fit_logistic_ml, fit_mixed_model, log_likelihood, log_likelihood_gradient, wald_test,
};
use gazecheck::synth::{
    fixture_corpus, generate_gaze_stream, generate_measures, paper_design, FixationPlan, GeneratorConfig,
    PlannedFixation, StudyDesign,
};
use gazecheck::Matrix;
use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

// Tolerances and thresholds, as pinned by the acceptance criteria.
const C1_Z_TOL: f64 = 0.01;
const C1_GATE: f64 = 0.01;
const C1_MAX_SECONDS: f64 = 1.0;
const C2_REPLICATIONS: u64 = 100;
const C2_TRUE_C: f64 = 0.154;
const C2_MIN_COVERED: usize = 95;
const C2_MIN_POSITIVE: usize = 99;
const C3_TOL: f64 = 1e-6;
const C4_GRID_STEP: f64 = 1e-3;
const C4_GRID_HALF_WIDTH: f64 = 20.0;
const C4_ARGMAX_TOL: f64 = 2e-3;
const C4_FD_STEP: f64 = 1e-5;
const C4_FD_REL_TOL: f64 = 1e-6;
const C4_FD_POINTS: usize = 10;
const C5_STREAMS: u64 = 200;
const C5_MIN_COUNT_MATCH: f64 = 0.98;
const C5_CENTROID_DEG: f64 = 0.25;
const C5_NOISE_DEG: f64 = 0.1;
const C5_SACCADE_DEG_S: f64 = 200.0;
const C6_ITERATIONS: usize = 10_000;
const C6_AUC_RANGE: (f64, f64) = (0.48, 0.52);
/// Allowed gap between mean accuracy and the accuracy of a label-blind
/// rule with the same predicted-true rate; the AUC band's half-width.
const C6_CHANCE_TOL: f64 = 0.02;
const C7_ITERATIONS: usize = 5000;
const C7_MIN_AUC: f64 = 0.60;
/// mean ± 3 SD of the ensemble AUC over 50 independent synthetic studies
/// (seeds 0..50, 5000 iterations each), measured with
/// `cargo run --release -p gazecheck-core --example calibrate_band`:
/// mean 0.6342, SD 0.0398.
const C7_BAND: (f64, f64) = (0.5148, 0.7536);
const C7_REFERENCE: [(&str, f64); 4] =
    [("mean_auc", 0.688), ("mean_acc", 0.634), ("mean_acc_true", 0.619), ("mean_acc_false", 0.662)];
const C8_ITERATIONS: usize = 5000;
const C10_MEAN_WORDS: f64 = 8.51;
const C10_MEAN_TOL: f64 = 0.01;

struct Outcome {
    id: &'static str,
    pass: bool,
}

fn report(id: &'static str, pass: bool, detail: String) -> Outcome {
    println!("criterion {id:<4} {}  {detail}", if pass { "PASS" } else { "FAIL" });
    Outcome { id, pass }
}

fn note(detail: String) {
    println!("              {detail}");
}

fn design() -> StudyDesign {
    paper_design(&fixture_corpus(), &ScreenGeometry::default()).unwrap()
}

// Fixed effects as printed: (measure, term, coef, SE, z, bold at p < 0.01).
const PRINTED: [(&str, &str, f64, f64, f64, bool); 25] = [
    ("gaze", "c_true", 0.154, 0.023, 6.697, true),
    ("gaze", "c_middle", -0.026, 0.027, -0.959, false),
    ("gaze", "c_bottom", -0.054, 0.027, -2.020, false),
    ("gaze", "c_male", -0.149, 0.154, -0.969, false),
    ("gaze", "c_length", 0.174, 0.011, 15.844, true),
    ("fixdur", "c_true", 0.109, 0.021, 5.301, true),
    ("fixdur", "c_middle", -0.083, 0.024, -3.474, true),
    ("fixdur", "c_bottom", -0.239, 0.024, -10.059, true),
    ("fixdur", "c_male", -0.202, 0.182, -1.109, false),
    ("fixdur", "c_length", 0.100, 0.010, 10.154, true),
    ("fixcount", "c_true", 0.115, 0.020, 5.609, true),
    ("fixcount", "c_middle", -0.037, 0.024, -1.536, false),
    ("fixcount", "c_bottom", -0.199, 0.024, -8.420, true),
    ("fixcount", "c_male", -0.164, 0.184, -0.894, false),
    ("fixcount", "c_length", 0.118, 0.010, 12.011, true),
    ("avgfix", "c_true", 0.025, 0.022, 1.106, false),
    ("avgfix", "c_middle", -0.003, 0.026, -0.125, false),
    ("avgfix", "c_bottom", -0.130, 0.026, -5.061, true),
    ("avgfix", "c_male", -0.006, 0.171, -0.038, false),
    ("avgfix", "c_length", 0.059, 0.011, 5.509, true),
    ("firstfix", "c_true", 0.034, 0.024, 1.411, false),
    ("firstfix", "c_middle", 0.014, 0.028, 0.484, false),
    ("firstfix", "c_bottom", -0.120, 0.028, -4.321, true),
    ("firstfix", "c_male", -0.016, 0.148, -0.106, false),
    ("firstfix", "c_length", 0.056, 0.011, 4.906, true),
];

fn criterion_1() -> Vec<Outcome> {
    let start = Instant::now();
    let mut z_misses = Vec::new();
    let mut gate_misses = Vec::new();
    let mut feasible = 0;
    for &(measure, term, coef, se, z_printed, bold) in &PRINTED {
        let w = wald_test(coef, se).unwrap();
        if (w.z - z_printed).abs() > C1_Z_TOL {
            z_misses.push(format!("{measure}/{term} {:.3} vs {z_printed}", w.z));
        }
        if (w.p_value < C1_GATE) != bold {
            gate_misses.push(format!("{measure}/{term}"));
        }
        // Printed inputs carry three decimals; the z they came from can be
        // any ratio of values that round to them.
        let h = 0.0005;
        let ratios = [(coef - h) / (se - h), (coef - h) / (se + h), (coef + h) / (se - h), (coef + h) / (se + h)];
        let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if z_printed >= lo - h && z_printed <= hi + h {
            feasible += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let mut out = vec![report(
        "1a",
        z_misses.is_empty(),
        format!(
            "wald_test(coef, SE) within ±{C1_Z_TOL} of printed z: {}/25 rows",
            25 - z_misses.len()
        ),
    )];
    for m in &z_misses {
        note(format!("miss: {m}"));
    }
    out.push(report(
        "1b",
        gate_misses.is_empty(),
        format!(
            "Bonferroni gate p < {C1_GATE} reproduces the bold pattern: {}/25 rows{}",
            25 - gate_misses.len(),
            if gate_misses.is_empty() { String::new() } else { format!(" (misses: {})", gate_misses.join(", ")) }
        ),
    ));
    out.push(report("1c", secs < C1_MAX_SECONDS, format!("runtime {secs:.4} s < {C1_MAX_SECONDS} s")));
    note(format!(
        "diagnostic: printed z lies inside the interval reachable from rounded (coef, SE) in {feasible}/25 rows"
    ));
    out
}

fn criterion_2(design: &StudyDesign) -> Outcome {
    let names = ["intercept", "c_true", "c_middle", "c_bottom", "c_male", "c_length"];
    let truth = GeneratorConfig::default().coefficients[0].as_array();
    let mut covered = [0usize; 6];
    let mut positive = 0;
    let mut converged = 0;
    for seed in 0..C2_REPLICATIONS {
        let study = generate_measures(&GeneratorConfig { seed, ..Default::default() }, design).unwrap();
        let rows = design_rows(&study.records, Measure::TotalGazeDuration, false).unwrap();
        let fit = fit_mixed_model(&rows).unwrap();
        converged += usize::from(fit.converged);
        for (k, e) in fit.fixed_effects.iter().enumerate() {
            if (e.coef - truth[k]).abs() <= 3.0 * e.std_err {
                covered[k] += 1;
            }
        }
        if fit.effect("c_true").unwrap().coef > 0.0 {
            positive += 1;
        }
    }
    assert_eq!(truth[1], C2_TRUE_C);
    let pass = covered[1] >= C2_MIN_COVERED && positive >= C2_MIN_POSITIVE;
    let o = report(
        "2",
        pass,
        format!(
            "c_true within 3 SE of {C2_TRUE_C} in {}/{C2_REPLICATIONS} (need ≥ {C2_MIN_COVERED}), positive in {positive}/{C2_REPLICATIONS} (need ≥ {C2_MIN_POSITIVE})",
            covered[1]
        ),
    );
    note(format!(
        "3-SE coverage of every coefficient: {}; converged fits {converged}/{C2_REPLICATIONS}",
        names.iter().zip(covered).map(|(n, c)| format!("{n} {c}")).collect::<Vec<_>>().join(", ")
    ));
    o
}

fn ols_oracle(rows: &[gazecheck::DesignRow]) -> Vec<f64> {
    let b = |v: bool| if v { 1.0 } else { 0.0 };
    let x = DMatrix::from_fn(rows.len(), 6, |i, j| {
        let r = &rows[i];
        match j {
            0 => 1.0,
            1 => b(r.i_true),
            2 => b(r.i_middle),
            3 => b(r.i_bottom),
            4 => b(r.i_male),
            _ => r.l,
        }
    });
    let y = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.y));
    let beta = x.svd(true, true).solve(&y, 1e-12).unwrap();
    beta.iter().copied().collect()
}

fn criterion_3(design: &StudyDesign) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut zero_variance_fits = 0;
    let seeds = 0..5u64;
    for seed in seeds.clone() {
        let cfg = GeneratorConfig { sigma2_participant: 0.0, seed: 1000 + seed, ..Default::default() };
        let study = generate_measures(&cfg, design).unwrap();
        for m in [Measure::TotalGazeDuration, Measure::TotalFixationDuration] {
            let rows = design_rows(&study.records, m, false).unwrap();
            let fit = fit_mixed_model(&rows).unwrap();
            zero_variance_fits += usize::from(fit.sigma2_participant == 0.0);
            for (a, b) in fit.coefficients().iter().zip(ols_oracle(&rows)) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    report(
        "3",
        worst <= C3_TOL,
        format!(
            "σ²_participant = 0 data, 10 fits: max |mixed − OLS (SVD)| = {worst:.2e} ≤ {C3_TOL:e}; {zero_variance_fits}/10 fits put σ̂²_participant at 0"
        ),
    )
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

fn criterion_4() -> Vec<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_argmax: f64 = 0.0;
    let n_grid = (2.0 * C4_GRID_HALF_WIDTH / C4_GRID_STEP).round() as usize;
    for true_c in [-2.5, -0.7, 0.0, 0.4, 1.3, 3.0] {
        let xs: Vec<f64> = (0..300).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let ys: Vec<bool> = xs.iter().map(|&x| rng.random_bool(sigmoid(true_c * x))).collect();
        let m = Matrix::from_row_major(xs.len(), 1, xs.clone()).unwrap();
        let fit = fit_logistic_ml(&m, &ys).unwrap();
        // Independent objective: direct Bernoulli log-likelihood.
        let ll = |c: f64| -> f64 {
            xs.iter()
                .zip(&ys)
                .map(|(&x, &y)| {
                    let p = sigmoid(c * x);
                    if y { p.ln() } else { (1.0 - p).ln() }
                })
                .sum()
        };
        let mut best = (f64::NEG_INFINITY, 0.0);
        for k in 0..=n_grid {
            let c = -C4_GRID_HALF_WIDTH + k as f64 * C4_GRID_STEP;
            let v = ll(c);
            if v > best.0 {
                best = (v, c);
            }
        }
        worst_argmax = worst_argmax.max((fit.coefficients[0] - best.1).abs());
    }

    let mut worst_rel: f64 = 0.0;
    let xs: Vec<f64> = (0..600).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    let m = Matrix::from_row_major(200, 3, xs).unwrap();
    let ys: Vec<bool> = (0..200).map(|_| rng.random_bool(0.6)).collect();
    for _ in 0..C4_FD_POINTS {
        let c: Vec<f64> = (0..3).map(|_| rng.random_range(-2.0..2.0)).collect();
        let g = log_likelihood_gradient(&m, &ys, &c);
        for j in 0..3 {
            let mut up = c.clone();
            let mut dn = c.clone();
            up[j] += C4_FD_STEP;
            dn[j] -= C4_FD_STEP;
            let fd = (log_likelihood(&m, &ys, &up) - log_likelihood(&m, &ys, &dn)) / (2.0 * C4_FD_STEP);
            worst_rel = worst_rel.max((g[j] - fd).abs() / g[j].abs().max(1.0));
        }
    }
    vec![
        report(
            "4a",
            worst_argmax <= C4_ARGMAX_TOL,
            format!("1-D ML vs grid argmax (step {C4_GRID_STEP}, ±{C4_GRID_HALF_WIDTH}), 6 datasets: max gap {worst_argmax:.2e} ≤ {C4_ARGMAX_TOL:e}"),
        ),
        report(
            "4b",
            worst_rel <= C4_FD_REL_TOL,
            format!("analytic gradient vs central differences (h = {C4_FD_STEP:e}) at {C4_FD_POINTS} points: max rel err {worst_rel:.2e} ≤ {C4_FD_REL_TOL:e}"),
        ),
    ]
}

fn random_plan(rng: &mut ChaCha8Rng, geom: &ScreenGeometry, seed: u64) -> FixationPlan {
    let ppd = px_per_degree(geom);
    let margin = 2.0 * ppd;
    let k = rng.random_range(1..=8);
    let mut fixations: Vec<PlannedFixation> = Vec::with_capacity(k);
    while fixations.len() < k {
        let x = rng.random_range(margin..geom.width_px - margin);
        let y = rng.random_range(margin..geom.height_px - margin);
        // Consecutive targets at least 6° apart.
        if let Some(prev) = fixations.last() {
            if (x - prev.x).hypot(y - prev.y) < 6.0 * ppd {
                continue;
            }
        }
        fixations.push(PlannedFixation { position: None, x, y, duration_ms: rng.random_range(200.0..600.0) });
    }
    FixationPlan {
        participant_id: format!("p{seed}"),
        screen_id: "s01".into(),
        saccade_speeds_deg_s: vec![C5_SACCADE_DEG_S; k - 1],
        fixations,
    }
}

fn criterion_5() -> Outcome {
    let geom = ScreenGeometry::default();
    let ppd = px_per_degree(&geom);
    let period = geom.sample_period_ms();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut count_match = 0;
    let mut centroid_worst: f64 = 0.0;
    let mut duration_worst: f64 = 0.0;
    let mut planted = 0;
    for seed in 0..C5_STREAMS {
        let plan = random_plan(&mut rng, &geom, seed);
        planted += plan.fixations.len();
        let samples = generate_gaze_stream(&plan, &geom, C5_NOISE_DEG, seed).unwrap();
        let found = detect_fixations(&samples, &geom, &FixationParams::default()).unwrap();
        if found.len() != plan.fixations.len() {
            continue;
        }
        count_match += 1;
        for (f, p) in found.iter().zip(&plan.fixations) {
            centroid_worst = centroid_worst.max((f.centroid_x - p.x).hypot(f.centroid_y - p.y) / ppd);
            duration_worst = duration_worst.max((f.duration_ms - p.duration_ms).abs());
        }
    }
    let rate = count_match as f64 / C5_STREAMS as f64;
    let pass = rate >= C5_MIN_COUNT_MATCH && centroid_worst <= C5_CENTROID_DEG && duration_worst <= period + 1e-9;
    report(
        "5",
        pass,
        format!(
            "{C5_STREAMS} streams ({planted} fixations, noise {C5_NOISE_DEG}°, saccades {C5_SACCADE_DEG_S}°/s): count exact in {:.1}% (need ≥ {:.0}%), worst centroid error {centroid_worst:.3}° ≤ {C5_CENTROID_DEG}°, worst duration error {duration_worst:.1} ms ≤ {period:.1} ms",
            100.0 * rate,
            100.0 * C5_MIN_COUNT_MATCH
        ),
    )
}

fn calibrated_dataset(design: &StudyDesign) -> (Vec<gazecheck::gaze::MeasureRecord>, Dataset) {
    // First replication of criterion 2.
    let study = generate_measures(&GeneratorConfig { seed: 0, ..Default::default() }, design).unwrap();
    let data = Dataset::from_records(&study.records).unwrap();
    (study.records, data)
}

fn cv(n_iterations: usize) -> CvConfig {
    CvConfig { n_iterations, seed: 0, ..CvConfig::default() }
}

fn criterion_6(records: &[gazecheck::gaze::MeasureRecord]) -> Outcome {
    let mut ids: Vec<&str> = records.iter().map(|r| r.headline_id.as_str()).collect();
    ids.sort_unstable();
    ids.dedup();
    let labels: HashMap<&str, Label> = records.iter().map(|r| (r.headline_id.as_str(), r.label)).collect();
    let mut shuffled: Vec<Label> = ids.iter().map(|id| labels[id]).collect();
    shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(6));
    let relabel: HashMap<&str, Label> = ids.iter().copied().zip(shuffled).collect();
    let permuted: Vec<_> = records
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.label = relabel[r.headline_id.as_str()];
            r
        })
        .collect();
    let data = Dataset::from_records(&permuted).unwrap();
    let r = monte_carlo_cv(&data, &cv(C6_ITERATIONS)).unwrap();
    // A rule that ignores the label predicts "true" at the same rate q on
    // both classes; with two true and one false headline per iteration its
    // expected mean accuracy is (2q + (1 - q)) / 3.
    let q = (2.0 * r.mean_acc_true + (1.0 - r.mean_acc_false)) / 3.0;
    let chance = (2.0 * q + (1.0 - q)) / 3.0;
    let pass = (C6_AUC_RANGE.0..=C6_AUC_RANGE.1).contains(&r.mean_auc) && (r.mean_acc - chance).abs() <= C6_CHANCE_TOL;
    let o = report(
        "6",
        pass,
        format!(
            "label-shuffled, {C6_ITERATIONS} iterations: mean AUC {:.4} in [{}, {}]; mean acc {:.4} within ±{C6_CHANCE_TOL} of chance {chance:.4} at threshold 0.5",
            r.mean_auc, C6_AUC_RANGE.0, C6_AUC_RANGE.1, r.mean_acc
        ),
    );
    note(format!(
        "predicted-true rate {q:.4}: acc_true {:.4}, acc_false {:.4}; the intercept-free model still absorbs the 2:1 base rate through position feature means",
        r.mean_acc_true, r.mean_acc_false
    ));
    o
}

fn criterion_7(data: &Dataset) -> (Outcome, EvalReport) {
    let r = monte_carlo_cv(data, &cv(C7_ITERATIONS)).unwrap();
    let pass = r.mean_auc > C7_MIN_AUC && (C7_BAND.0..=C7_BAND.1).contains(&r.mean_auc);
    let o = report(
        "7",
        pass,
        format!(
            "calibrated synthetic study, {C7_ITERATIONS} iterations: mean AUC {:.4} > {C7_MIN_AUC}, inside pre-registered band [{}, {}]",
            r.mean_auc, C7_BAND.0, C7_BAND.1
        ),
    );
    let achieved = [r.mean_auc, r.mean_acc, r.mean_acc_true, r.mean_acc_false];
    note(format!(
        "achieved vs reference: {}",
        C7_REFERENCE
            .iter()
            .zip(achieved)
            .map(|((n, reference), a)| format!("{n} {a:.3} ({reference})"))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    (o, r)
}

fn criterion_8(data: &Dataset) -> Vec<Outcome> {
    let run = |cfg: CvConfig| monte_carlo_cv(data, &cfg).unwrap().mean_auc;
    let screens_1 = run(CvConfig { scope: StandardizationScope::Screens(1), ..cv(C8_ITERATIONS) });
    let max = data.max_screens();
    let screens_max = run(CvConfig { scope: StandardizationScope::Screens(max), ..cv(C8_ITERATIONS) });
    let n_p = data.n_participants();
    let ens_5 = run(CvConfig { train_size: n_p - 5, ..cv(C8_ITERATIONS) });
    let ens_25 = run(CvConfig { train_size: n_p - 25, ..cv(C8_ITERATIONS) });
    vec![
        report(
            "8a",
            screens_1 <= screens_max,
            format!("AUC(screens=1) {screens_1:.4} ≤ AUC(screens={max}) {screens_max:.4}"),
        ),
        report("8b", ens_5 < ens_25, format!("AUC(ensemble=5) {ens_5:.4} < AUC(ensemble=25) {ens_25:.4}")),
    ]
}

fn run_cli(dir: &Path, args: &[&str], threads: Option<&str>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gazecheck"));
    cmd.current_dir(dir).args(args);
    if let Some(t) = threads {
        cmd.env("RAYON_NUM_THREADS", t);
    }
    let out = cmd.output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

fn cli_session(dir: &Path, threads: Option<&str>) {
    let steps: [&[&str]; 8] = [
        &["synth", "--seed", "9", "--participants", "8", "--gaze", "--out-dir", "syn"],
        &["detect", "--gaze", "syn/gaze.csv", "--out-dir", "det"],
        &[
            "measures", "--gaze", "syn/gaze.csv", "--layout", "syn/layout.json", "--corpus", "syn/headlines.csv",
            "--participants", "syn/participants.csv", "--out-dir", "mea",
        ],
        &["mixedfit", "--measures", "syn/measures.csv", "--out-dir", "fit"],
        &["evaluate", "--seed", "9", "--measures", "syn/measures.csv", "--iterations", "300", "--train-size", "5", "--out-dir", "ev"],
        &["evaluate", "--seed", "9", "--measures", "syn/measures.csv", "--iterations", "300", "--train-size", "5", "--screens", "4", "--out-dir", "ev4"],
        &["sweep", "--seed", "9", "--which", "screens", "--values", "1,6,36", "--measures", "syn/measures.csv", "--iterations", "200", "--train-size", "5", "--out-dir", "sw"],
        &["sweep", "--seed", "9", "--which", "ensemble", "--values", "1,3,7", "--measures", "syn/measures.csv", "--iterations", "200", "--out-dir", "sw"],
    ];
    for s in steps {
        run_cli(dir, s, threads);
    }
}

fn collect_files(root: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push((p.strip_prefix(root).unwrap().display().to_string(), fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

fn criterion_9() -> Outcome {
    let a = tempfile::TempDir::new().unwrap();
    let b = tempfile::TempDir::new().unwrap();
    let c = tempfile::TempDir::new().unwrap();
    cli_session(a.path(), None);
    cli_session(b.path(), None);
    cli_session(c.path(), Some("1"));
    let (fa, fb, fc) = (collect_files(a.path()), collect_files(b.path()), collect_files(c.path()));
    let pass = !fa.is_empty() && fa == fb && fa == fc;
    report(
        "9",
        pass,
        format!(
            "8 subcommand runs repeated with the same seed: {} output files byte-identical across two runs and a single-threaded run",
            fa.len()
        ),
    )
}

fn criterion_10() -> Outcome {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/headlines.csv");
    let corpus = read_corpus_csv(open(&path).unwrap(), "headlines.csv").unwrap();
    let s = corpus.stats();
    let pass = s.n_true == 72 && s.n_false == 36 && (s.mean_words - C10_MEAN_WORDS).abs() <= C10_MEAN_TOL;
    let o = report(
        "10",
        pass,
        format!(
            "corpus file: {} true, {} false, mean words {:.4} (need 72, 36, {C10_MEAN_WORDS} ± {C10_MEAN_TOL})",
            s.n_true, s.n_false, s.mean_words
        ),
    );
    note("the corpus file is a stand-in with the published counts and word-count means; the original headlines are not bundled".into());
    o
}

fn main() {
    let design = design();
    let (records, data) = calibrated_dataset(&design);

    let mut outcomes = criterion_1();
    outcomes.push(criterion_2(&design));
    outcomes.push(criterion_3(&design));
    outcomes.extend(criterion_4());
    outcomes.push(criterion_5());
    outcomes.push(criterion_6(&records));
    let (o7, _) = criterion_7(&data);
    outcomes.push(o7);
    outcomes.extend(criterion_8(&data));
    outcomes.push(criterion_9());
    outcomes.push(criterion_10());

    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    println!(
        "acceptance: {}/{} checks pass{}",
        outcomes.len() - failed.len(),
        outcomes.len(),
        if failed.is_empty() { String::new() } else { format!("; failing: {}", failed.join(", ")) }
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
