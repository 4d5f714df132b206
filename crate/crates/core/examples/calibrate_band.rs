//! Replicates the calibrated-signal evaluation over independent synthetic
//! studies to size the acceptance band for the ensemble classifier.
//!
//! cargo run --release -p gazecheck-core --example calibrate_band -- [replications] [iterations]

use gazecheck::factuality::{monte_carlo_cv, CvConfig, Dataset};
use gazecheck::gaze::ScreenGeometry;
use gazecheck::synth::{fixture_corpus, generate_measures, paper_design, GeneratorConfig};

fn summary(name: &str, v: &[f64]) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let sd = (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    println!("{name:<15} mean {mean:.4}  sd {sd:.4}  min {min:.4}  max {max:.4}  mean±3sd [{:.4}, {:.4}]", mean - 3.0 * sd, mean + 3.0 * sd);
}

fn main() {
    let mut args = std::env::args().skip(1);
    let reps: u64 = args.next().map_or(50, |s| s.parse().expect("replications"));
    let iters: usize = args.next().map_or(5000, |s| s.parse().expect("iterations"));

    let design = paper_design(&fixture_corpus(), &ScreenGeometry::default()).unwrap();
    let mut cols: [Vec<f64>; 4] = Default::default();
    for seed in 0..reps {
        let study = generate_measures(&GeneratorConfig { seed, ..Default::default() }, &design).unwrap();
        let data = Dataset::from_records(&study.records).unwrap();
        let r = monte_carlo_cv(&data, &CvConfig { n_iterations: iters, seed, ..Default::default() }).unwrap();
        println!("seed {seed:>3}: auc {:.4} acc {:.4} acc_true {:.4} acc_false {:.4}", r.mean_auc, r.mean_acc, r.mean_acc_true, r.mean_acc_false);
        for (c, v) in cols.iter_mut().zip([r.mean_auc, r.mean_acc, r.mean_acc_true, r.mean_acc_false]) {
            c.push(v);
        }
    }
    for (name, c) in ["mean_auc", "mean_acc", "mean_acc_true", "mean_acc_false"].iter().zip(&cols) {
        summary(name, c);
    }
}
