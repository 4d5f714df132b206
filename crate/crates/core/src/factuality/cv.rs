//! Monte Carlo cross-validation of the ensemble classifier.
//!
//! Every iteration draws its own RNG stream from the master seed, so
//! iterations can run in parallel and the report does not depend on the
//! number of threads.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factuality::metrics::auc;
use crate::factuality::model::{fit_from_features, EnsembleModel};
use crate::gaze::{AoiPosition, Label, MeasureRecord};
use crate::stats::linalg::Matrix;
use crate::stats::ZScoreStats;

#[derive(Debug, Clone, Copy)]
struct Cell {
    position: AoiPosition,
    gaze: f64,
    fixdur: f64,
}

#[derive(Debug, Clone)]
struct HeadlineInfo {
    id: String,
    label: Label,
    l: f64,
}

/// Measure records indexed by participant and headline.
#[derive(Debug, Clone)]
pub struct Dataset {
    participants: Vec<String>,
    headlines: Vec<HeadlineInfo>,
    cells: Vec<Option<Cell>>,
    true_idx: Vec<usize>,
    false_idx: Vec<usize>,
}

impl Dataset {
    pub fn from_records(records: &[MeasureRecord]) -> Result<Self> {
        let mut pids: BTreeMap<&str, usize> = BTreeMap::new();
        let mut hinfo: BTreeMap<&str, (Label, f64)> = BTreeMap::new();
        for r in records {
            pids.insert(&r.participant_id, 0);
            match hinfo.get(r.headline_id.as_str()) {
                Some(&(label, l)) if label != r.label || l != r.length_norm => {
                    return Err(Error::Config(format!(
                        "headline {} has inconsistent label or length across records",
                        r.headline_id
                    )));
                }
                _ => {
                    hinfo.insert(&r.headline_id, (r.label, r.length_norm));
                }
            }
        }
        for (k, v) in pids.values_mut().enumerate() {
            *v = k;
        }
        let headlines: Vec<HeadlineInfo> = hinfo
            .iter()
            .map(|(id, &(label, l))| HeadlineInfo {
                id: id.to_string(),
                label,
                l,
            })
            .collect();
        let hidx: BTreeMap<&str, usize> = headlines
            .iter()
            .enumerate()
            .map(|(k, h)| (h.id.as_str(), k))
            .collect();
        let n_h = headlines.len();
        let mut cells = vec![None; pids.len() * n_h];
        for r in records {
            let slot = &mut cells[pids[r.participant_id.as_str()] * n_h + hidx[r.headline_id.as_str()]];
            if slot.is_some() {
                return Err(Error::Config(format!(
                    "duplicate record for participant {} on headline {}",
                    r.participant_id, r.headline_id
                )));
            }
            *slot = Some(Cell {
                position: r.position,
                gaze: r.total_gaze_duration,
                fixdur: r.total_fixation_duration,
            });
        }
        let true_idx = (0..n_h).filter(|&h| headlines[h].label.is_true()).collect();
        let false_idx = (0..n_h).filter(|&h| !headlines[h].label.is_true()).collect();
        Ok(Self {
            participants: pids.keys().map(|s| s.to_string()).collect(),
            headlines,
            cells,
            true_idx,
            false_idx,
        })
    }

    pub fn n_participants(&self) -> usize {
        self.participants.len()
    }

    pub fn n_headlines(&self) -> usize {
        self.headlines.len()
    }

    pub fn n_true(&self) -> usize {
        self.true_idx.len()
    }

    pub fn n_false(&self) -> usize {
        self.false_idx.len()
    }

    /// Number of 2-true + 1-false "screens" the headlines can be cut into.
    pub fn max_screens(&self) -> usize {
        (self.n_true() / 2).min(self.n_false())
    }

    fn cell(&self, p: usize, h: usize) -> Option<&Cell> {
        self.cells[p * self.headlines.len() + h].as_ref()
    }

    /// Per-participant z-score statistics over the (sorted) headline set.
    fn participant_stats(&self, p: usize, headlines: &[usize]) -> Result<(ZScoreStats<f64>, ZScoreStats<f64>)> {
        let (gaze, fixdur): (Vec<f64>, Vec<f64>) = headlines
            .iter()
            .filter_map(|&h| self.cell(p, h))
            .map(|c| (c.gaze, c.fixdur))
            .unzip();
        let named = |e: Error| match e {
            Error::Degenerate(msg) => Error::Degenerate(format!("participant {}: {msg}", self.participants[p])),
            other => other,
        };
        Ok((
            ZScoreStats::estimate(&gaze).map_err(named)?,
            ZScoreStats::estimate(&fixdur).map_err(named)?,
        ))
    }
}

/// Which headlines a participant's standardization statistics use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardizationScope {
    AllHeadlines,
    /// The evaluated screen plus `n - 1` randomly drawn 2:1 screens.
    Screens(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CvConfig {
    pub n_iterations: usize,
    /// Participants used for training; the rest form the ensemble.
    pub train_size: usize,
    /// A headline is predicted true when its score exceeds this.
    pub threshold: f64,
    pub seed: u64,
    pub scope: StandardizationScope,
}

impl Default for CvConfig {
    fn default() -> Self {
        Self {
            n_iterations: 5_000,
            train_size: 27,
            threshold: 0.5,
            seed: 0,
            scope: StandardizationScope::AllHeadlines,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalReport {
    pub mean_auc: f64,
    pub mean_acc: f64,
    pub mean_acc_true: f64,
    pub mean_acc_false: f64,
    pub n_iterations: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub x: usize,
    pub report: EvalReport,
}

struct Outcome {
    auc: f64,
    acc_true: f64,
    acc_false: f64,
}

fn validate(data: &Dataset, config: &CvConfig) -> Result<()> {
    let n_p = data.n_participants();
    if n_p < 2 {
        return Err(Error::Config(format!("need at least 2 participants, have {n_p}")));
    }
    if config.train_size == 0 || config.train_size >= n_p {
        return Err(Error::Config(format!(
            "train size {} must leave both training and ensemble participants (of {n_p})",
            config.train_size
        )));
    }
    // Two true and one false for evaluation, and both classes left to train on.
    if data.n_true() < 3 || data.n_false() < 2 {
        return Err(Error::Config(format!(
            "need at least 3 true and 2 false headlines, have {} and {}",
            data.n_true(),
            data.n_false()
        )));
    }
    if config.n_iterations == 0 {
        return Err(Error::Config("number of iterations must be positive".into()));
    }
    if !(0.0..=1.0).contains(&config.threshold) {
        return Err(Error::Config(format!("threshold {} outside [0, 1]", config.threshold)));
    }
    if let StandardizationScope::Screens(n) = config.scope {
        if n == 0 || n > data.max_screens() {
            return Err(Error::Config(format!(
                "screen count {n} outside [1, {}]",
                data.max_screens()
            )));
        }
    }
    Ok(())
}

/// z-scored (gaze, fixdur) per participant and headline, `None` where the
/// participant has no record.
type ZTable = Vec<Option<(f64, f64)>>;

fn z_table(data: &Dataset, std_headlines: &[usize]) -> Result<ZTable> {
    let n_h = data.n_headlines();
    let mut table = vec![None; data.n_participants() * n_h];
    for p in 0..data.n_participants() {
        let (g, f) = data.participant_stats(p, std_headlines)?;
        for h in 0..n_h {
            if let Some(c) = data.cell(p, h) {
                table[p * n_h + h] = Some((g.apply(c.gaze), f.apply(c.fixdur)));
            }
        }
    }
    Ok(table)
}

fn run_iteration(data: &Dataset, config: &CvConfig, full: Option<&ZTable>, iteration: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(iteration);

    let mut order: Vec<usize> = (0..data.n_participants()).collect();
    order.shuffle(&mut rng);
    let (train, ensemble) = order.split_at(config.train_size);

    let eval_true: Vec<usize> = sample(&mut rng, data.n_true(), 2)
        .into_iter()
        .map(|k| data.true_idx[k])
        .collect();
    let eval_false = data.false_idx[sample(&mut rng, data.n_false(), 1).index(0)];
    let eval = [eval_true[0], eval_true[1], eval_false];

    let local;
    let table = match (config.scope, full) {
        (StandardizationScope::AllHeadlines, Some(t)) => t,
        (StandardizationScope::Screens(n), _) => {
            let rest_true: Vec<usize> = data.true_idx.iter().copied().filter(|h| !eval.contains(h)).collect();
            let rest_false: Vec<usize> = data.false_idx.iter().copied().filter(|h| !eval.contains(h)).collect();
            let mut set: Vec<usize> = eval.to_vec();
            set.extend(sample(&mut rng, rest_true.len(), 2 * (n - 1)).into_iter().map(|k| rest_true[k]));
            set.extend(sample(&mut rng, rest_false.len(), n - 1).into_iter().map(|k| rest_false[k]));
            set.sort_unstable();
            local = z_table(data, &set)?;
            &local
        }
        (StandardizationScope::AllHeadlines, None) => unreachable!("full table precomputed"),
    };

    let n_h = data.n_headlines();
    let mut gaze = Vec::new();
    let mut fix = Vec::new();
    let mut labels = Vec::new();
    for &p in train {
        for h in 0..n_h {
            if eval.contains(&h) {
                continue;
            }
            let (Some(c), Some((zg, zf))) = (data.cell(p, h), table[p * n_h + h]) else {
                continue;
            };
            let mut row = [0.0; 3];
            row[c.position.index()] = zg;
            gaze.extend(row);
            fix.push(data.headlines[h].l * zf);
            labels.push(data.headlines[h].label.is_true());
        }
    }
    let n = labels.len();
    let model: EnsembleModel<f64> = fit_from_features(
        Matrix::from_row_major(n, 3, gaze)?,
        Matrix::from_row_major(n, 1, fix)?,
        &labels,
    )?;

    let mut scores = [0.0; 3];
    for (slot, &h) in scores.iter_mut().zip(&eval) {
        let mut total = 0.0;
        let mut count = 0usize;
        for &p in ensemble {
            if let (Some(c), Some((zg, zf))) = (data.cell(p, h), table[p * n_h + h]) {
                total += model.score(c.position, data.headlines[h].l, zg, zf);
                count += 1;
            }
        }
        if count == 0 {
            return Err(Error::Config(format!(
                "no ensemble participant has a record for headline {}",
                data.headlines[h].id
            )));
        }
        *slot = total / count as f64;
    }

    let predicted_true = |s: f64| s > config.threshold;
    let acc_true = (f64::from(u8::from(predicted_true(scores[0]))) + f64::from(u8::from(predicted_true(scores[1])))) / 2.0;
    let acc_false = f64::from(u8::from(!predicted_true(scores[2])));
    Ok(Outcome {
        auc: auc(&scores, &[true, true, false])?,
        acc_true,
        acc_false,
    })
}

/// Runs the cross-validation protocol: per iteration, split participants
/// into training and ensemble sets, hold out two true and one false
/// headline, standardize, train on the remaining headlines of the
/// training participants and score the held-out headlines with the
/// ensemble.
pub fn monte_carlo_cv(data: &Dataset, config: &CvConfig) -> Result<EvalReport> {
    validate(data, config)?;
    let full = match config.scope {
        StandardizationScope::AllHeadlines => {
            let all: Vec<usize> = (0..data.n_headlines()).collect();
            Some(z_table(data, &all)?)
        }
        StandardizationScope::Screens(_) => None,
    };
    let outcomes: Vec<Outcome> = (0..config.n_iterations as u64)
        .into_par_iter()
        .map(|i| run_iteration(data, config, full.as_ref(), i))
        .collect::<Result<_>>()?;

    let n = outcomes.len() as f64;
    let mut sums = [0.0; 3];
    for o in &outcomes {
        sums[0] += o.auc;
        sums[1] += o.acc_true;
        sums[2] += o.acc_false;
    }
    let mean_acc_true = sums[1] / n;
    let mean_acc_false = sums[2] / n;
    Ok(EvalReport {
        mean_auc: sums[0] / n,
        mean_acc: (2.0 * mean_acc_true + mean_acc_false) / 3.0,
        mean_acc_true,
        mean_acc_false,
        n_iterations: config.n_iterations,
        seed: config.seed,
    })
}

/// Cross-validation with the standardization set restricted to `n`
/// screens, for each requested `n`.
pub fn sweep_standardization_screens(
    data: &Dataset,
    config: &CvConfig,
    screen_counts: &[usize],
) -> Result<Vec<SweepPoint>> {
    screen_counts
        .iter()
        .map(|&n| {
            let cfg = CvConfig {
                scope: StandardizationScope::Screens(n),
                ..*config
            };
            Ok(SweepPoint {
                x: n,
                report: monte_carlo_cv(data, &cfg)?,
            })
        })
        .collect()
}

/// Cross-validation with `k` ensemble participants (the rest train), for
/// each requested `k`.
pub fn sweep_ensemble_size(data: &Dataset, config: &CvConfig, ensemble_sizes: &[usize]) -> Result<Vec<SweepPoint>> {
    let n_p = data.n_participants();
    ensemble_sizes
        .iter()
        .map(|&k| {
            if k == 0 || k >= n_p {
                return Err(Error::Config(format!("ensemble size {k} outside [1, {}]", n_p.saturating_sub(1))));
            }
            let cfg = CvConfig {
                train_size: n_p - k,
                ..*config
            };
            Ok(SweepPoint {
                x: k,
                report: monte_carlo_cv(data, &cfg)?,
            })
        })
        .collect()
}
