use crate::error::{Error, Result};
use crate::factuality::standardize::StandardizedRecord;
use crate::gaze::AoiPosition;
use crate::scalar::Real;
use crate::stats::linalg::Matrix;
use crate::stats::{fit_logistic_ml, sigmoid};

/// Coefficients of the two per-participant logistic models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleModel<T> {
    /// Gaze duration slopes for the top, middle and bottom positions.
    pub c1: T,
    pub c2: T,
    pub c3: T,
    /// Slope of length × fixation duration.
    pub c4: T,
    /// Both logistic fits converged.
    pub converged: bool,
}

impl<T: Real> EnsembleModel<T> {
    pub fn new(c1: T, c2: T, c3: T, c4: T) -> Self {
        Self {
            c1,
            c2,
            c3,
            c4,
            converged: true,
        }
    }

    pub fn position_coefficient(&self, position: AoiPosition) -> T {
        match position {
            AoiPosition::Top => self.c1,
            AoiPosition::Middle => self.c2,
            AoiPosition::Bottom => self.c3,
        }
    }

    /// `(sigmoid(c_pos z_gaze) + sigmoid(c4 l z_fixdur)) / 2`
    #[inline]
    pub fn score(&self, position: AoiPosition, l: T, z_gaze: T, z_fixdur: T) -> T {
        let v1 = sigmoid(self.position_coefficient(position) * z_gaze);
        let v2 = sigmoid(self.c4 * l * z_fixdur);
        (v1 + v2) * T::lit(0.5)
    }
}

/// Factuality score of one participant for one headline.
pub fn participant_score<T: Real>(model: &EnsembleModel<T>, rec: &StandardizedRecord<T>) -> T {
    model.score(rec.position, rec.l, rec.z_gaze, rec.z_fixdur)
}

/// Fits the gaze × position model on `[i_top z, i_middle z, i_bottom z]`
/// and the fixation × length model on `l z_fixdur`, independently, by
/// maximum likelihood. `labels[i]` is true for factually true headlines.
pub fn train_ensemble_model<T: Real>(
    train_records: &[StandardizedRecord<T>],
    labels: &[bool],
) -> Result<EnsembleModel<T>> {
    if train_records.len() != labels.len() {
        return Err(Error::Dimension {
            expected: train_records.len(),
            got: labels.len(),
        });
    }
    let mut gaze = Vec::with_capacity(train_records.len() * 3);
    let mut fix = Vec::with_capacity(train_records.len());
    for r in train_records {
        gaze.extend(r.gaze_features());
        fix.push(r.fixdur_feature());
    }
    let n = train_records.len();
    fit_from_features(
        Matrix::from_row_major(n, 3, gaze)?,
        Matrix::from_row_major(n, 1, fix)?,
        labels,
    )
}

pub(crate) fn fit_from_features<T: Real>(
    gaze: Matrix<T>,
    fix: Matrix<T>,
    labels: &[bool],
) -> Result<EnsembleModel<T>> {
    let g = fit_logistic_ml(&gaze, labels)?;
    let f = fit_logistic_ml(&fix, labels)?;
    Ok(EnsembleModel {
        c1: g.coefficients[0],
        c2: g.coefficients[1],
        c3: g.coefficients[2],
        c4: f.coefficients[0],
        converged: g.converged && f.converged,
    })
}

/// Mean participant score over the ensemble's records for one headline.
pub fn headline_score<T: Real>(
    model: &EnsembleModel<T>,
    ensemble_records: &[StandardizedRecord<T>],
) -> Result<T> {
    let first = ensemble_records
        .first()
        .ok_or_else(|| Error::Config("headline score needs at least one ensemble record".into()))?;
    if let Some(r) = ensemble_records.iter().find(|r| r.headline_id != first.headline_id) {
        return Err(Error::Config(format!(
            "ensemble records mix headlines {} and {}",
            first.headline_id, r.headline_id
        )));
    }
    let total: T = ensemble_records.iter().map(|r| participant_score(model, r)).sum();
    Ok(total / T::lit(ensemble_records.len() as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    fn rec(pos: AoiPosition, l: f64, zg: f64, zf: f64) -> StandardizedRecord<f64> {
        StandardizedRecord {
            participant_id: "p".into(),
            headline_id: "h".into(),
            position: pos,
            l,
            z_gaze: zg,
            z_fixdur: zf,
        }
    }

    #[test]
    fn neutral_inputs_score_one_half() {
        let m = EnsembleModel::new(1.3, -0.4, 2.0, 5.0);
        assert_eq!(participant_score(&m, &rec(AoiPosition::Middle, 1.2, 0.0, 0.0)), 0.5);
        let zero = EnsembleModel::new(0.0, 0.0, 0.0, 0.0);
        assert_eq!(participant_score(&zero, &rec(AoiPosition::Top, -2.0, 3.0, -1.0)), 0.5);
    }

    #[test]
    fn matches_formula_on_random_records() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let m = EnsembleModel::new(0.3, 0.2, -0.1, 0.25);
        for _ in 0..5 {
            let pos = AoiPosition::ALL[rng.random_range(0..3)];
            let (l, zg, zf): (f64, f64, f64) = (rng.random_range(-2.0..2.0), rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let c = [0.3, 0.2, -0.1][pos.index()];
            let v1 = 1.0 / (1.0 + (-(c * zg)).exp());
            let v2 = 1.0 / (1.0 + (-(0.25 * l * zf)).exp());
            assert_abs_diff_eq!(participant_score(&m, &rec(pos, l, zg, zf)), (v1 + v2) / 2.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn increasing_in_gaze_for_positive_slope() {
        let m = EnsembleModel::new(0.7, 0.1, 0.2, -0.3);
        let mut prev = 0.0;
        for k in -20..20 {
            let s = participant_score(&m, &rec(AoiPosition::Top, 0.4, f64::from(k) * 0.25, 1.0));
            assert!(s > prev);
            prev = s;
        }
    }

    #[test]
    fn headline_score_is_mean() {
        let m = EnsembleModel::new(0.5, -0.2, 0.9, 0.4);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut recs: Vec<_> = (0..9)
            .map(|_| rec(AoiPosition::Bottom, 0.3, rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
            .collect();
        let mean = recs.iter().map(|r| participant_score(&m, r)).sum::<f64>() / 9.0;
        assert_abs_diff_eq!(headline_score(&m, &recs).unwrap(), mean, epsilon = 1e-15);
        recs.shuffle(&mut rng);
        assert_abs_diff_eq!(headline_score(&m, &recs).unwrap(), mean, epsilon = 1e-15);
        assert_eq!(
            headline_score(&m, &recs[..1]).unwrap(),
            participant_score(&m, &recs[0])
        );
        assert!(headline_score::<f64>(&m, &[]).is_err());
    }

    #[test]
    fn no_signal_gives_near_zero_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let normal = Normal::new(0.0, 1.0).unwrap();
        let n = 3000;
        let recs: Vec<_> = (0..n)
            .map(|i| rec(AoiPosition::ALL[i % 3], normal.sample(&mut rng), normal.sample(&mut rng), normal.sample(&mut rng)))
            .collect();
        let labels: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        let m = train_ensemble_model(&recs, &labels).unwrap();
        assert!(m.converged);
        for c in [m.c1, m.c2, m.c3, m.c4] {
            // Per-position SE is about 0.063.
            assert!(c.abs() < 0.25, "{m:?}");
        }
    }

    #[test]
    fn higher_gaze_for_true_gives_positive_slopes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let normal = Normal::new(0.0, 1.0).unwrap();
        let n = 3000;
        let labels: Vec<bool> = (0..n).map(|i| i % 3 != 0).collect();
        let recs: Vec<_> = (0..n)
            .map(|i| {
                let shift = if labels[i] { 0.3 } else { -0.3 };
                rec(AoiPosition::ALL[(i / 3) % 3], normal.sample(&mut rng), normal.sample(&mut rng) + shift, normal.sample(&mut rng))
            })
            .collect();
        let m = train_ensemble_model(&recs, &labels).unwrap();
        assert!(m.c1 > 0.0 && m.c2 > 0.0 && m.c3 > 0.0, "{m:?}");
    }
}
