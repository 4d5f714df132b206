use crate::error::{Error, Result};
use crate::scalar::Real;

pub fn mean<T: Real>(values: &[T]) -> T {
    values.iter().copied().sum::<T>() / T::lit(values.len() as f64)
}

/// Sample variance with denominator `n - 1`.
pub fn sample_variance<T: Real>(values: &[T]) -> T {
    let m = mean(values);
    values.iter().map(|&v| (v - m) * (v - m)).sum::<T>() / T::lit(values.len() as f64 - 1.0)
}

/// Location and scale of a z-score transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZScoreStats<T> {
    pub mean: T,
    pub sd: T,
}

impl<T: Real> ZScoreStats<T> {
    /// Estimates mean and sample standard deviation. Rejects fewer than two
    /// values and (numerically) constant input.
    pub fn estimate(values: &[T]) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Degenerate(format!(
                "z-score needs at least 2 values, got {}",
                values.len()
            )));
        }
        let mean = mean(values);
        let sd = sample_variance(values).sqrt();
        let scale = values.iter().fold(T::zero(), |a, &v| a.max(v.abs()));
        if !(sd > scale * T::epsilon() * T::lit(4.0)) || !sd.is_finite() {
            return Err(Error::Degenerate("z-score of zero-variance input".into()));
        }
        Ok(Self { mean, sd })
    }

    #[inline]
    pub fn apply(&self, v: T) -> T {
        (v - self.mean) / self.sd
    }
}

/// Standardizes to sample mean 0 and sample variance 1.
pub fn zscore<T: Real>(values: &[T]) -> Result<Vec<T>> {
    let stats = ZScoreStats::estimate(values)?;
    Ok(zscore_with(values, &stats))
}

pub fn zscore_with<T: Real>(values: &[T], stats: &ZScoreStats<T>) -> Vec<T> {
    values.iter().map(|&v| stats.apply(v)).collect()
}
