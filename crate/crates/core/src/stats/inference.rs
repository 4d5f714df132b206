use crate::error::{Error, Result};
use crate::scalar::Real;

/// Upper 97.5% point of the standard normal, as used for 95% intervals.
pub const Z_975: f64 = 1.96;

/// Standard normal CDF. Evaluated in double precision through `erfc`.
pub fn normal_cdf<T: Real>(x: T) -> T {
    T::lit(0.5 * libm::erfc(-x.as_f64() / std::f64::consts::SQRT_2))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaldTest<T> {
    pub z: T,
    pub p_value: T,
}

/// Wald z statistic and its two-sided normal p-value.
pub fn wald_test<T: Real>(coef: T, se: T) -> Result<WaldTest<T>> {
    if !(se > T::zero()) {
        return Err(Error::Numerical(format!(
            "Wald test needs a positive standard error, got {se}"
        )));
    }
    let z = coef / se;
    // 2 (1 - Φ(|z|)) = erfc(|z| / √2), without the cancellation in 1 - Φ.
    let p = libm::erfc(z.abs().as_f64() / std::f64::consts::SQRT_2);
    Ok(WaldTest {
        z,
        p_value: T::lit(p.min(1.0)),
    })
}

/// Rejection decisions at family-wise level `family_alpha`:
/// `p_i < family_alpha / m`, strictly.
pub fn bonferroni_gate<T: Real>(p_values: &[T], family_alpha: T) -> Vec<bool> {
    let m = T::lit(p_values.len() as f64);
    let threshold = family_alpha / m;
    p_values.iter().map(|&p| p < threshold).collect()
}
