//! Linear mixed model with a single random intercept per participant,
//! fitted by maximum likelihood.
//!
//! Model: `y = X β + Z u + ε`, `u ~ N(0, σ²_p I)`, `ε ~ N(0, σ² I)`, with
//! `X = [1, i_true, i_middle, i_bottom, i_male, l]`.
//!
//! Writing `γ = σ²_p / σ²`, the marginal covariance of participant `i` is
//! `σ² H_i` with `H_i = I + γ 11ᵀ`, and
//!
//! ```text
//! H_i⁻¹   = I − w_i 11ᵀ,      w_i = γ / (1 + n_i γ)
//! log|H_i| = log(1 + n_i γ)
//! ```
//!
//! For fixed `γ` the GLS estimate of `β` and the ML estimate
//! `σ̂² = r'H⁻¹r / n` are closed form, leaving a one-dimensional profiled
//! log-likelihood in `θ = log γ` that is maximized numerically.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stats::inference::{wald_test, Z_975};
use crate::stats::linalg::{add_outer, dot, Matrix};

pub const FIXED_EFFECT_NAMES: [&str; 6] =
    ["intercept", "c_true", "c_middle", "c_bottom", "c_male", "c_length"];

const N_FIXED: usize = FIXED_EFFECT_NAMES.len();

/// One observation of a single z-scored measure.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignRow<T> {
    pub participant_id: String,
    pub i_true: bool,
    pub i_middle: bool,
    pub i_bottom: bool,
    pub i_male: bool,
    /// Normalized headline length.
    pub l: T,
    pub y: T,
}

impl<T: Real> DesignRow<T> {
    fn covariates(&self) -> [T; N_FIXED] {
        let ind = |b: bool| if b { T::one() } else { T::zero() };
        [
            T::one(),
            ind(self.i_true),
            ind(self.i_middle),
            ind(self.i_bottom),
            ind(self.i_male),
            self.l,
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedEffect<T> {
    pub name: &'static str,
    pub coef: T,
    pub std_err: T,
    pub z: T,
    pub p_value: T,
    pub ci_low: T,
    pub ci_high: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixedFitResult<T> {
    /// In the order of [`FIXED_EFFECT_NAMES`].
    pub fixed_effects: Vec<FixedEffect<T>>,
    pub sigma2_participant: T,
    pub sigma2_residual: T,
    pub log_likelihood: T,
    pub converged: bool,
    pub iterations: usize,
    /// Conditional modes of the participant intercepts, sorted by id.
    pub random_effects: Vec<(String, T)>,
    pub n_obs: usize,
    pub n_groups: usize,
}

impl<T: Real> MixedFitResult<T> {
    pub fn effect(&self, name: &str) -> Option<&FixedEffect<T>> {
        self.fixed_effects.iter().find(|e| e.name == name)
    }

    pub fn coefficients(&self) -> Vec<T> {
        self.fixed_effects.iter().map(|e| e.coef).collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MixedOptions<T> {
    pub max_iter: usize,
    /// Relative change of the log-likelihood that counts as converged.
    pub rel_tol: T,
}

impl<T: Real> Default for MixedOptions<T> {
    fn default() -> Self {
        Self {
            max_iter: 500,
            rel_tol: T::lit(1e-10),
        }
    }
}

struct Group<T> {
    id: String,
    x: Vec<[T; N_FIXED]>,
    y: Vec<T>,
    xtx: Matrix<T>,
    xty: [T; N_FIXED],
    col_sums: [T; N_FIXED],
    y_sum: T,
}

struct Problem<T> {
    groups: Vec<Group<T>>,
    n: usize,
}

struct ProfilePoint<T> {
    ll: T,
    beta: Vec<T>,
    sigma2: T,
    a: Matrix<T>,
}

impl<T: Real> Problem<T> {
    fn new(rows: &[DesignRow<T>]) -> Result<Self> {
        let mut by_id: BTreeMap<&str, Vec<&DesignRow<T>>> = BTreeMap::new();
        for r in rows {
            if r.i_middle && r.i_bottom {
                return Err(Error::Design(format!(
                    "row for participant {} is both middle and bottom",
                    r.participant_id
                )));
            }
            if !r.l.is_finite() || !r.y.is_finite() {
                return Err(Error::Design(format!(
                    "non-finite value in row for participant {}",
                    r.participant_id
                )));
            }
            by_id.entry(r.participant_id.as_str()).or_default().push(r);
        }
        if by_id.len() < 2 {
            return Err(Error::Design(format!(
                "mixed model needs at least 2 participants, got {}",
                by_id.len()
            )));
        }
        let mut groups = Vec::with_capacity(by_id.len());
        for (id, rs) in by_id {
            if rs.len() < 2 {
                return Err(Error::Design(format!(
                    "participant {id} has {} row(s); at least 2 required",
                    rs.len()
                )));
            }
            let x: Vec<[T; N_FIXED]> = rs.iter().map(|r| r.covariates()).collect();
            let y: Vec<T> = rs.iter().map(|r| r.y).collect();
            let mut xtx = Matrix::zeros(N_FIXED, N_FIXED);
            let mut xty = [T::zero(); N_FIXED];
            let mut col_sums = [T::zero(); N_FIXED];
            for (xi, &yi) in x.iter().zip(&y) {
                add_outer(&mut xtx, xi, T::one());
                for j in 0..N_FIXED {
                    xty[j] += xi[j] * yi;
                    col_sums[j] += xi[j];
                }
            }
            let y_sum = y.iter().copied().sum();
            groups.push(Group {
                id: id.to_string(),
                x,
                y,
                xtx,
                xty,
                col_sums,
                y_sum,
            });
        }
        Ok(Self {
            groups,
            n: rows.len(),
        })
    }

    fn weight(gamma: T, n_i: usize) -> T {
        gamma / (T::one() + T::lit(n_i as f64) * gamma)
    }

    fn evaluate(&self, gamma: T) -> Result<ProfilePoint<T>> {
        let mut a = Matrix::zeros(N_FIXED, N_FIXED);
        let mut b = [T::zero(); N_FIXED];
        let mut log_det = T::zero();
        for g in &self.groups {
            let w = Self::weight(gamma, g.y.len());
            for i in 0..N_FIXED {
                b[i] += g.xty[i] - w * g.col_sums[i] * g.y_sum;
                for j in 0..N_FIXED {
                    a[(i, j)] += g.xtx[(i, j)];
                }
            }
            add_outer(&mut a, &g.col_sums, -w);
            log_det += (T::lit(g.y.len() as f64) * gamma).ln_1p();
        }
        let beta = a.cholesky()?.solve(&b);

        let mut rss = T::zero();
        for g in &self.groups {
            let w = Self::weight(gamma, g.y.len());
            let mut sum_r = T::zero();
            for (xi, &yi) in g.x.iter().zip(&g.y) {
                let r = yi - dot(xi, &beta);
                rss += r * r;
                sum_r += r;
            }
            rss -= w * sum_r * sum_r;
        }
        let n = T::lit(self.n as f64);
        let sigma2 = rss / n;
        if !(sigma2 > T::zero()) {
            return Err(Error::Numerical(
                "residual variance collapsed to zero (perfect fit)".into(),
            ));
        }
        let two_pi = T::lit(2.0 * std::f64::consts::PI);
        let half = T::lit(0.5);
        let ll = -half * n * (two_pi.ln() + sigma2.ln() + T::one()) - half * log_det;
        Ok(ProfilePoint {
            ll,
            beta,
            sigma2,
            a,
        })
    }

    fn ll_at(&self, theta: T) -> T {
        self.evaluate(theta.exp())
            .map(|p| p.ll)
            .unwrap_or(T::neg_infinity())
    }
}

/// Profiled log-likelihood at variance ratio `σ²_p / σ²` (β and σ²
/// maximized out). A ratio of 0 gives the ordinary least squares fit.
pub fn profile_log_likelihood<T: Real>(rows: &[DesignRow<T>], variance_ratio: T) -> Result<T> {
    Ok(Problem::new(rows)?.evaluate(variance_ratio)?.ll)
}

pub fn fit_mixed_model<T: Real>(rows: &[DesignRow<T>]) -> Result<MixedFitResult<T>> {
    fit_mixed_model_with(rows, &MixedOptions::default())
}

pub fn fit_mixed_model_with<T: Real>(
    rows: &[DesignRow<T>],
    opts: &MixedOptions<T>,
) -> Result<MixedFitResult<T>> {
    let problem = Problem::new(rows)?;
    // Rank check on the nested OLS problem.
    let ols = problem.evaluate(T::zero())?;

    let lo = T::lit(-25.0);
    let hi = T::lit(15.0);
    let mut theta = T::lit(-12.0);
    let mut ll = problem.ll_at(theta);
    for k in -5..=3 {
        let t = T::lit(2.0 * k as f64);
        let v = problem.ll_at(t);
        if v > ll {
            theta = t;
            ll = v;
        }
    }

    // Newton iterations on θ with central-difference derivatives and
    // step halving.
    let h = T::lit(1e-3);
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        iterations += 1;
        let fp = problem.ll_at((theta + h).min(hi));
        let fm = problem.ll_at((theta - h).max(lo));
        let grad = (fp - fm) / (h + h);
        let curv = (fp - ll - ll + fm) / (h * h);
        if theta <= lo && grad <= T::zero() || theta >= hi && grad >= T::zero() {
            converged = true;
            break;
        }
        let mut step = if curv < T::zero() {
            -grad / curv
        } else {
            grad.signum()
        };
        step = step.max(T::lit(-2.0)).min(T::lit(2.0));

        let mut accepted = None;
        for _ in 0..50 {
            let cand = (theta + step).max(lo).min(hi);
            let v = problem.ll_at(cand);
            if v >= ll {
                accepted = Some((cand, v));
                break;
            }
            step = step * T::lit(0.5);
        }
        let Some((cand, v)) = accepted else {
            // No improving step at working precision: θ is a local optimum.
            converged = true;
            break;
        };
        let change = (v - ll).abs() / ll.abs().max(T::one());
        let moved = (cand - theta).abs();
        theta = cand;
        ll = v;
        if change < opts.rel_tol && moved < T::lit(1e-4) {
            converged = true;
            break;
        }
    }

    let (gamma, point) = {
        let at_theta = problem.evaluate(theta.exp())?;
        if ols.ll >= at_theta.ll {
            (T::zero(), ols)
        } else {
            (theta.exp(), at_theta)
        }
    };

    let cov = point.a.cholesky()?.inverse();
    let z975 = T::lit(Z_975);
    let fixed_effects = FIXED_EFFECT_NAMES
        .iter()
        .enumerate()
        .map(|(j, &name)| {
            let coef = point.beta[j];
            let std_err = (point.sigma2 * cov[(j, j)]).sqrt();
            let w = wald_test(coef, std_err)?;
            Ok(FixedEffect {
                name,
                coef,
                std_err,
                z: w.z,
                p_value: w.p_value,
                ci_low: coef - z975 * std_err,
                ci_high: coef + z975 * std_err,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let random_effects = problem
        .groups
        .iter()
        .map(|g| {
            let sum_r: T = g
                .x
                .iter()
                .zip(&g.y)
                .map(|(xi, &yi)| yi - dot(xi, &point.beta))
                .sum();
            (g.id.clone(), Problem::weight(gamma, g.y.len()) * sum_r)
        })
        .collect();

    Ok(MixedFitResult {
        fixed_effects,
        sigma2_participant: gamma * point.sigma2,
        sigma2_residual: point.sigma2,
        log_likelihood: point.ll,
        converged,
        iterations,
        random_effects,
        n_obs: problem.n,
        n_groups: problem.groups.len(),
    })
}
