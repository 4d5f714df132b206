//! No-intercept logistic regression fitted by Newton–Raphson.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stats::linalg::{add_outer, dot, Matrix};

#[derive(Debug, Clone, PartialEq)]
pub struct LogisticFit<T> {
    pub coefficients: Vec<T>,
    pub log_likelihood: T,
    pub converged: bool,
    pub iterations: usize,
    /// Log-likelihood after every accepted step, starting at the origin.
    pub trace: Vec<T>,
}

#[derive(Debug, Clone, Copy)]
pub struct LogisticOptions<T> {
    /// Convergence threshold on the max-norm of the log-likelihood gradient.
    pub gradient_tol: T,
    pub max_iter: usize,
    /// Coefficients are clamped to `[-cap, cap]`; hitting the cap marks the
    /// fit as not converged (separable data).
    pub coefficient_cap: T,
}

impl<T: Real> LogisticOptions<T> {
    pub fn for_samples(n: usize) -> Self {
        // 1e-8 in double precision; looser where the type cannot resolve it.
        let floor = T::epsilon() * T::lit(1e3 * n.max(1) as f64);
        Self {
            gradient_tol: T::lit(1e-8).max(floor),
            max_iter: 100,
            coefficient_cap: T::lit(30.0),
        }
    }
}

#[inline]
pub fn sigmoid<T: Real>(eta: T) -> T {
    if eta >= T::zero() {
        T::one() / (T::one() + (-eta).exp())
    } else {
        let e = eta.exp();
        e / (T::one() + e)
    }
}

/// log(1 + e^x) without overflow.
#[inline]
fn log1p_exp<T: Real>(x: T) -> T {
    if x > T::zero() {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

fn check_inputs<T: Real>(features: &Matrix<T>, labels: &[bool]) -> Result<()> {
    if features.rows() != labels.len() {
        return Err(Error::Dimension {
            expected: features.rows(),
            got: labels.len(),
        });
    }
    if features.cols() == 0 {
        return Err(Error::Dimension {
            expected: 1,
            got: 0,
        });
    }
    Ok(())
}

/// Bernoulli log-likelihood of `sigmoid(X c)`.
pub fn log_likelihood<T: Real>(features: &Matrix<T>, labels: &[bool], coef: &[T]) -> T {
    features
        .iter_rows()
        .zip(labels)
        .map(|(row, &y)| {
            let eta = dot(row, coef);
            let yv = if y { eta } else { T::zero() };
            yv - log1p_exp(eta)
        })
        .sum()
}

/// Analytic gradient `Xᵀ (y − sigmoid(X c))`.
pub fn log_likelihood_gradient<T: Real>(
    features: &Matrix<T>,
    labels: &[bool],
    coef: &[T],
) -> Vec<T> {
    let mut g = vec![T::zero(); features.cols()];
    for (row, &y) in features.iter_rows().zip(labels) {
        let r = if y { T::one() } else { T::zero() } - sigmoid(dot(row, coef));
        for (gj, &xj) in g.iter_mut().zip(row) {
            *gj += r * xj;
        }
    }
    g
}

fn fisher_information<T: Real>(features: &Matrix<T>, coef: &[T]) -> Matrix<T> {
    let k = features.cols();
    let mut h = Matrix::zeros(k, k);
    for row in features.iter_rows() {
        let p = sigmoid(dot(row, coef));
        add_outer(&mut h, row, p * (T::one() - p));
    }
    h
}

fn solve_regularized<T: Real>(h: &Matrix<T>, g: &[T]) -> Result<Vec<T>> {
    if let Ok(ch) = h.cholesky() {
        return Ok(ch.solve(g));
    }
    let k = h.rows();
    let trace = (0..k).map(|i| h[(i, i)]).sum::<T>() / T::lit(k as f64);
    let mut ridge = (trace + T::one()) * T::lit(1e-10);
    for _ in 0..12 {
        let mut hr = h.clone();
        for i in 0..k {
            hr[(i, i)] += ridge;
        }
        if let Ok(ch) = hr.cholesky() {
            return Ok(ch.solve(g));
        }
        ridge *= T::lit(100.0);
    }
    Err(Error::Numerical("logistic Hessian could not be factorized".into()))
}

fn separates<T: Real>(features: &Matrix<T>, labels: &[bool], coef: &[T]) -> bool {
    max_abs(coef) > T::zero()
        && features.iter_rows().zip(labels).all(|(row, &y)| {
            let eta = dot(row, coef);
            if y {
                eta > T::zero()
            } else {
                eta < T::zero()
            }
        })
}

fn max_abs<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |a, &x| a.max(x.abs()))
}

pub fn fit_logistic_ml<T: Real>(features: &Matrix<T>, labels: &[bool]) -> Result<LogisticFit<T>> {
    fit_logistic_ml_with(features, labels, &LogisticOptions::for_samples(labels.len()))
}

/// Maximizes the Bernoulli log-likelihood of `sigmoid(X c)` over `c`,
/// without an intercept. Newton steps are halved until the log-likelihood
/// does not decrease, so the trace is monotone up to rounding of the
/// log-likelihood sum.
pub fn fit_logistic_ml_with<T: Real>(
    features: &Matrix<T>,
    labels: &[bool],
    opts: &LogisticOptions<T>,
) -> Result<LogisticFit<T>> {
    check_inputs(features, labels)?;
    let positives = labels.iter().filter(|&&y| y).count();
    if positives == 0 || positives == labels.len() {
        return Err(Error::Degenerate(
            "logistic fit needs both label classes".into(),
        ));
    }

    let k = features.cols();
    let mut coef = vec![T::zero(); k];
    let mut ll = log_likelihood(features, labels, &coef);
    let mut trace = vec![ll];
    let mut converged = false;
    let mut capped = false;
    let mut iterations = 0;

    while iterations < opts.max_iter {
        let g = log_likelihood_gradient(features, labels, &coef);
        if max_abs(&g) < opts.gradient_tol {
            converged = true;
            break;
        }
        iterations += 1;
        let h = fisher_information(features, &coef);
        let step = solve_regularized(&h, &g)?;

        let g_norm = max_abs(&g);
        let tie = T::epsilon() * T::lit(64.0) * (ll.abs() + T::lit(labels.len() as f64));
        let mut t = T::one();
        let mut accepted = None;
        for trial in 0..60 {
            let cand: Vec<T> = coef
                .iter()
                .zip(&step)
                .map(|(&c, &s)| (c + t * s).max(-opts.coefficient_cap).min(opts.coefficient_cap))
                .collect();
            let cand_ll = log_likelihood(features, labels, &cand);
            if cand_ll >= ll {
                accepted = Some((cand, cand_ll));
                break;
            }
            // Near the optimum the likelihood change falls below rounding
            // noise; a full step that shrinks the gradient is taken anyway.
            if trial == 0
                && cand_ll >= ll - tie
                && max_abs(&log_likelihood_gradient(features, labels, &cand)) < g_norm
            {
                accepted = Some((cand, cand_ll));
                break;
            }
            t = t * T::lit(0.5);
        }
        let Some((cand, cand_ll)) = accepted else {
            // No ascent direction left at working precision.
            break;
        };
        capped = cand.iter().any(|c| c.abs() >= opts.coefficient_cap);
        let moved = cand.iter().zip(&coef).any(|(a, b)| a != b);
        coef = cand;
        ll = cand_ll;
        trace.push(ll);
        if capped || !moved {
            break;
        }
    }

    if !converged && !capped {
        let g = log_likelihood_gradient(features, labels, &coef);
        converged = max_abs(&g) < opts.gradient_tol;
    }

    // A coefficient vector that classifies every row correctly means the
    // data are separable and the likelihood has no finite maximizer.
    if !capped && separates(features, labels, &coef) {
        let scale = opts.coefficient_cap / max_abs(&coef);
        coef.iter_mut().for_each(|c| *c = *c * scale);
        ll = log_likelihood(features, labels, &coef);
        capped = true;
    }

    Ok(LogisticFit {
        coefficients: coef,
        log_likelihood: ll,
        converged: converged && !capped,
        iterations,
        trace,
    })
}

pub fn predict_logistic<T: Real>(fit: &LogisticFit<T>, features: &[T]) -> Result<T> {
    if features.len() != fit.coefficients.len() {
        return Err(Error::Dimension {
            expected: fit.coefficients.len(),
            got: features.len(),
        });
    }
    Ok(sigmoid(dot(features, &fit.coefficients)))
}
