//! Fixed-effects tables in the familiar `Coef. Std.Err. z P>|z| [0.025 0.975]`
//! layout.

use std::fmt::Write;

use crate::scalar::Real;
use crate::stats::mixed::MixedFitResult;

fn fmt_p(p: f64) -> String {
    if p < 0.001 {
        "<0.001".to_string()
    } else {
        format!("{p:.3}")
    }
}

/// Aligned text table. `reject` holds one Bonferroni decision per fixed
/// effect, in the same order as the fit.
pub fn fixed_effects_table<T: Real>(title: &str, fit: &MixedFitResult<T>, reject: &[bool]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let _ = writeln!(
        out,
        "{:<10} {:>8} {:>9} {:>8} {:>8} {:>8} {:>8}  {}",
        "", "Coef.", "Std.Err.", "z", "P>|z|", "[0.025", "0.975]", "reject"
    );
    for (e, &r) in fit.fixed_effects.iter().zip(reject) {
        let _ = writeln!(
            out,
            "{:<10} {:>8.3} {:>9.3} {:>8.3} {:>8} {:>8.3} {:>8.3}  {}",
            e.name,
            e.coef.as_f64(),
            e.std_err.as_f64(),
            e.z.as_f64(),
            fmt_p(e.p_value.as_f64()),
            e.ci_low.as_f64(),
            e.ci_high.as_f64(),
            if r { "yes" } else { "no" }
        );
    }
    let _ = writeln!(
        out,
        "sigma2_participant {:.6}  sigma2_residual {:.6}  log-likelihood {:.6}  converged {}",
        fit.sigma2_participant.as_f64(),
        fit.sigma2_residual.as_f64(),
        fit.log_likelihood.as_f64(),
        fit.converged
    );
    out
}

/// CSV rows `measure,term,coef,std_err,z,p_value,ci_low,ci_high,reject`
/// without header.
pub fn fixed_effects_csv<T: Real>(measure: &str, fit: &MixedFitResult<T>, reject: &[bool]) -> String {
    let mut out = String::new();
    for (e, &r) in fit.fixed_effects.iter().zip(reject) {
        let _ = writeln!(
            out,
            "{measure},{},{},{},{},{},{},{},{}",
            e.name,
            e.coef.as_f64(),
            e.std_err.as_f64(),
            e.z.as_f64(),
            e.p_value.as_f64(),
            e.ci_low.as_f64(),
            e.ci_high.as_f64(),
            r
        );
    }
    out
}
