use std::fmt::Write;

use crate::factuality::cv::{EvalReport, SweepPoint};

/// `metric,value` CSV.
pub fn eval_report_csv(r: &EvalReport) -> String {
    format!(
        "metric,value\nmean_auc,{}\nmean_acc,{}\nmean_acc_true,{}\nmean_acc_false,{}\nn_iterations,{}\nseed,{}\n",
        r.mean_auc, r.mean_acc, r.mean_acc_true, r.mean_acc_false, r.n_iterations, r.seed
    )
}

pub fn eval_report_table(r: &EvalReport) -> String {
    format!(
        "{:>9} {:>9} {:>16} {:>17}\n{:>9.3} {:>9.3} {:>16.3} {:>17.3}\n({} iterations, seed {})\n",
        "Mean AUC",
        "Mean Acc.",
        "Mean Acc. (True)",
        "Mean Acc. (False)",
        r.mean_auc,
        r.mean_acc,
        r.mean_acc_true,
        r.mean_acc_false,
        r.n_iterations,
        r.seed
    )
}

/// `x,mean_acc,mean_acc_true,mean_acc_false,mean_auc` CSV.
pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from("x,mean_acc,mean_acc_true,mean_acc_false,mean_auc\n");
    for p in points {
        let r = &p.report;
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            p.x, r.mean_acc, r.mean_acc_true, r.mean_acc_false, r.mean_auc
        );
    }
    out
}

pub fn sweep_table(x_label: &str, points: &[SweepPoint]) -> String {
    let mut out = format!(
        "{:>10} {:>9} {:>10} {:>11} {:>9}\n",
        x_label, "mean_acc", "acc_true", "acc_false", "mean_auc"
    );
    for p in points {
        let r = &p.report;
        let _ = writeln!(
            out,
            "{:>10} {:>9.3} {:>10.3} {:>11.3} {:>9.3}",
            p.x, r.mean_acc, r.mean_acc_true, r.mean_acc_false, r.mean_auc
        );
    }
    out
}
