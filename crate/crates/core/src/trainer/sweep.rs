use serde::{Deserialize, Serialize};

use super::{evaluate_improvement, train, Arch, FStarRule, ImproveConfig, PgdLoss, SyntheticDataset, TrainConfig};
use crate::error::{Error, Result};
use crate::stats::format_g;

pub const SWEEP_COLUMNS: [&str; 20] = [
    "dataset_seed",
    "model_arch",
    "w_fp",
    "w_fn",
    "tau",
    "r",
    "alpha",
    "T",
    "trial_seed",
    "err_before",
    "err_after",
    "fpr_before",
    "fpr_after",
    "fnr_before",
    "fnr_after",
    "tn_to_tp",
    "tn_to_fp",
    "fn_to_tp",
    "fn_to_fp",
    "stayed",
];

/// Model and optimiser settings of one sweep arm; the seed comes from the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainSpec {
    pub arch: Arch,
    pub w_fp: f64,
    pub w_fn: f64,
    pub lr: f64,
    pub epochs: usize,
    pub batch: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub dataset_seed: u64,
    pub model_arch: Arch,
    pub w_fp: f64,
    pub w_fn: f64,
    pub tau: f64,
    pub r: f64,
    pub alpha: f64,
    pub steps: usize,
    pub trial_seed: u64,
    pub report: super::TransitionReport,
}

/// Full factorial over specs, seeds, thresholds and budgets. Rows come out
/// in that nesting order. Agents move along the gradient of the loss each
/// model was trained with.
pub fn sweep_budget(
    data: &SyntheticDataset<f64>,
    specs: &[TrainSpec],
    taus: &[f64],
    r_grid: &[f64],
    seeds: &[u64],
    steps: usize,
) -> Result<Vec<SweepRow>> {
    if specs.is_empty() || taus.is_empty() || r_grid.is_empty() || seeds.is_empty() {
        return Err(Error::Argument("sweep grids must be nonempty".into()));
    }
    let mut rows = Vec::new();
    for spec in specs {
        for &seed in seeds {
            let cfg = TrainConfig {
                w_fp: spec.w_fp,
                w_fn: spec.w_fn,
                lr: spec.lr,
                epochs: spec.epochs,
                batch: spec.batch,
                seed,
            };
            let base = train(data, spec.arch, &cfg, 0.5)?;
            let loss = PgdLoss::Weighted { w_fp: spec.w_fp, w_fn: spec.w_fn };
            for &tau in taus {
                let model = base.with_tau(tau);
                for &r in r_grid {
                    let imp = ImproveConfig::full(data.d(), r, steps);
                    let report = evaluate_improvement(&model, data, &imp, loss, FStarRule::Generator)?;
                    rows.push(SweepRow {
                        dataset_seed: data.seed,
                        model_arch: spec.arch,
                        w_fp: spec.w_fp,
                        w_fn: spec.w_fn,
                        tau,
                        r,
                        alpha: imp.alpha,
                        steps,
                        trial_seed: seed,
                        report,
                    });
                }
            }
        }
    }
    Ok(rows)
}

/// CSV with a header line; reals printed with six significant digits.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = SWEEP_COLUMNS.join(",");
    out.push('\n');
    for r in rows {
        let p = &r.report;
        let fields = [
            r.dataset_seed.to_string(),
            r.model_arch.to_string(),
            format_g(r.w_fp),
            format_g(r.w_fn),
            format_g(r.tau),
            format_g(r.r),
            format_g(r.alpha),
            r.steps.to_string(),
            r.trial_seed.to_string(),
            format_g(p.err_before),
            format_g(p.err_after),
            format_g(p.fpr_before),
            format_g(p.fpr_after),
            format_g(p.fnr_before),
            format_g(p.fnr_after),
            p.tn_to_tp.to_string(),
            p.tn_to_fp.to_string(),
            p.fn_to_tp.to_string(),
            p.fn_to_fp.to_string(),
            p.stayed.to_string(),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
