use serde::{Deserialize, Serialize};

use super::model::wbce_point;
use super::{FStarRule, Model, SyntheticDataset};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Budget and schedule of the agents' projected sign-gradient steps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImproveConfig<T> {
    /// Radius of the l-infinity ball around the starting point.
    pub r: T,
    pub alpha: T,
    pub steps: usize,
    /// Coordinates the agent may change.
    pub mask: Vec<usize>,
}

impl<T: Scalar> ImproveConfig<T> {
    /// All coordinates movable, `alpha = 2 r / steps` so the ball is
    /// reachable well before the last step.
    pub fn full(d: usize, r: T, steps: usize) -> Self {
        let alpha = if r > T::zero() { T::lit(2.0) * r / T::from_count(steps.max(1)) } else { T::one() };
        ImproveConfig { r, alpha, steps, mask: (0..d).collect() }
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        if self.steps == 0 || !(self.alpha > T::zero()) || !(self.r >= T::zero()) {
            return Err(Error::Argument("need steps >= 1, alpha > 0 and r >= 0".into()));
        }
        if self.mask.iter().any(|&j| j >= d) {
            return Err(Error::Argument("mask index outside the feature range".into()));
        }
        Ok(())
    }
}

/// Loss whose gradient toward the positive label drives the agent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PgdLoss<T> {
    Bce,
    Weighted { w_fp: T, w_fn: T },
}

/// Runs exactly `steps` ascent steps toward the positive class, moving only
/// masked coordinates and clipping back into the `r`-ball after each step.
pub fn pgd_improve<T: Scalar>(x: &[T], model: &Model<T>, cfg: &ImproveConfig<T>, loss: PgdLoss<T>) -> Result<Vec<T>> {
    cfg.validate(x.len())?;
    if model.predict(x) {
        return Err(Error::Precondition("only negatively classified agents improve".into()));
    }
    let (w_fp, w_fn) = match loss {
        PgdLoss::Bce => (T::one(), T::one()),
        PgdLoss::Weighted { w_fp, w_fn } => (w_fp, w_fn),
    };
    let mut cur = x.to_vec();
    for _ in 0..cfg.steps {
        // Descending the loss for label 1 is ascending toward the positive class.
        let (_, dz) = wbce_point(model.prob(&cur), true, w_fp, w_fn);
        let g = model.logit_input_grad(&cur);
        for &j in &cfg.mask {
            let dir = -(dz * g[j]);
            let step = if dir > T::zero() {
                cfg.alpha
            } else if dir < T::zero() {
                -cfg.alpha
            } else {
                T::zero()
            };
            cur[j] = (cur[j] + step).max(x[j] - cfg.r).min(x[j] + cfg.r);
        }
    }
    Ok(cur)
}

/// Confusion transitions of the test agents that start classified negative,
/// and the rates before and after they move.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TransitionReport {
    pub n_test: usize,
    pub tn_to_tp: usize,
    pub tn_to_fp: usize,
    pub fn_to_tp: usize,
    pub fn_to_fp: usize,
    pub stayed: usize,
    pub fpr_before: f64,
    pub fpr_after: f64,
    pub fnr_before: f64,
    pub fnr_after: f64,
    pub err_before: f64,
    pub err_after: f64,
}

#[derive(Default)]
struct Confusion {
    tp: usize,
    fp: usize,
    tn: usize,
    fnn: usize,
}

impl Confusion {
    fn add(&mut self, pred: bool, truth: bool) {
        match (pred, truth) {
            (true, true) => self.tp += 1,
            (true, false) => self.fp += 1,
            (false, false) => self.tn += 1,
            (false, true) => self.fnn += 1,
        }
    }

    fn rates(&self) -> (f64, f64, f64) {
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let n = self.tp + self.fp + self.tn + self.fnn;
        (ratio(self.fp, self.fp + self.tn), ratio(self.fnn, self.fnn + self.tp), ratio(self.fp + self.fnn, n))
    }
}

/// Moves every negatively classified test agent with `pgd_improve` and scores
/// the outcome with `rule`. Positively classified agents, and agents whose
/// steps do not reach the positive side, are scored where they started.
pub fn evaluate_improvement<T: Scalar>(
    model: &Model<T>,
    data: &SyntheticDataset<T>,
    cfg: &ImproveConfig<T>,
    loss: PgdLoss<T>,
    rule: FStarRule,
) -> Result<TransitionReport> {
    let mut before = Confusion::default();
    let mut after = Confusion::default();
    let mut rep = TransitionReport { n_test: data.test.len(), ..Default::default() };
    for &i in &data.test {
        let x = data.row(i);
        let truth = data.judge(rule, x);
        let pred = model.predict(x);
        before.add(pred, truth);
        if pred {
            after.add(true, truth);
            continue;
        }
        let moved = pgd_improve(x, model, cfg, loss)?;
        let (p2, t2) = (model.predict(&moved), data.judge(rule, &moved));
        // An agent that cannot reach the positive side does not move.
        if p2 {
            after.add(true, t2);
        } else {
            after.add(false, truth);
        }
        match (truth, p2, t2) {
            (_, false, _) => rep.stayed += 1,
            (false, true, true) => rep.tn_to_tp += 1,
            (false, true, false) => rep.tn_to_fp += 1,
            (true, true, true) => rep.fn_to_tp += 1,
            (true, true, false) => rep.fn_to_fp += 1,
        }
    }
    (rep.fpr_before, rep.fnr_before, rep.err_before) = before.rates();
    (rep.fpr_after, rep.fnr_after, rep.err_after) = after.rates();
    Ok(rep)
}
