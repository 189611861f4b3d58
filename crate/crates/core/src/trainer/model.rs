use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::SyntheticDataset;
use crate::error::{Error, Result};
use crate::rng::{derive_seed, trial_rng};
use crate::scalar::Scalar;

/// Probabilities are clamped this far from 0 and 1 inside the loss.
pub const PROB_CLAMP: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arch {
    Linear,
    /// One `tanh` hidden layer.
    Mlp {
        hidden: usize,
    },
}

impl fmt::Display for Arch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arch::Linear => f.write_str("linear"),
            Arch::Mlp { hidden } => write!(f, "mlp{hidden}"),
        }
    }
}

impl std::str::FromStr for Arch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "linear" {
            return Ok(Arch::Linear);
        }
        s.strip_prefix("mlp")
            .and_then(|h| h.parse().ok())
            .filter(|&h| h > 0)
            .map(|hidden| Arch::Mlp { hidden })
            .ok_or_else(|| Error::Argument(format!("unknown architecture `{s}` (linear or mlpH)")))
    }
}

impl Arch {
    pub fn n_params(self, d: usize) -> usize {
        match self {
            Arch::Linear => d + 1,
            Arch::Mlp { hidden } => hidden * d + 2 * hidden + 1,
        }
    }
}

/// Sigmoid-headed scorer with decision threshold `tau`. Parameters are one
/// flat vector: `[w, b]` for the linear model, `[W1 (row-major), b1, w2, b2]`
/// for the hidden-layer model.
#[derive(Debug, Clone, PartialEq)]
pub struct Model<T> {
    pub arch: Arch,
    pub d: usize,
    pub params: Vec<T>,
    pub tau: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub w_fp: f64,
    pub w_fn: f64,
    pub lr: f64,
    pub epochs: usize,
    pub batch: usize,
    pub seed: u64,
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.w_fp > 0.0 && self.w_fn > 0.0) {
            return Err(Error::Argument("loss weights must be positive".into()));
        }
        if !(self.lr > 0.0) || self.batch == 0 {
            return Err(Error::Argument("need a positive learning rate and batch size".into()));
        }
        Ok(())
    }
}

fn sigmoid<T: Scalar>(z: T) -> T {
    if z >= T::zero() {
        T::one() / (T::one() + (-z).exp())
    } else {
        let e = z.exp();
        e / (T::one() + e)
    }
}

impl<T: Scalar> Model<T> {
    pub fn zeros(arch: Arch, d: usize, tau: T) -> Self {
        Model { arch, d, params: vec![T::zero(); arch.n_params(d)], tau }
    }

    /// Gaussian initialisation scaled by fan-in.
    pub fn init<R: Rng + ?Sized>(arch: Arch, d: usize, tau: T, rng: &mut R) -> Self {
        let mut m = Self::zeros(arch, d, tau);
        let mut draw = |scale: f64| T::lit(scale * rng.sample::<f64, _>(StandardNormal));
        match arch {
            Arch::Linear => {
                for p in &mut m.params[..d] {
                    *p = draw(0.1 / (d as f64).sqrt());
                }
            }
            Arch::Mlp { hidden } => {
                for p in &mut m.params[..hidden * d] {
                    *p = draw(1.0 / (d as f64).sqrt());
                }
                let w2 = hidden * d + hidden;
                for p in &mut m.params[w2..w2 + hidden] {
                    *p = draw(1.0 / (hidden as f64).sqrt());
                }
            }
        }
        m
    }

    pub fn with_tau(&self, tau: T) -> Self {
        Model { tau, ..self.clone() }
    }

    fn hidden(&self, x: &[T], h: usize) -> Vec<T> {
        let d = self.d;
        (0..h)
            .map(|j| {
                let row = &self.params[j * d..(j + 1) * d];
                let pre = row.iter().zip(x).fold(self.params[h * d + j], |acc, (&w, &xi)| acc + w * xi);
                pre.tanh()
            })
            .collect()
    }

    pub fn logit(&self, x: &[T]) -> T {
        let d = self.d;
        match self.arch {
            Arch::Linear => self.params[..d].iter().zip(x).fold(self.params[d], |acc, (&w, &xi)| acc + w * xi),
            Arch::Mlp { hidden: h } => {
                let a = self.hidden(x, h);
                let w2 = &self.params[h * d + h..h * d + 2 * h];
                w2.iter().zip(&a).fold(self.params[h * d + 2 * h], |acc, (&w, &ai)| acc + w * ai)
            }
        }
    }

    pub fn prob(&self, x: &[T]) -> T {
        sigmoid(self.logit(x))
    }

    pub fn predict(&self, x: &[T]) -> bool {
        self.prob(x) >= self.tau
    }

    /// Adds `scale * d logit / d params` into `out`.
    fn add_logit_param_grad(&self, x: &[T], scale: T, out: &mut [T]) {
        let d = self.d;
        match self.arch {
            Arch::Linear => {
                for (o, &xi) in out[..d].iter_mut().zip(x) {
                    *o += scale * xi;
                }
                out[d] += scale;
            }
            Arch::Mlp { hidden: h } => {
                let a = self.hidden(x, h);
                let w2 = h * d + h;
                for j in 0..h {
                    let back = scale * self.params[w2 + j] * (T::one() - a[j] * a[j]);
                    for (o, &xi) in out[j * d..(j + 1) * d].iter_mut().zip(x) {
                        *o += back * xi;
                    }
                    out[h * d + j] += back;
                    out[w2 + j] += scale * a[j];
                }
                out[h * d + 2 * h] += scale;
            }
        }
    }

    /// `d logit / d x`.
    pub fn logit_input_grad(&self, x: &[T]) -> Vec<T> {
        let d = self.d;
        match self.arch {
            Arch::Linear => self.params[..d].to_vec(),
            Arch::Mlp { hidden: h } => {
                let a = self.hidden(x, h);
                let w2 = h * d + h;
                let mut g = vec![T::zero(); d];
                for j in 0..h {
                    let back = self.params[w2 + j] * (T::one() - a[j] * a[j]);
                    for (gi, &w) in g.iter_mut().zip(&self.params[j * d..(j + 1) * d]) {
                        *gi += back * w;
                    }
                }
                g
            }
        }
    }
}

/// Per-example weighted cross entropy and its derivative in the logit. The
/// derivative is zero where the clamp is active.
pub(crate) fn wbce_point<T: Scalar>(p: T, y: bool, w_fp: T, w_fn: T) -> (T, T) {
    if p.is_nan() {
        return (p, p);
    }
    let eps = T::lit(PROB_CLAMP);
    let lo = eps;
    let hi = T::one() - eps;
    let pc = p.max(lo).min(hi);
    let active = p > lo && p < hi;
    if y {
        let dz = if active { -w_fn * (T::one() - p) } else { T::zero() };
        (-w_fn * pc.ln(), dz)
    } else {
        let dz = if active { w_fp * p } else { T::zero() };
        (-w_fp * (T::one() - pc).ln(), dz)
    }
}

/// `-(1/n) sum [w_fp (1 - y) log(1 - p) + w_fn y log p]` with `p` clamped to
/// `[1e-7, 1 - 1e-7]`.
pub fn wbce_loss<T: Scalar>(y_hat: &[T], y: &[bool], w_fp: T, w_fn: T) -> Result<T> {
    if y_hat.len() != y.len() {
        return Err(Error::LengthMismatch { left: y_hat.len(), right: y.len() });
    }
    if y.is_empty() {
        return Ok(T::zero());
    }
    let total: T = y_hat.iter().zip(y).map(|(&p, &yi)| wbce_point(p, yi, w_fp, w_fn).0).sum();
    Ok(total / T::from_count(y.len()))
}

/// Mean loss over the rows `idx` of `data` and its gradient in the parameters.
pub fn loss_and_grad<T: Scalar>(
    model: &Model<T>,
    data: &SyntheticDataset<T>,
    idx: &[usize],
    w_fp: T,
    w_fn: T,
) -> (T, Vec<T>) {
    let mut grad = vec![T::zero(); model.params.len()];
    let mut loss = T::zero();
    for &i in idx {
        let x = data.row(i);
        let (l, dz) = wbce_point(model.prob(x), data.labels[i], w_fp, w_fn);
        loss += l;
        if dz != T::zero() {
            model.add_logit_param_grad(x, dz, &mut grad);
        }
    }
    let n = T::from_count(idx.len().max(1));
    for g in &mut grad {
        *g /= n;
    }
    (loss / n, grad)
}

/// Plain mini-batch gradient descent on the training split.
pub fn train<T: Scalar>(data: &SyntheticDataset<T>, arch: Arch, config: &TrainConfig, tau: T) -> Result<Model<T>> {
    config.validate()?;
    if data.train.is_empty() {
        return Err(Error::Argument("empty training split".into()));
    }
    let mut model = Model::init(arch, data.d(), tau, &mut trial_rng(derive_seed(config.seed, "init"), 0));
    let mut rng = trial_rng(derive_seed(config.seed, "batches"), 0);
    let (w_fp, w_fn, lr) = (T::lit(config.w_fp), T::lit(config.w_fn), T::lit(config.lr));
    let mut order = data.train.clone();
    for epoch in 0..config.epochs {
        order.shuffle(&mut rng);
        for (batch, idx) in order.chunks(config.batch).enumerate() {
            let (loss, grad) = loss_and_grad(&model, data, idx, w_fp, w_fn);
            if !loss.is_finite() || grad.iter().any(|g| !g.is_finite()) {
                return Err(Error::Divergence { epoch, batch });
            }
            for (p, g) in model.params.iter_mut().zip(&grad) {
                *p -= lr * *g;
            }
            if model.params.iter().any(|p| !p.is_finite()) {
                return Err(Error::Divergence { epoch, batch });
            }
        }
    }
    Ok(model)
}

/// Largest relative error between the analytic gradient and central
/// differences with step `h`, in the max norm.
pub fn gradient_check<T: Scalar>(
    model: &Model<T>,
    data: &SyntheticDataset<T>,
    idx: &[usize],
    w_fp: T,
    w_fn: T,
    h: T,
) -> T {
    let (_, analytic) = loss_and_grad(model, data, idx, w_fp, w_fn);
    let mut probe = model.clone();
    let mut numeric = vec![T::zero(); analytic.len()];
    for k in 0..analytic.len() {
        let base = probe.params[k];
        probe.params[k] = base + h;
        let up = loss_and_grad(&probe, data, idx, w_fp, w_fn).0;
        probe.params[k] = base - h;
        let down = loss_and_grad(&probe, data, idx, w_fp, w_fn).0;
        probe.params[k] = base;
        numeric[k] = (up - down) / (T::lit(2.0) * h);
    }
    let diff = analytic.iter().zip(&numeric).fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()));
    let scale = analytic.iter().chain(&numeric).fold(T::zero(), |m, v| m.max(v.abs())).max(T::epsilon());
    diff / scale
}
