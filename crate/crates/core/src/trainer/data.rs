use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::sample_sphere;
use crate::rng::{derive_seed, trial_rng};
use crate::scalar::Scalar;

/// Two Gaussian classes with unit isotropic noise whose centres sit at
/// `+-separation / 2` along a random unit direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthParams {
    pub d: usize,
    pub separation: f64,
    pub n: usize,
    /// Probability of drawing a positive.
    pub balance: f64,
}

impl SynthParams {
    pub fn new(d: usize, separation: f64, n: usize) -> Self {
        SynthParams { d, separation, n, balance: 0.5 }
    }
}

/// Ground truth used to judge where agents end up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FStarRule {
    /// The generator's Bayes rule: the side of the mid-hyperplane.
    #[default]
    Generator,
    /// Everything negative.
    ConstantZero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticDataset<T> {
    pub params: SynthParams,
    pub seed: u64,
    pub direction: Vec<T>,
    /// Row-major `n x d`.
    pub features: Vec<T>,
    pub labels: Vec<bool>,
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

impl<T: Scalar> SyntheticDataset<T> {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn d(&self) -> usize {
        self.params.d
    }

    pub fn row(&self, i: usize) -> &[T] {
        let d = self.d();
        &self.features[i * d..(i + 1) * d]
    }

    /// Bayes rule of the generator. With zero separation the rule is a tie
    /// everywhere; the mid-hyperplane is kept as a convention.
    pub fn f_star(&self, x: &[T]) -> bool {
        crate::geometry::vector::dot(&self.direction, x) >= T::zero()
    }

    pub fn judge(&self, rule: FStarRule, x: &[T]) -> bool {
        match rule {
            FStarRule::Generator => self.f_star(x),
            FStarRule::ConstantZero => false,
        }
    }
}

/// Deterministic in `(params, seed)`. With positive separation a draw is
/// kept only when its class agrees with the Bayes rule, so labels equal the
/// ground truth; with zero separation labels are independent of features.
pub fn generate_synthetic<T: Scalar>(params: SynthParams, seed: u64) -> Result<SyntheticDataset<T>> {
    if params.d < 2 {
        return Err(Error::Argument("synthetic data needs d >= 2".into()));
    }
    if !(params.separation >= 0.0) || !params.separation.is_finite() {
        return Err(Error::Argument("separation must be finite and nonnegative".into()));
    }
    if !(params.balance > 0.0 && params.balance < 1.0) {
        return Err(Error::Argument("balance must lie in (0, 1)".into()));
    }
    if params.n < 2 {
        return Err(Error::Argument("need at least two examples".into()));
    }
    let mut rng = trial_rng(derive_seed(seed, "synthetic"), 0);
    let u: Vec<f64> = sample_sphere(&mut rng, params.d);
    let half = params.separation / 2.0;
    let mut features = Vec::with_capacity(params.n * params.d);
    let mut labels = Vec::with_capacity(params.n);
    while labels.len() < params.n {
        let y = rng.random_bool(params.balance);
        let sign = if y { half } else { -half };
        let x: Vec<f64> = u.iter().map(|&ui| sign * ui + rng.sample::<f64, _>(StandardNormal)).collect();
        let side = x.iter().zip(&u).map(|(a, b)| a * b).sum::<f64>() >= 0.0;
        if params.separation > 0.0 && side != y {
            continue;
        }
        features.extend(x.into_iter().map(T::lit));
        labels.push(y);
    }
    let mut order: Vec<usize> = (0..params.n).collect();
    order.shuffle(&mut trial_rng(derive_seed(seed, "split"), 0));
    let n_train = (params.n as f64 * 0.7).round() as usize;
    let mut train = order[..n_train].to_vec();
    let mut test = order[n_train..].to_vec();
    train.sort_unstable();
    test.sort_unstable();
    Ok(SyntheticDataset { params, seed, direction: u.into_iter().map(T::lit).collect(), features, labels, train, test })
}
