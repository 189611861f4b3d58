use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::reach::{finite_targets, is_finite_map, reach, EvalOptions};
use super::{DistributionSpec, Hypothesis, ImprovementMap, Point};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stats::Estimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LossKind {
    Improvement,
    Strategic,
    Enabling,
}

/// Which branch of the reaction rule applies to an agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReactionCase {
    /// `h(x) = 1`: the agent stays.
    PositiveStays,
    /// `h(x) = 0` and no `h`-positive point is reachable.
    NegativeStays,
    /// `h(x) = 0` and the agent moves to an `h`-positive point.
    Moves,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReactionOutcome<T> {
    pub case: ReactionCase,
    pub moved: bool,
    pub loss_bit: bool,
    /// Reachable point realising the loss when the agent moved.
    pub witness: Option<Point<T>>,
}

pub fn improvement_loss<T: Scalar>(
    x: &Point<T>,
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
) -> Result<ReactionOutcome<T>> {
    improvement_loss_with(x, h, f_star, delta, &EvalOptions::default())
}

/// Improvement loss with adversarial tie-breaking: a moving agent counts as
/// an error if any reachable `h`-positive point is `f*`-negative.
pub fn improvement_loss_with<T: Scalar>(
    x: &Point<T>,
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
    opts: &EvalOptions,
) -> Result<ReactionOutcome<T>> {
    if h.predict(x) {
        return Ok(ReactionOutcome {
            case: ReactionCase::PositiveStays,
            moved: false,
            loss_bit: !f_star.predict(x),
            witness: None,
        });
    }
    let r = reach(x, h, f_star, delta, opts)?;
    if r.positive.is_none() {
        return Ok(ReactionOutcome {
            case: ReactionCase::NegativeStays,
            moved: false,
            loss_bit: f_star.predict(x),
            witness: None,
        });
    }
    Ok(ReactionOutcome {
        case: ReactionCase::Moves,
        moved: true,
        loss_bit: r.disagreement.is_some(),
        witness: r.disagreement,
    })
}

pub fn strategic_loss<T: Scalar>(
    x: &Point<T>,
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
) -> Result<bool> {
    strategic_loss_with(x, h, f_star, delta, &EvalOptions::default())
}

/// Loss judged against the agent's original label after it reacts.
pub fn strategic_loss_with<T: Scalar>(
    x: &Point<T>,
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
    opts: &EvalOptions,
) -> Result<bool> {
    let label = f_star.predict(x);
    if h.predict(x) {
        return Ok(!label);
    }
    let r = reach(x, h, f_star, delta, opts)?;
    Ok(if r.positive.is_some() { !label } else { label })
}

/// Whether the agent stays put under `g`: `g(x) = 1` or nothing reachable is
/// `g`-positive.
fn stays_under<T: Scalar>(x: &Point<T>, g: &Hypothesis<T>, delta: &ImprovementMap<T>) -> Result<bool> {
    if g.predict(x) {
        return Ok(true);
    }
    let Some(m) = delta.resolve(x) else { return Ok(true) };
    let targets = finite_targets(x, m)?.unwrap_or_default();
    Ok(!targets.iter().any(|p| g.predict(p)))
}

/// Enabling loss on finite domains: an `f*`-negative agent is charged when
/// its ability to move under `h` differs from its ability to move under `f*`.
pub fn enabling_loss<T: Scalar>(
    x: &Point<T>,
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
) -> Result<bool> {
    if let Some(m) = delta.resolve(x) {
        if !is_finite_map(m) {
            return Err(Error::EvaluationUnsupported { hypothesis: h.name(), map: m.name() });
        }
    }
    if f_star.predict(x) {
        return Ok(false);
    }
    Ok(stays_under(x, f_star, delta)? != stays_under(x, h, delta)?)
}

pub fn pointwise_loss<T: Scalar>(
    kind: LossKind,
    x: &Point<T>,
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
    opts: &EvalOptions,
) -> Result<bool> {
    match kind {
        LossKind::Improvement => Ok(improvement_loss_with(x, h, f_star, delta, opts)?.loss_bit),
        LossKind::Strategic => strategic_loss_with(x, h, f_star, delta, opts),
        LossKind::Enabling => enabling_loss(x, h, f_star, delta),
    }
}

/// Monte Carlo estimate of the population loss from `n_samples` draws.
#[allow(clippy::too_many_arguments)]
pub fn population_loss_mc<T: Scalar>(
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
    dist: &DistributionSpec<T>,
    n_samples: usize,
    kind: LossKind,
    rng_seed: u64,
) -> Result<Estimate> {
    population_loss_mc_with(h, f_star, delta, dist, n_samples, kind, rng_seed, &EvalOptions::default())
}

#[allow(clippy::too_many_arguments)]
pub fn population_loss_mc_with<T: Scalar>(
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
    dist: &DistributionSpec<T>,
    n_samples: usize,
    kind: LossKind,
    rng_seed: u64,
    opts: &EvalOptions,
) -> Result<Estimate> {
    if n_samples == 0 {
        return Err(Error::Argument("n_samples must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut bits = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let x = dist.sample(&mut rng);
        bits.push(if pointwise_loss(kind, &x, h, f_star, delta, opts)? { 1.0 } else { 0.0 });
    }
    Ok(Estimate::from_samples(bits))
}

/// Exact population loss on a finite support.
pub fn population_loss_exact<T: Scalar>(
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
    dist: &DistributionSpec<T>,
    kind: LossKind,
) -> Result<T> {
    let support =
        dist.support().ok_or(Error::EvaluationUnsupported { hypothesis: h.name(), map: "non-finite distribution" })?;
    let opts = EvalOptions::default();
    let mut total = T::zero();
    for (x, w) in support {
        if w > T::zero() && pointwise_loss(kind, &x, h, f_star, delta, &opts)? {
            total += w;
        }
    }
    Ok(total)
}
