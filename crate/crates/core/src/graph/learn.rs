use rand::Rng;

use super::GraphInstance;
use crate::error::{Error, Result};
use crate::model::Hypothesis;
use crate::rng::trial_rng;
use crate::scalar::Scalar;

/// Conservative learner: positive exactly on the sampled positive nodes.
pub fn learn_graph_conservative<T: Scalar>(instance: &GraphInstance, sample: &[usize]) -> Hypothesis<T> {
    let mut labels = vec![false; instance.n()];
    for &u in sample {
        if instance.f_star[u] {
            labels[u] = true;
        }
    }
    Hypothesis::FiniteLabeling(labels)
}

fn membership(n: usize, sample: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; n];
    for &u in sample {
        seen[u] = true;
    }
    seen
}

fn covered_in(instance: &GraphInstance, x: usize, seen: &[bool]) -> bool {
    seen[x] || instance.graph.neighbors(x).iter().any(|&v| seen[v] && instance.f_star[v])
}

/// A positive node is covered when it, or one of its positive neighbours,
/// was sampled.
pub fn is_covered(instance: &GraphInstance, x: usize, sample: &[usize]) -> Result<bool> {
    if x >= instance.n() {
        return Err(Error::Argument(format!("node {x} outside graph")));
    }
    if !instance.f_star[x] {
        return Err(Error::Precondition(format!("node {x} is not a positive node")));
    }
    Ok(covered_in(instance, x, &membership(instance.n(), sample)))
}

/// Every positive node is covered.
pub fn all_covered(instance: &GraphInstance, sample: &[usize]) -> bool {
    let seen = membership(instance.n(), sample);
    (0..instance.n()).all(|x| !instance.f_star[x] || covered_in(instance, x, &seen))
}

/// Every negative node with a positive neighbour has a sampled positive
/// neighbour.
pub fn n_has_sampled_positive_neighbor(instance: &GraphInstance, sample: &[usize]) -> bool {
    let seen = membership(instance.n(), sample);
    instance
        .boundary_negatives()
        .into_iter()
        .all(|x| instance.graph.neighbors(x).iter().any(|&v| seen[v] && instance.f_star[v]))
}

fn log_bound(n: usize, delta: f64, c: f64, denom: f64) -> usize {
    let n = n as f64;
    (c * n * (n.ln() + (1.0 / delta).ln()) / denom).ceil().max(0.0) as usize
}

/// `ceil(c n (ln n + ln(1/delta)) / (d_min_plus + 1))`.
pub fn zero_error_sample_size(n: usize, d_min_plus: usize, delta: f64, c: f64) -> usize {
    log_bound(n, delta, c, (d_min_plus + 1) as f64)
}

/// `ceil(c n (ln n + ln(1/delta)) / d_min_n)`, and 0 when there is no
/// negative node with a positive neighbour.
pub fn enabling_sample_size(n: usize, d_min_n: Option<usize>, delta: f64, c: f64) -> usize {
    match d_min_n {
        None | Some(0) => 0,
        Some(d) => log_bound(n, delta, c, d as f64),
    }
}

/// Size for zero improvement and enabling loss together, with the
/// denominator `min(d_min_n, d_min_plus)`. `None` when that minimum is 0.
pub fn joint_sample_size(n: usize, d_min_plus: usize, d_min_n: Option<usize>, delta: f64, c: f64) -> Option<usize> {
    let d = d_min_n.map_or(d_min_plus, |dn| dn.min(d_min_plus));
    (d > 0).then(|| log_bound(n, delta, c, d as f64))
}

/// `m` i.i.d. uniform node draws.
pub fn sample_nodes<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Vec<usize> {
    (0..m).map(|_| rng.random_range(0..n)).collect()
}

/// Fraction of seeded trials in which some positive node stays uncovered.
pub fn coverage_failure_probability(instance: &GraphInstance, m: usize, n_trials: usize, rng_seed: u64) -> f64 {
    let failures = (0..n_trials)
        .filter(|&t| {
            let mut rng = trial_rng(rng_seed, t as u64);
            let s = sample_nodes(&mut rng, instance.n(), m);
            !all_covered(instance, &s)
        })
        .count();
    failures as f64 / n_trials.max(1) as f64
}
