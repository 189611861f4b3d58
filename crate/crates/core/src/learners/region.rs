use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::AaBox;
use crate::model::reach::{reach, EvalOptions};
use crate::model::{DistributionSpec, Hypothesis, ImprovementMap, Point};
use crate::scalar::Scalar;
use crate::stats::Estimate;

/// Probability mass of the improvement region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImprovementRegionReport {
    pub mass: f64,
    pub closed_form: Option<f64>,
    pub mc_stderr: f64,
}

/// `h(x) = 0` and some reachable point is positive under both `h` and `f*`.
pub fn in_improvement_region<T: Scalar>(
    x: &Point<T>,
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
) -> Result<bool> {
    if h.predict(x) {
        return Ok(false);
    }
    Ok(reach(x, h, f_star, delta, &EvalOptions::default())?.agreement.is_some())
}

/// Closed form of the improvement-region mass where one is known:
/// thresholds under an interval ball on a uniform interval, and rectangles
/// under an l-infinity ball on the uniform unit box. Both require the
/// positive region of `h` to sit inside that of `f*`.
pub fn improvement_region_closed_form<T: Scalar>(
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
    dist: &DistributionSpec<T>,
) -> Option<T> {
    match (h, f_star, delta, dist) {
        (
            Hypothesis::Threshold { t },
            Hypothesis::Threshold { t: ts },
            ImprovementMap::IntervalBall { r, clip: None },
            DistributionSpec::UniformInterval { lo, hi },
        ) if ts <= t => {
            let strip = t.min(*hi) - (*t - *r).max(*lo);
            Some(strip.max(T::zero()) / (*hi - *lo))
        }
        (
            Hypothesis::Rectangle { a, b },
            Hypothesis::Rectangle { a: fa, b: fb },
            ImprovementMap::LinfBall { r },
            DistributionSpec::UniformBox { d },
        ) if a.len() == *d => {
            let inner = AaBox::new(a.clone(), b.clone());
            if !inner.is_subset_of(&AaBox::new(fa.clone(), fb.clone())) {
                return None;
            }
            let grown = AaBox::around(
                &a.iter().zip(b).map(|(&x, &y)| (x + y) / T::lit(2.0)).collect::<Vec<_>>(),
                &a.iter().zip(b).map(|(&x, &y)| (y - x) / T::lit(2.0) + *r).collect::<Vec<_>>(),
            );
            Some(grown.unit_volume() - inner.unit_volume())
        }
        _ => None,
    }
}

/// Monte Carlo mass of the improvement region, with the closed form when
/// available.
pub fn improvement_region_mass<T: Scalar>(
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
    dist: &DistributionSpec<T>,
    n_samples: usize,
    rng_seed: u64,
) -> Result<ImprovementRegionReport> {
    if n_samples == 0 {
        return Err(Error::Argument("n_samples must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut hits = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let x = dist.sample(&mut rng);
        hits.push(if in_improvement_region(&x, h, f_star, delta)? { 1.0 } else { 0.0 });
    }
    let e = Estimate::from_samples(hits);
    Ok(ImprovementRegionReport {
        mass: e.mean,
        closed_form: improvement_region_closed_form(h, f_star, delta, dist).map(Scalar::as_f64),
        mc_stderr: e.stderr,
    })
}
