use rand::Rng;
use rand_distr::StandardNormal;

use super::Point;
use crate::error::{Error, Result};
use crate::geometry::vector::normalized;
use crate::scalar::Scalar;

/// Data distribution over the instance space.
#[derive(Debug, Clone, PartialEq)]
pub enum DistributionSpec<T> {
    UniformInterval {
        lo: T,
        hi: T,
    },
    UniformBox {
        d: usize,
    },
    UniformSphere {
        d: usize,
    },
    /// Uniform over graph nodes `0..n`.
    UniformNodes {
        n: usize,
    },
    FiniteDiscrete {
        points: Vec<Point<T>>,
        weights: Vec<T>,
    },
    /// Balanced mixture of two isotropic Gaussians.
    GaussianBlobs {
        centers: [Vec<T>; 2],
        scale: T,
    },
}

impl<T: Scalar> DistributionSpec<T> {
    pub fn unit_interval() -> Self {
        DistributionSpec::UniformInterval { lo: T::zero(), hi: T::one() }
    }

    pub fn finite_discrete(points: Vec<Point<T>>, weights: Vec<T>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::LengthMismatch { left: points.len(), right: weights.len() });
        }
        if points.is_empty() {
            return Err(Error::Argument("empty support".into()));
        }
        if weights.iter().any(|w| !(*w >= T::zero())) {
            return Err(Error::Argument("weights must be nonnegative".into()));
        }
        let total: T = weights.iter().copied().sum();
        let slack = T::geom_tol().max(T::epsilon() * T::from_count(points.len()));
        if (total - T::one()).abs() > slack {
            return Err(Error::Argument(format!("weights sum to {total}, not 1")));
        }
        Ok(DistributionSpec::FiniteDiscrete { points, weights })
    }

    /// Uniform weights over `points`.
    pub fn uniform_over(points: Vec<Point<T>>) -> Result<Self> {
        let w = T::one() / T::from_count(points.len().max(1));
        let weights = vec![w; points.len()];
        Self::finite_discrete(points, weights)
    }

    /// Support with weights, for finite distributions.
    pub fn support(&self) -> Option<Vec<(Point<T>, T)>> {
        match self {
            DistributionSpec::UniformNodes { n } => {
                let w = T::one() / T::from_count(*n);
                Some((0..*n).map(|i| (Point::from_id(i), w)).collect())
            }
            DistributionSpec::FiniteDiscrete { points, weights } => {
                Some(points.iter().cloned().zip(weights.iter().copied()).collect())
            }
            _ => None,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point<T> {
        match self {
            DistributionSpec::UniformInterval { lo, hi } => {
                let u = T::lit(rng.random::<f64>());
                Point::scalar(*lo + u * (*hi - *lo))
            }
            DistributionSpec::UniformBox { d } => {
                Point::from_vec((0..*d).map(|_| T::lit(rng.random::<f64>())).collect())
            }
            DistributionSpec::UniformSphere { d } => Point::from_vec(sample_sphere(rng, *d)),
            DistributionSpec::UniformNodes { n } => Point::from_id(rng.random_range(0..*n)),
            DistributionSpec::FiniteDiscrete { points, weights } => {
                let u = T::lit(rng.random::<f64>());
                let mut acc = T::zero();
                for (p, &w) in points.iter().zip(weights) {
                    acc += w;
                    if u < acc {
                        return p.clone();
                    }
                }
                // rounding left a sliver above the last cumulative weight
                let last = weights.iter().rposition(|w| *w > T::zero()).unwrap_or(0);
                points[last].clone()
            }
            DistributionSpec::GaussianBlobs { centers, scale } => {
                let c = &centers[usize::from(rng.random::<bool>())];
                Point::from_vec(c.iter().map(|&m| m + *scale * T::lit(rng.sample::<f64, _>(StandardNormal))).collect())
            }
        }
    }
}

/// Uniform point on the unit sphere in `R^d`.
pub fn sample_sphere<T: Scalar, R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<T> {
    loop {
        let v: Vec<T> = (0..d).map(|_| T::lit(rng.sample::<f64, _>(StandardNormal))).collect();
        if let Some(u) = normalized(&v) {
            return u;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;

    #[test]
    fn weights_validated() {
        let pts = vec![Point::<f64>::from_id(0), Point::from_id(1)];
        assert!(DistributionSpec::finite_discrete(pts.clone(), vec![0.5, 0.6]).is_err());
        assert!(DistributionSpec::finite_discrete(pts.clone(), vec![-0.5, 1.5]).is_err());
        assert!(DistributionSpec::finite_discrete(pts, vec![0.25, 0.75]).is_ok());
    }

    #[test]
    fn discrete_sampling_frequencies() {
        let pts = (0..3).map(Point::<f64>::from_id).collect();
        let d = DistributionSpec::finite_discrete(pts, vec![0.2, 0.0, 0.8]).unwrap();
        let mut rng = trial_rng(1, 0);
        let mut counts = [0usize; 3];
        for _ in 0..20_000 {
            counts[d.sample(&mut rng).as_id().unwrap()] += 1;
        }
        assert_eq!(counts[1], 0);
        assert!((counts[0] as f64 / 20_000.0 - 0.2).abs() < 0.02);
    }

    #[test]
    fn sphere_points_are_unit() {
        let mut rng = trial_rng(2, 0);
        let d = DistributionSpec::<f64>::UniformSphere { d: 4 };
        for _ in 0..100 {
            assert!(d.sample(&mut rng).on_sphere());
        }
    }
}
