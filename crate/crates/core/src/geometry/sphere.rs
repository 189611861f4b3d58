//! Spherical caps on the unit sphere and linear minimisation over their
//! intersection.

use crate::geometry::vector::{any_orthogonal, axpy, dot, normalized, reject, scale};
use crate::scalar::Scalar;

/// `{y in S^{d-1} : <center, y> >= cos_radius}` with `center` a unit vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Cap<T> {
    pub center: Vec<T>,
    pub cos_radius: T,
}

impl<T: Scalar> Cap<T> {
    pub fn new(center: Vec<T>, cos_radius: T) -> Self {
        Cap { center, cos_radius }
    }

    /// Cap of angular radius `r` around `center`.
    pub fn angular(center: Vec<T>, r: T) -> Self {
        let c = if r >= T::PI() { -T::one() } else { r.cos() };
        Cap::new(center, c)
    }

    pub fn contains(&self, y: &[T]) -> bool {
        dot(&self.center, y) >= self.cos_radius - T::sphere_tol()
    }

    fn sin_radius(&self) -> T {
        let c = self.cos_radius.max(-T::one()).min(T::one());
        (T::one() - c * c).max(T::zero()).sqrt()
    }

    /// Both extreme points of `<u, .>` on the boundary circle.
    fn boundary_candidates(&self, u: &[T], out: &mut Vec<Vec<T>>) {
        if self.cos_radius > T::one() + T::sphere_tol() || self.cos_radius <= -T::one() {
            return;
        }
        let d = self.center.len();
        let basis = [self.center.clone()];
        let dir = normalized(&reject(u, &basis)).or_else(|| any_orthogonal(&basis, d));
        let Some(dir) = dir else { return };
        let base = scale(&self.center, self.cos_radius.min(T::one()));
        let s = self.sin_radius();
        out.push(axpy(&base, -s, &dir));
        out.push(axpy(&base, s, &dir));
    }
}

/// Points on both boundary circles that extremise `<u, .>`.
fn pair_candidates<T: Scalar>(a: &Cap<T>, b: &Cap<T>, u: &[T], out: &mut Vec<Vec<T>>) {
    let g = dot(&a.center, &b.center);
    let det = T::one() - g * g;
    if det < T::lit(1e-12) {
        return;
    }
    let (ca, cb) = (a.cos_radius, b.cos_radius);
    let alpha = (ca - g * cb) / det;
    let beta = (cb - g * ca) / det;
    let p = axpy(&scale(&a.center, alpha), beta, &b.center);
    let rest = T::one() - dot(&p, &p);
    if rest < -T::sphere_tol() {
        return;
    }
    let rest = rest.max(T::zero()).sqrt();
    let d = u.len();
    let e1 = a.center.clone();
    let Some(e2) = normalized(&reject(&b.center, std::slice::from_ref(&e1))) else { return };
    let basis = [e1, e2];
    let dir = normalized(&reject(u, &basis)).or_else(|| any_orthogonal(&basis, d));
    match dir {
        Some(dir) => {
            out.push(axpy(&p, -rest, &dir));
            out.push(axpy(&p, rest, &dir));
        }
        None => out.push(p),
    }
}

/// Minimum of `<u, y>` over the unit sphere intersected with `caps`, with a
/// minimiser. `None` when the intersection is empty.
///
/// The minimiser lies in the interior (then it is `-u/|u|`), on exactly one
/// boundary circle, or on the intersection of two circles; every stratum
/// contributes its extreme points as candidates. At most two caps are
/// supported.
pub fn min_linear<T: Scalar>(u: &[T], caps: &[Cap<T>]) -> Option<(T, Vec<T>)> {
    assert!(caps.len() <= 2, "at most two caps");
    let d = u.len();
    let mut cand: Vec<Vec<T>> = Vec::new();
    match normalized(u) {
        Some(v) => cand.push(scale(&v, -T::one())),
        None => {
            let mut e = vec![T::zero(); d];
            e[0] = T::one();
            cand.push(e);
        }
    }
    for c in caps {
        cand.push(c.center.clone());
        c.boundary_candidates(u, &mut cand);
    }
    if caps.len() == 2 {
        pair_candidates(&caps[0], &caps[1], u, &mut cand);
    }
    cand.into_iter()
        .filter(|y| caps.iter().all(|c| c.contains(y)))
        .map(|y| (dot(u, &y), y))
        .min_by(|a, b| a.0.partial_cmp(&b.0).expect("finite inner products"))
}

/// Maximum of `<u, y>` over the same set.
pub fn max_linear<T: Scalar>(u: &[T], caps: &[Cap<T>]) -> Option<(T, Vec<T>)> {
    let neg = scale(u, -T::one());
    min_linear(&neg, caps).map(|(v, y)| (-v, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
            if let Some(u) = normalized(&v) {
                return u;
            }
        }
    }

    #[test]
    fn single_cap_closed_form() {
        let c = Cap::angular(vec![0.0, 0.0, 1.0], 0.3);
        let (v, _) = min_linear(&[0.0, 0.0, 1.0], std::slice::from_ref(&c)).unwrap();
        assert!((v - 0.3f64.cos()).abs() < 1e-12);
        let (v, y) = max_linear(&[1.0, 0.0, 0.0], &[c]).unwrap();
        assert!((v - 0.3f64.sin()).abs() < 1e-12);
        assert!((dot(&y, &y) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pts: Vec<Vec<f64>> = (0..100_000).map(|_| random_unit(&mut rng, 3)).collect();
        for _ in 0..40 {
            let caps = vec![
                Cap::angular(random_unit(&mut rng, 3), rng.random_range(0.3..2.0)),
                Cap::angular(random_unit(&mut rng, 3), rng.random_range(0.3..2.0)),
            ];
            let u = random_unit(&mut rng, 3);
            let brute = pts
                .iter()
                .filter(|y| caps.iter().all(|c| c.contains(y)))
                .map(|y| dot(&u, y))
                .fold(f64::INFINITY, f64::min);
            match min_linear(&u, &caps) {
                None => assert!(brute.is_infinite()),
                Some((v, y)) => {
                    assert!(caps.iter().all(|c| c.contains(&y)));
                    assert!(v <= brute + 1e-12, "candidate {v} above sampled {brute}");
                    if brute.is_finite() {
                        assert!(brute - v < 0.05);
                    }
                }
            }
        }
    }

    #[test]
    fn disjoint_caps_are_empty() {
        let a = Cap::angular(vec![1.0, 0.0, 0.0], 0.2);
        let b = Cap::angular(vec![-1.0, 0.0, 0.0], 0.2);
        assert!(min_linear(&[0.0, 1.0, 0.0], &[a, b]).is_none());
    }

    #[test]
    fn circle_in_two_dimensions() {
        // arcs on S^1: both boundary points must be considered
        let a = Cap::angular(vec![1.0, 0.0], 0.5);
        let (v, _) = min_linear(&[0.0, 1.0], &[a]).unwrap();
        assert!((v + 0.5f64.sin()).abs() < 1e-12);
    }
}
