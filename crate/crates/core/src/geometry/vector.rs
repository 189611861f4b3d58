//! Small dense-vector helpers on slices.

use crate::scalar::Scalar;

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

pub fn scale<T: Scalar>(a: &[T], s: T) -> Vec<T> {
    a.iter().map(|&x| x * s).collect()
}

/// `a + s * b`
pub fn axpy<T: Scalar>(a: &[T], s: T, b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x + s * y).collect()
}

/// Unit vector in the direction of `a`, or `None` for a (near) zero vector.
pub fn normalized<T: Scalar>(a: &[T]) -> Option<Vec<T>> {
    let n = norm(a);
    if n <= T::geom_tol() || !n.is_finite() {
        None
    } else {
        Some(scale(a, T::one() / n))
    }
}

/// Angle between two unit vectors, robust to rounding outside [-1, 1].
pub fn angle<T: Scalar>(a: &[T], b: &[T]) -> T {
    clamp_unit(dot(a, b)).acos()
}

pub fn clamp_unit<T: Scalar>(c: T) -> T {
    c.max(-T::one()).min(T::one())
}

/// Component of `u` orthogonal to the span of the orthonormal `basis`.
pub fn reject<T: Scalar>(u: &[T], basis: &[Vec<T>]) -> Vec<T> {
    let mut out = u.to_vec();
    for e in basis {
        let c = dot(&out, e);
        out = axpy(&out, -c, e);
    }
    out
}

/// Some unit vector orthogonal to the orthonormal `basis` (which must not
/// span the whole space).
pub fn any_orthogonal<T: Scalar>(basis: &[Vec<T>], d: usize) -> Option<Vec<T>> {
    (0..d).find_map(|i| {
        let mut e = vec![T::zero(); d];
        e[i] = T::one();
        let r = reject(&e, basis);
        if norm(&r) > T::lit(1e-6) {
            normalized(&r)
        } else {
            None
        }
    })
}

pub fn linf_dist<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| (x - y).abs()).fold(T::zero(), T::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let a = [3.0f64, 4.0];
        assert_eq!(norm(&a), 5.0);
        let u = normalized(&a).unwrap();
        assert!((u[0] - 0.6).abs() < 1e-15 && (u[1] - 0.8).abs() < 1e-15);
        assert!(normalized(&[0.0, 0.0]).is_none());
        let r = reject(&[1.0, 1.0, 0.0], &[vec![1.0, 0.0, 0.0]]);
        assert_eq!(r, vec![0.0, 1.0, 0.0]);
        let o = any_orthogonal(&[vec![1.0, 0.0]], 2).unwrap();
        assert!(dot(&o, &[1.0f64, 0.0]).abs() < 1e-15);
        assert!((angle(&[1.0, 0.0], &[0.0, 1.0]) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
