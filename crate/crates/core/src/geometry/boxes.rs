//! Closed axis-aligned boxes, possibly unbounded or degenerate.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AaBox<T> {
    pub lo: Vec<T>,
    pub hi: Vec<T>,
}

impl<T: Scalar> AaBox<T> {
    pub fn new(lo: Vec<T>, hi: Vec<T>) -> Self {
        assert_eq!(lo.len(), hi.len(), "box corners differ in dimension");
        AaBox { lo, hi }
    }

    pub fn everything(d: usize) -> Self {
        Self::new(vec![T::neg_infinity(); d], vec![T::infinity(); d])
    }

    pub fn unit(d: usize) -> Self {
        Self::new(vec![T::zero(); d], vec![T::one(); d])
    }

    pub fn point(p: &[T]) -> Self {
        Self::new(p.to_vec(), p.to_vec())
    }

    /// `{y : |y_i - c_i| <= r_i}`
    pub fn around(c: &[T], radii: &[T]) -> Self {
        Self::new(
            c.iter().zip(radii).map(|(&x, &r)| x - r).collect(),
            c.iter().zip(radii).map(|(&x, &r)| x + r).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        let tol = T::geom_tol();
        self.lo.iter().zip(&self.hi).any(|(&l, &h)| !(l <= h + tol))
    }

    pub fn contains(&self, x: &[T]) -> bool {
        let tol = T::geom_tol();
        x.len() == self.dim()
            && x.iter().zip(self.lo.iter().zip(&self.hi)).all(|(&v, (&l, &h))| v >= l - tol && v <= h + tol)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self::new(
            self.lo.iter().zip(&other.lo).map(|(&a, &b)| a.max(b)).collect(),
            self.hi.iter().zip(&other.hi).map(|(&a, &b)| a.min(b)).collect(),
        )
    }

    /// Containment with tolerance; an empty box is contained in anything.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        if self.is_empty() {
            return true;
        }
        let tol = T::geom_tol();
        (0..self.dim()).all(|i| self.lo[i] >= other.lo[i] - tol && self.hi[i] <= other.hi[i] + tol)
    }

    /// Representative point (clamped centre) of a nonempty box.
    pub fn witness(&self) -> Option<Vec<T>> {
        if self.is_empty() {
            return None;
        }
        Some(
            self.lo
                .iter()
                .zip(&self.hi)
                .map(|(&l, &h)| {
                    let (l, h) = if l > h { (h, h) } else { (l, h) };
                    match (l.is_finite(), h.is_finite()) {
                        (true, true) => (l + h) / T::lit(2.0),
                        (true, false) => l + T::one(),
                        (false, true) => h - T::one(),
                        (false, false) => T::zero(),
                    }
                })
                .collect(),
        )
    }

    /// A point of `self` lying outside `other`, if one exists.
    pub fn witness_outside(&self, other: &Self) -> Option<Vec<T>> {
        let mut y = self.witness()?;
        let tol = T::geom_tol();
        for i in 0..self.dim() {
            if self.lo[i] < other.lo[i] - tol {
                y[i] = self.lo[i];
                return Some(y);
            }
            if self.hi[i] > other.hi[i] + tol {
                y[i] = self.hi[i];
                return Some(y);
            }
        }
        None
    }

    /// Lebesgue volume of the part inside `[0,1]^d`.
    pub fn unit_volume(&self) -> T {
        if self.is_empty() {
            return T::zero();
        }
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(&l, &h)| (h.min(T::one()) - l.max(T::zero())).max(T::zero()))
            .fold(T::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn containment_and_witnesses() {
        let f = AaBox::new(vec![0.1, 0.1], vec![0.9, 0.9]);
        let r = AaBox::around(&[0.5, 0.95], &[0.1, 0.1]);
        assert!(!r.is_subset_of(&f));
        let w = r.witness_outside(&f).unwrap();
        assert!(r.contains(&w) && !f.contains(&w));
        let inner = AaBox::around(&[0.5, 0.5], &[0.1, 0.1]);
        assert!(inner.is_subset_of(&f));
        assert!(inner.witness_outside(&f).is_none());
        assert!((AaBox::<f64>::around(&[0.0, 0.0], &[0.5, 0.5]).unit_volume() - 0.25).abs() < 1e-15);
        assert!(AaBox::new(vec![0.5], vec![0.4]).is_empty());
    }
}
