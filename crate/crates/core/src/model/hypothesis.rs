use serde::{Deserialize, Serialize};

use super::Point;
use crate::error::{Error, Result};
use crate::geometry::sphere::Cap;
use crate::geometry::vector::{dot, linf_dist, normalized};
use crate::geometry::{AaBox, Interval, IntervalSet};
use crate::scalar::Scalar;

/// Binary classifier over the instance space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Hypothesis<T> {
    /// `x >= t` on the line.
    Threshold {
        t: T,
    },
    /// Closed box `[a, b]`.
    Rectangle {
        a: Vec<T>,
        b: Vec<T>,
    },
    /// `<w, x> >= 0` with `w` a unit vector.
    HomogeneousHalfspace {
        w: Vec<T>,
    },
    /// `<w, x> >= bias` with `w` a unit vector.
    AffineHalfspace {
        w: Vec<T>,
        bias: T,
    },
    UnionOfIntervals(IntervalSet<T>),
    /// Label per node id; ids past the end are negative.
    FiniteLabeling(Vec<bool>),
    SingletonPositive(Point<T>),
    ConstantZero,
    ConstantOne,
}

impl<T: Scalar> Hypothesis<T> {
    pub fn threshold(t: T) -> Self {
        Hypothesis::Threshold { t }
    }

    pub fn rectangle(a: Vec<T>, b: Vec<T>) -> Result<Self> {
        if a.len() != b.len() || a.is_empty() {
            return Err(Error::Argument("rectangle corners must share a positive dimension".into()));
        }
        if a.iter().zip(&b).any(|(x, y)| !(x <= y)) {
            return Err(Error::Argument("rectangle needs a_i <= b_i".into()));
        }
        Ok(Hypothesis::Rectangle { a, b })
    }

    pub fn homogeneous(w: &[T]) -> Result<Self> {
        let w = normalized(w).ok_or_else(|| Error::Argument("zero normal vector".into()))?;
        Ok(Hypothesis::HomogeneousHalfspace { w })
    }

    pub fn affine(w: &[T], bias: T) -> Result<Self> {
        let w = normalized(w).ok_or_else(|| Error::Argument("zero normal vector".into()))?;
        Ok(Hypothesis::AffineHalfspace { w, bias })
    }

    pub fn intervals(parts: Vec<Interval<T>>) -> Result<Self> {
        Ok(Hypothesis::UnionOfIntervals(IntervalSet::from_disjoint(parts)?))
    }

    /// Labeling positive exactly on `ids` over `n` nodes.
    pub fn positive_on(n: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut labels = vec![false; n];
        for i in ids {
            labels[i] = true;
        }
        Hypothesis::FiniteLabeling(labels)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Hypothesis::Threshold { .. } => "Threshold",
            Hypothesis::Rectangle { .. } => "Rectangle",
            Hypothesis::HomogeneousHalfspace { .. } => "HomogeneousHalfspace",
            Hypothesis::AffineHalfspace { .. } => "AffineHalfspace",
            Hypothesis::UnionOfIntervals(_) => "UnionOfIntervals",
            Hypothesis::FiniteLabeling(_) => "FiniteLabeling",
            Hypothesis::SingletonPositive(_) => "SingletonPositive",
            Hypothesis::ConstantZero => "ConstantZero",
            Hypothesis::ConstantOne => "ConstantOne",
        }
    }

    pub fn predict(&self, x: &Point<T>) -> bool {
        let tol = T::geom_tol();
        match self {
            Hypothesis::Threshold { t } => x.x() >= *t - tol,
            Hypothesis::Rectangle { a, b } => {
                x.dim() == a.len()
                    && x.coords.iter().zip(a.iter().zip(b)).all(|(&v, (&lo, &hi))| v >= lo - tol && v <= hi + tol)
            }
            Hypothesis::HomogeneousHalfspace { w } => dot(w, &x.coords) >= -tol,
            Hypothesis::AffineHalfspace { w, bias } => dot(w, &x.coords) >= *bias - tol,
            Hypothesis::UnionOfIntervals(s) => s.contains(x.x()),
            Hypothesis::FiniteLabeling(labels) => x.as_id().and_then(|i| labels.get(i).copied()).unwrap_or(false),
            Hypothesis::SingletonPositive(p) => p.dim() == x.dim() && linf_dist(&p.coords, &x.coords) <= tol,
            Hypothesis::ConstantZero => false,
            Hypothesis::ConstantOne => true,
        }
    }

    /// Positive region as a union of intervals, for families living on the line.
    pub fn positive_intervals(&self) -> Option<IntervalSet<T>> {
        match self {
            Hypothesis::Threshold { t } => Some(IntervalSet::single(Interval::ray_up(*t))),
            Hypothesis::Rectangle { a, b } if a.len() == 1 => Some(IntervalSet::single(Interval::closed(a[0], b[0]))),
            Hypothesis::UnionOfIntervals(s) => Some(s.clone()),
            Hypothesis::SingletonPositive(p) if p.dim() == 1 => Some(IntervalSet::single(Interval::point(p.x()))),
            Hypothesis::ConstantZero => Some(IntervalSet::empty()),
            Hypothesis::ConstantOne => Some(IntervalSet::single(Interval::real_line())),
            _ => None,
        }
    }

    /// Positive region as a closed box in dimension `d`.
    pub fn positive_box(&self, d: usize) -> Option<AaBox<T>> {
        match self {
            Hypothesis::Rectangle { a, b } if a.len() == d => Some(AaBox::new(a.clone(), b.clone())),
            Hypothesis::Threshold { t } if d == 1 => Some(AaBox::new(vec![*t], vec![T::infinity()])),
            Hypothesis::SingletonPositive(p) if p.dim() == d => Some(AaBox::point(&p.coords)),
            Hypothesis::ConstantZero => Some(AaBox::new(vec![T::infinity(); d], vec![T::neg_infinity(); d])),
            Hypothesis::ConstantOne => Some(AaBox::everything(d)),
            _ => None,
        }
    }

    /// Positive region as a spherical cap in dimension `d`. The empty region
    /// is encoded by an unsatisfiable cap.
    pub fn positive_cap(&self, d: usize) -> Option<Cap<T>> {
        let e1 = || {
            let mut e = vec![T::zero(); d];
            e[0] = T::one();
            e
        };
        match self {
            Hypothesis::HomogeneousHalfspace { w } if w.len() == d => Some(Cap::new(w.clone(), T::zero())),
            Hypothesis::AffineHalfspace { w, bias } if w.len() == d => Some(Cap::new(w.clone(), *bias)),
            Hypothesis::ConstantZero => Some(Cap::new(e1(), T::lit(2.0))),
            Hypothesis::ConstantOne => Some(Cap::new(e1(), -T::one())),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predictions() {
        let p = |x: f64| Point::scalar(x);
        assert!(Hypothesis::threshold(0.5).predict(&p(0.5)));
        assert!(!Hypothesis::threshold(0.5).predict(&p(0.49)));
        let r = Hypothesis::rectangle(vec![0.2, 0.3], vec![0.5, 0.7]).unwrap();
        assert!(r.predict(&Point::from_vec(vec![0.2, 0.7])));
        assert!(!r.predict(&Point::from_vec(vec![0.1, 0.5])));
        assert!(Hypothesis::<f64>::rectangle(vec![0.5], vec![0.4]).is_err());
        let f = Hypothesis::<f64>::positive_on(4, [1, 3]);
        assert!(f.predict(&Point::from_id(3)) && !f.predict(&Point::from_id(0)));
        assert!(!f.predict(&Point::from_id(9)));
        let h = Hypothesis::homogeneous(&[0.0, 0.0, 2.0]).unwrap();
        assert!(h.predict(&Point::from_vec(vec![1.0, 0.0, 0.0])));
        let s = Hypothesis::SingletonPositive(Point::from_vec(vec![0.3, 0.4]));
        assert!(s.predict(&Point::from_vec(vec![0.3, 0.4])));
    }
}
