//! Intervals on the real line with per-endpoint open/closed flags.
//!
//! Endpoint comparisons use the absolute tolerance [`Scalar::geom_tol`]: a
//! closed endpoint admits points up to `tol` outside it, an open endpoint
//! excludes points up to `tol` inside it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T, lo_closed: bool, hi_closed: bool) -> Self {
        // infinite ends are never closed
        Interval { lo, hi, lo_closed: lo_closed && lo.is_finite(), hi_closed: hi_closed && hi.is_finite() }
    }

    pub fn closed(lo: T, hi: T) -> Self {
        Self::new(lo, hi, true, true)
    }

    pub fn open(lo: T, hi: T) -> Self {
        Self::new(lo, hi, false, false)
    }

    /// `[lo, hi)`
    pub fn closed_open(lo: T, hi: T) -> Self {
        Self::new(lo, hi, true, false)
    }

    /// `(lo, hi]`
    pub fn open_closed(lo: T, hi: T) -> Self {
        Self::new(lo, hi, false, true)
    }

    pub fn point(x: T) -> Self {
        Self::closed(x, x)
    }

    /// `[t, +inf)`
    pub fn ray_up(t: T) -> Self {
        Self::new(t, T::infinity(), true, false)
    }

    pub fn real_line() -> Self {
        Self::new(T::neg_infinity(), T::infinity(), false, false)
    }

    fn effective_lo(&self) -> T {
        let tol = T::geom_tol();
        if self.lo_closed {
            self.lo - tol
        } else {
            self.lo + tol
        }
    }

    fn effective_hi(&self) -> T {
        let tol = T::geom_tol();
        if self.hi_closed {
            self.hi + tol
        } else {
            self.hi - tol
        }
    }

    pub fn contains(&self, x: T) -> bool {
        let lo_ok = if self.lo_closed { x >= self.effective_lo() } else { x > self.effective_lo() };
        let hi_ok = if self.hi_closed { x <= self.effective_hi() } else { x < self.effective_hi() };
        lo_ok && hi_ok
    }

    pub fn is_empty(&self) -> bool {
        let (l, h) = (self.effective_lo(), self.effective_hi());
        if self.lo_closed && self.hi_closed {
            !(l <= h)
        } else {
            !(l < h)
        }
    }

    /// A point inside the interval, if any.
    pub fn witness(&self) -> Option<T> {
        if self.is_empty() {
            return None;
        }
        let (l, h) = (self.effective_lo(), self.effective_hi());
        let x = match (l.is_finite(), h.is_finite()) {
            (true, true) => {
                if self.lo_closed && self.hi_closed && self.lo <= self.hi {
                    (self.lo + self.hi) / T::lit(2.0)
                } else {
                    (l + h) / T::lit(2.0)
                }
            }
            (false, true) => h - T::one(),
            (true, false) => l + T::one(),
            (false, false) => T::zero(),
        };
        Some(x)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo, self.lo_closed)
        } else if other.lo > self.lo {
            (other.lo, other.lo_closed)
        } else {
            (self.lo, self.lo_closed && other.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (self.hi, self.hi_closed)
        } else if other.hi < self.hi {
            (other.hi, other.hi_closed)
        } else {
            (self.hi, self.hi_closed && other.hi_closed)
        };
        Interval::new(lo, hi, lo_closed, hi_closed)
    }

    /// Lebesgue measure of the part inside `[a, b]`.
    pub fn length_within(&self, a: T, b: T) -> T {
        let lo = if self.lo > a { self.lo } else { a };
        let hi = if self.hi < b { self.hi } else { b };
        if hi > lo {
            hi - lo
        } else {
            T::zero()
        }
    }
}

/// Finite union of pairwise disjoint intervals, sorted by left endpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalSet<T> {
    parts: Vec<Interval<T>>,
}

impl<T: Scalar> IntervalSet<T> {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn single(iv: Interval<T>) -> Self {
        Self::from_disjoint_unchecked(vec![iv])
    }

    /// Validates that the intervals are sorted and pairwise disjoint.
    pub fn from_disjoint(parts: Vec<Interval<T>>) -> Result<Self> {
        for iv in &parts {
            if iv.lo.is_nan() || iv.hi.is_nan() {
                return Err(Error::Argument("interval endpoint is NaN".into()));
            }
            if iv.lo > iv.hi {
                return Err(Error::Argument(format!("interval with lo {} > hi {}", iv.lo, iv.hi)));
            }
        }
        for w in parts.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let touching = a.hi == b.lo && a.hi_closed && b.lo_closed;
            if a.hi > b.lo || touching {
                return Err(Error::Argument("intervals must be sorted and pairwise disjoint".into()));
            }
        }
        Ok(Self::from_disjoint_unchecked(parts))
    }

    fn from_disjoint_unchecked(parts: Vec<Interval<T>>) -> Self {
        IntervalSet { parts: parts.into_iter().filter(|iv| !iv.is_empty()).collect() }
    }

    pub fn parts(&self) -> &[Interval<T>] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: T) -> bool {
        self.parts.iter().any(|iv| iv.contains(x))
    }

    pub fn witness(&self) -> Option<T> {
        self.parts.iter().find_map(Interval::witness)
    }

    pub fn intersect_interval(&self, other: &Interval<T>) -> Self {
        Self::from_disjoint_unchecked(self.parts.iter().map(|iv| iv.intersect(other)).collect())
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                let c = a.intersect(b);
                if !c.is_empty() {
                    out.push(c);
                }
            }
        }
        out.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("finite or infinite endpoints"));
        IntervalSet { parts: out }
    }

    /// Complement within the real line.
    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut lo = T::neg_infinity();
        let mut lo_closed = false;
        for iv in &self.parts {
            out.push(Interval::new(lo, iv.lo, lo_closed, !iv.lo_closed));
            lo = iv.hi;
            lo_closed = !iv.hi_closed;
        }
        out.push(Interval::new(lo, T::infinity(), lo_closed, false));
        Self::from_disjoint_unchecked(out)
    }

    /// Total length inside `[a, b]`.
    pub fn length_within(&self, a: T, b: T) -> T {
        self.parts.iter().map(|iv| iv.length_within(a, b)).sum()
    }

    /// Finite endpoints of all parts.
    pub fn endpoints(&self) -> impl Iterator<Item = T> + '_ {
        self.parts.iter().flat_map(|iv| [iv.lo, iv.hi]).filter(|x| x.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_and_closed_endpoints() {
        let iv = Interval::closed_open(0.25, 0.5);
        assert!(iv.contains(0.25));
        assert!(!iv.contains(0.5));
        assert!(iv.contains(0.4999));
        assert!(Interval::open(0.3, 0.3).is_empty());
        assert!(!Interval::point(0.3).is_empty());
        assert_eq!(Interval::point(0.3).witness(), Some(0.3));
    }

    #[test]
    fn intersection_keeps_stricter_flag() {
        let a = Interval::closed(0.0, 1.0);
        let b = Interval::open(0.0, 2.0);
        let c = a.intersect(&b);
        assert!(!c.lo_closed && c.hi_closed);
        assert_eq!((c.lo, c.hi), (0.0, 1.0));
        // [0.55, inf) ∩ [0.4, 0.6]
        let r = Interval::ray_up(0.55).intersect(&Interval::closed(0.4, 0.6));
        assert_eq!((r.lo, r.hi), (0.55, 0.6));
    }

    #[test]
    fn complement_of_two_intervals() {
        let s = IntervalSet::from_disjoint(vec![Interval::closed_open(0.25, 0.5), Interval::open_closed(0.5, 0.75)])
            .unwrap();
        let c = s.complement();
        assert!(c.contains(0.5));
        assert!(c.contains(0.1));
        assert!(c.contains(0.9));
        assert!(!c.contains(0.3));
        assert!(!c.contains(0.25));
        assert!(!c.contains(0.75));
        assert_eq!(c.parts().len(), 3);
        let w = s.intersect(&c);
        assert!(w.is_empty());
    }

    #[test]
    fn rejects_overlap() {
        let r = IntervalSet::from_disjoint(vec![Interval::closed(0.0, 0.5), Interval::closed(0.5, 1.0)]);
        assert!(r.is_err());
        let ok = IntervalSet::from_disjoint(vec![Interval::closed_open(0.0, 0.5), Interval::closed(0.5, 1.0)]);
        assert!(ok.is_ok());
    }

    #[test]
    fn lengths() {
        let s = IntervalSet::from_disjoint(vec![Interval::closed(-1.0, 0.2), Interval::ray_up(0.9)]).unwrap();
        assert!((s.length_within(0.0, 1.0) - 0.3f64).abs() < 1e-15);
    }
}
