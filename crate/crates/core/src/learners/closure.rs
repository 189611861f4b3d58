use crate::error::{Error, Result};
use crate::model::{Hypothesis, LabeledExample};
use crate::scalar::Scalar;

use super::simple::learn_threshold_conservative;

/// Finite concept class over ids `0..n` (`n <= 64`), members stored as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteClass {
    n: usize,
    members: Vec<u64>,
    closed: bool,
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl FiniteClass {
    fn build(n: usize, members: Vec<u64>) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::Argument("finite class needs 1..=64 points".into()));
        }
        if members.is_empty() {
            return Err(Error::Argument("finite class needs at least one member".into()));
        }
        if members.iter().any(|m| m & !full_mask(n) != 0) {
            return Err(Error::Argument("member uses ids outside the domain".into()));
        }
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        Ok(FiniteClass { n, members, closed: false })
    }

    /// Class that must be closed under pairwise intersection.
    pub fn intersection_closed(n: usize, members: Vec<u64>) -> Result<Self> {
        let mut c = Self::build(n, members)?;
        for (i, &a) in c.members.iter().enumerate() {
            for &b in &c.members[i + 1..] {
                if c.members.binary_search(&(a & b)).is_err() {
                    return Err(Error::Argument(format!(
                        "class is not intersection-closed: {a:#b} & {b:#b} is missing"
                    )));
                }
            }
        }
        c.closed = true;
        Ok(c)
    }

    /// Arbitrary class; learning returns the intersection of the members
    /// consistent with the sample.
    pub fn unrestricted(n: usize, members: Vec<u64>) -> Result<Self> {
        Self::build(n, members)
    }

    pub fn from_labelings(labelings: &[Vec<bool>], closed: bool) -> Result<Self> {
        let n = labelings.first().map_or(0, Vec::len);
        let members = labelings.iter().map(|l| to_mask(l)).collect();
        if closed {
            Self::intersection_closed(n, members)
        } else {
            Self::unrestricted(n, members)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Smallest member containing `positives`, if any member does.
    pub fn closure(&self, positives: u64) -> Option<u64> {
        self.members
            .iter()
            .filter(|&&m| m & positives == positives)
            .fold(None, |acc, &m| Some(acc.map_or(m, |a| a & m)))
    }
}

pub fn to_mask(labels: &[bool]) -> u64 {
    labels.iter().enumerate().filter(|(_, &b)| b).fold(0u64, |m, (i, _)| m | (1u64 << i))
}

pub fn mask_labels(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureOperator {
    Thresholds,
    Rectangles,
    FiniteClass(FiniteClass),
}

/// Closure algorithm: the smallest family member containing every positive
/// example.
pub fn closure_learn<T: Scalar>(sample: &[LabeledExample<T>], op: &ClosureOperator) -> Result<Hypothesis<T>> {
    let h = match op {
        ClosureOperator::Thresholds => return learn_threshold_conservative(sample),
        ClosureOperator::Rectangles => {
            let mut pos = sample.iter().filter(|e| e.label).map(|e| &e.point.coords);
            match pos.next() {
                None => Hypothesis::ConstantZero,
                Some(first) => {
                    let mut a = first.clone();
                    let mut b = first.clone();
                    for p in pos {
                        if p.len() != a.len() {
                            return Err(Error::Argument("mixed dimensions in sample".into()));
                        }
                        for i in 0..a.len() {
                            a[i] = a[i].min(p[i]);
                            b[i] = b[i].max(p[i]);
                        }
                    }
                    Hypothesis::Rectangle { a, b }
                }
            }
        }
        ClosureOperator::FiniteClass(class) => {
            let mut positives = 0u64;
            let mut negatives = 0u64;
            for e in sample {
                let id = e
                    .point
                    .as_id()
                    .filter(|&i| i < class.n)
                    .ok_or_else(|| Error::Argument("sample point is not a domain id".into()))?;
                if e.label {
                    positives |= 1 << id;
                } else {
                    negatives |= 1 << id;
                }
            }
            let mask = if class.closed {
                class.closure(positives)
            } else {
                class
                    .members
                    .iter()
                    .filter(|&&m| m & positives == positives && m & negatives == 0)
                    .fold(None, |acc, &m| Some(acc.map_or(m, |a: u64| a & m)))
            };
            let mask =
                mask.ok_or_else(|| Error::InconsistentSample("no class member is consistent with the sample".into()))?;
            Hypothesis::FiniteLabeling(mask_labels(mask, class.n))
        }
    };
    if let Some(bad) = sample.iter().find(|e| !e.label && h.predict(&e.point)) {
        return Err(Error::InconsistentSample(format!(
            "negative example {:?} lies inside the closure",
            bad.point.coords
        )));
    }
    Ok(h)
}
