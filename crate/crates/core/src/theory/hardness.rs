//! Distribution and improvement map that defeat every proper learner of a
//! finite class that is not intersection-closed away from an always-negative
//! point.

use crate::error::{Error, Result};
use crate::learners::{mask_labels, FiniteClass};
use crate::model::{population_loss_exact, DistributionSpec, Hypothesis, ImprovementMap, LossKind, Point};

#[derive(Debug, Clone)]
pub struct HardnessConstruction {
    pub n: usize,
    /// Point every member labels negative.
    pub x_prime: usize,
    /// Positive sample whose closure is not a member.
    pub s: u64,
    pub closure: u64,
    /// Two minimally consistent members, the candidate targets.
    pub h1: u64,
    pub h2: u64,
    /// `x1` in `h1` but not in `h2`, `x2` in `h2` but not in `h1`.
    pub x1: usize,
    pub x2: usize,
    pub delta: ImprovementMap<f64>,
    pub dist: DistributionSpec<f64>,
}

/// Exact improvement losses of every member against both targets.
#[derive(Debug, Clone, PartialEq)]
pub struct MinMaxTable {
    /// `(member, loss vs h1, loss vs h2)`.
    pub rows: Vec<(u64, f64, f64)>,
    /// `min over members of max over the two targets`.
    pub min_max: f64,
}

fn bit(m: u64, i: usize) -> bool {
    m >> i & 1 == 1
}

fn ids(m: u64, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&i| bit(m, i))
}

fn minimal_consistent(members: &[u64], s: u64) -> Vec<u64> {
    let cons: Vec<u64> = members.iter().copied().filter(|&h| h & s == s).collect();
    cons.iter().copied().filter(|&h| !cons.iter().any(|&g| g != h && g & h == g)).collect()
}

/// Searches positive samples `S` (smallest first) with `CLOS(S)` outside the
/// class. `None` when the class restricted away from `x_prime` is
/// intersection-closed on all realizable samples.
pub fn find_hardness_construction(class: &FiniteClass, x_prime: usize) -> Result<Option<HardnessConstruction>> {
    let n = class.n();
    if x_prime >= n {
        return Err(Error::Argument(format!("x' = {x_prime} outside the domain")));
    }
    if n > 20 {
        return Err(Error::Resource("sample search is exponential; at most 20 points".into()));
    }
    let members = class.members();
    if members.iter().any(|&h| bit(h, x_prime)) {
        return Err(Error::Precondition(format!("some member labels x' = {x_prime} positive")));
    }
    let others: Vec<usize> = (0..n).filter(|&i| i != x_prime).collect();
    let mut subsets: Vec<u64> =
        (0u64..1 << others.len()).map(|sel| ids(sel, others.len()).fold(0u64, |acc, j| acc | 1 << others[j])).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    for s in subsets {
        let mins = minimal_consistent(members, s);
        if mins.len() < 2 {
            continue;
        }
        let closure = mins.iter().fold(u64::MAX, |acc, &h| acc & h);
        if members.contains(&closure) {
            continue;
        }
        let h1 = mins[0];
        let x1 = ids(h1 & !closure, n).next().expect("h1 strictly contains the closure");
        let h2 = *mins.iter().find(|&&h| !bit(h, x1)).expect("closure excludes x1 from some minimal member");
        let x2 = ids(h2 & !h1, n).next().expect("distinct minimal members are incomparable");
        let table: Vec<Vec<usize>> =
            (0..n).map(|i| if i == x_prime { (0..n).filter(|&j| !bit(s, j)).collect() } else { Vec::new() }).collect();
        let support: Vec<Point<f64>> = ids(closure, n).chain([x_prime]).map(Point::from_id).collect();
        return Ok(Some(HardnessConstruction {
            n,
            x_prime,
            s,
            closure,
            h1,
            h2,
            x1,
            x2,
            delta: ImprovementMap::FiniteTable(table),
            dist: DistributionSpec::uniform_over(support)?,
        }));
    }
    Ok(None)
}

impl HardnessConstruction {
    pub fn hypothesis(&self, mask: u64) -> Hypothesis<f64> {
        Hypothesis::FiniteLabeling(mask_labels(mask, self.n))
    }

    pub fn loss(&self, h: u64, target: u64) -> Result<f64> {
        population_loss_exact(
            &self.hypothesis(h),
            &self.hypothesis(target),
            &self.delta,
            &self.dist,
            LossKind::Improvement,
        )
    }

    /// Exhaustive check over every member of `class`.
    pub fn min_max(&self, class: &FiniteClass) -> Result<MinMaxTable> {
        let mut rows = Vec::new();
        let mut min_max = f64::INFINITY;
        for &h in class.members() {
            let (a, b) = (self.loss(h, self.h1)?, self.loss(h, self.h2)?);
            min_max = min_max.min(a.max(b));
            rows.push((h, a, b));
        }
        Ok(MinMaxTable { rows, min_max })
    }

    /// Guaranteed floor: one point of mass `1 / |CLOS(S) + x'|`.
    pub fn floor(&self) -> f64 {
        1.0 / (self.closure.count_ones() as f64 + 1.0)
    }
}

/// Four points, members `{0,1}`, `{0,2}`, `{0,1,2}` and the empty set; point
/// 3 is always negative.
pub fn demo_class() -> FiniteClass {
    FiniteClass::unrestricted(4, vec![0b0011, 0b0101, 0b0111, 0]).expect("valid demo class")
}
