//! Brute-force shattering oracles for small strategic problems.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::Interval;
use crate::model::reach::{finite_targets, reach};
use crate::model::{EvalOptions, Hypothesis, ImprovementMap, Point};
use crate::scalar::Scalar;

pub const MAX_PROBLEM_POINTS: usize = 16;
pub const MAX_TUPLE: usize = 12;

/// A finite point set, an explicit list of hypotheses and an improvement map.
#[derive(Debug, Clone)]
pub struct FiniteProblem<T> {
    pub points: Vec<Point<T>>,
    pub hypotheses: Vec<Hypothesis<T>>,
    pub delta: ImprovementMap<T>,
}

impl<T: Scalar> FiniteProblem<T> {
    pub fn new(points: Vec<Point<T>>, hypotheses: Vec<Hypothesis<T>>, delta: ImprovementMap<T>) -> Result<Self> {
        if points.len() > MAX_PROBLEM_POINTS {
            return Err(Error::Resource(format!(
                "{} points exceeds the brute-force limit of {MAX_PROBLEM_POINTS}",
                points.len()
            )));
        }
        if hypotheses.is_empty() {
            return Err(Error::Argument("problem needs at least one hypothesis".into()));
        }
        delta.validate()?;
        Ok(FiniteProblem { points, hypotheses, delta })
    }
}

/// Label an agent at `x` ends up with: positive if `h` already accepts it or
/// it can reach a point `h` accepts.
pub fn post_reaction_label<T: Scalar>(x: &Point<T>, h: &Hypothesis<T>, delta: &ImprovementMap<T>) -> Result<bool> {
    if h.predict(x) {
        return Ok(true);
    }
    Ok(reach(x, h, h, delta, &EvalOptions::default())?.positive.is_some())
}

/// Post-reaction labelings of `tuple` achievable by some hypothesis.
pub fn svc_shattering_coefficient<T: Scalar>(
    problem: &FiniteProblem<T>,
    tuple: &[Point<T>],
) -> Result<BTreeSet<Vec<bool>>> {
    if tuple.len() > MAX_TUPLE {
        return Err(Error::Resource(format!("tuple of {} points exceeds {MAX_TUPLE}", tuple.len())));
    }
    let mut out = BTreeSet::new();
    for h in &problem.hypotheses {
        let labels = tuple.iter().map(|x| post_reaction_label(x, h, &problem.delta)).collect::<Result<Vec<bool>>>()?;
        out.insert(labels);
    }
    Ok(out)
}

/// Plain labelings of `tuple` realised by the hypotheses (no movement).
pub fn vc_labelings<T: Scalar>(hypotheses: &[Hypothesis<T>], tuple: &[Point<T>]) -> BTreeSet<Vec<bool>> {
    hypotheses.iter().map(|h| tuple.iter().map(|x| h.predict(x)).collect()).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// `sigma_n`, maximised over `n`-subsets of the problem's points.
pub fn shattering_coefficient<T: Scalar>(problem: &FiniteProblem<T>, n: usize) -> Result<usize> {
    if n > problem.points.len() {
        return Err(Error::Argument(format!("n = {n} exceeds the {} problem points", problem.points.len())));
    }
    let mut best = 0;
    for idx in combinations(problem.points.len(), n) {
        let tuple: Vec<Point<T>> = idx.iter().map(|&i| problem.points[i].clone()).collect();
        best = best.max(svc_shattering_coefficient(problem, &tuple)?.len());
        if best == 1 << n {
            break;
        }
    }
    Ok(best)
}

/// Largest `n` (up to the point count) with `sigma_n = 2^n`.
pub fn svc_dimension<T: Scalar>(problem: &FiniteProblem<T>) -> Result<usize> {
    let mut dim = 0;
    for n in 1..=problem.points.len().min(MAX_TUPLE) {
        if shattering_coefficient(problem, n)? == 1 << n {
            dim = n;
        } else {
            break;
        }
    }
    Ok(dim)
}

/// Literal reaction set of `x` on a finite-domain map: `{x}` when `h(x) = 1`
/// or nothing positive is reachable, otherwise the reachable positives.
pub fn materialize_reaction_set<T: Scalar>(
    x: &Point<T>,
    h: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
) -> Result<Vec<Point<T>>> {
    if h.predict(x) {
        return Ok(vec![x.clone()]);
    }
    let Some(m) = delta.resolve(x) else {
        return Ok(vec![x.clone()]);
    };
    let targets = finite_targets(x, m)?.ok_or(Error::EvaluationUnsupported { hypothesis: h.name(), map: m.name() })?;
    let mut pos: Vec<Point<T>> = targets.into_iter().filter(|p| h.predict(p)).collect();
    pos.dedup();
    Ok(if pos.is_empty() { vec![x.clone()] } else { pos })
}

/// Unions of at most two intervals `[a, b) u (c, d]` with `a <= b <= c <= d`
/// drawn from `grid`, plus the empty hypothesis.
pub fn two_interval_family<T: Scalar>(grid: &[T]) -> Vec<Hypothesis<T>> {
    let mut g: Vec<T> = grid.to_vec();
    g.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
    g.dedup();
    let mut out = vec![Hypothesis::ConstantZero];
    let k = g.len();
    for a in 0..k {
        for b in a..k {
            for c in b..k {
                for d in c..k {
                    let mut parts = Vec::new();
                    if a < b {
                        parts.push(Interval::closed_open(g[a], g[b]));
                    }
                    if c < d {
                        parts.push(Interval::open_closed(g[c], g[d]));
                    }
                    if parts.is_empty() {
                        continue;
                    }
                    // [a, b) and (b, d] leave a single hole at b; that is
                    // still a valid member with disjoint parts.
                    if let Ok(h) = Hypothesis::intervals(parts) {
                        out.push(h);
                    }
                }
            }
        }
    }
    out
}
