//! Existence queries over the reachable set `R(x) = {x' in Delta(x) : h(x') = 1}`.
//!
//! The improvement and strategic losses only ask whether `R(x)` is empty and
//! whether it meets the negative (or positive) region of the target, so the
//! reachable set is never materialised outside finite domains.

use super::{Hypothesis, ImprovementMap, InstanceSpace, Point};
use crate::error::{Error, Result};
use crate::geometry::sphere::{max_linear, min_linear, Cap};
use crate::geometry::{AaBox, Interval, IntervalSet};
use crate::scalar::Scalar;

pub const DEFAULT_GRID_RESOLUTION: usize = 512;

/// Evaluation knobs. The grid fallback is approximate and off by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    /// Points per dimension for the grid fallback, or `None` to reject
    /// pairs without an exact evaluator.
    pub grid: Option<usize>,
    /// Upper bound on grid points enumerated for a single query.
    pub max_grid_points: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { grid: None, max_grid_points: 4_000_000 }
    }
}

impl EvalOptions {
    pub fn with_grid(resolution: usize) -> Self {
        EvalOptions { grid: Some(resolution), ..Self::default() }
    }
}

/// Witnesses for the three existence queries.
#[derive(Debug, Clone, PartialEq)]
pub struct Reach<T> {
    /// Some point of `R(x)`.
    pub positive: Option<Point<T>>,
    /// A point of `R(x)` with `f*(x') = 0`.
    pub disagreement: Option<Point<T>>,
    /// A point of `R(x)` with `f*(x') = 1`.
    pub agreement: Option<Point<T>>,
}

impl<T> Reach<T> {
    fn nothing() -> Self {
        Reach { positive: None, disagreement: None, agreement: None }
    }
}

/// Computes the reach summary of `x` under `h`, judging witnesses by `f_star`.
pub fn reach<T: Scalar>(
    x: &Point<T>,
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
    opts: &EvalOptions,
) -> Result<Reach<T>> {
    let Some(m) = delta.resolve(x) else {
        return Ok(Reach::nothing());
    };
    if let Some(points) = finite_targets(x, m)? {
        return Ok(reach_finite(points, h, f_star));
    }
    if let Some(r) = reach_line(x, h, f_star, m) {
        return Ok(r);
    }
    if let Some(r) = reach_box(x, h, f_star, m)? {
        return Ok(r);
    }
    if let Some(r) = reach_sphere(x, h, f_star, m) {
        return Ok(r);
    }
    if let Some(res) = opts.grid {
        if let Some(bounds) = grid_bounds(x, m)? {
            return reach_grid(&bounds, res, opts.max_grid_points, h, f_star);
        }
    }
    let culprit = if supports(h, x.dim(), m) { f_star } else { h };
    Err(Error::EvaluationUnsupported { hypothesis: culprit.name(), map: m.name() })
}

/// Whether `m` ranges over a finite set of points.
pub fn is_finite_map<T: Scalar>(m: &ImprovementMap<T>) -> bool {
    matches!(
        m,
        ImprovementMap::FiniteTable(_)
            | ImprovementMap::GraphNeighborhood { .. }
            | ImprovementMap::WholeSpace(InstanceSpace::Finite(_))
            | ImprovementMap::Stay
    ) || matches!(m, ImprovementMap::PiecewiseRegion(parts) if parts.iter().all(|(_, s)| is_finite_map(s)))
}

fn node_id<T: Scalar>(x: &Point<T>) -> Result<usize> {
    x.as_id().ok_or_else(|| Error::Argument("finite-domain map needs a node-id point".into()))
}

/// Explicit target list for finite maps.
pub(crate) fn finite_targets<T: Scalar>(x: &Point<T>, m: &ImprovementMap<T>) -> Result<Option<Vec<Point<T>>>> {
    Ok(match m {
        ImprovementMap::FiniteTable(table) => {
            let id = node_id(x)?;
            Some(table.get(id).map(|t| t.iter().map(|&j| Point::from_id(j)).collect()).unwrap_or_default())
        }
        ImprovementMap::GraphNeighborhood { graph, radius } => {
            let id = node_id(x)?;
            if id >= graph.n() {
                return Err(Error::Argument(format!("node {id} outside graph")));
            }
            Some(graph.within(id, *radius).into_iter().map(Point::from_id).collect())
        }
        ImprovementMap::WholeSpace(InstanceSpace::Finite(points)) => Some(points.clone()),
        _ => None,
    })
}

fn reach_finite<T: Scalar>(points: Vec<Point<T>>, h: &Hypothesis<T>, f_star: &Hypothesis<T>) -> Reach<T> {
    let mut out = Reach::nothing();
    for p in points.into_iter().filter(|p| h.predict(p)) {
        let good = f_star.predict(&p);
        if good && out.agreement.is_none() {
            out.agreement = Some(p.clone());
        }
        if !good && out.disagreement.is_none() {
            out.disagreement = Some(p.clone());
        }
        if out.positive.is_none() {
            out.positive = Some(p);
        }
    }
    out
}

/// Reachable set of a one-dimensional map, as an interval.
pub(crate) fn line_window<T: Scalar>(x: T, m: &ImprovementMap<T>) -> Option<Interval<T>> {
    match m {
        ImprovementMap::IntervalBall { r, .. } | ImprovementMap::LinfBall { r } => {
            let ball = Interval::closed(x - *r, x + *r);
            Some(match clip_of(m) {
                Some((lo, hi)) => ball.intersect(&Interval::closed(lo, hi)),
                None => ball,
            })
        }
        ImprovementMap::MaskedLinfBall { r, mask } => {
            let r = if mask.contains(&0) { *r } else { T::zero() };
            Some(Interval::closed(x - r, x + r))
        }
        ImprovementMap::WholeSpace(InstanceSpace::Interval { lo, hi }) => Some(Interval::closed(*lo, *hi)),
        ImprovementMap::WholeSpace(InstanceSpace::UnitBox { d: 1 }) => Some(Interval::closed(T::zero(), T::one())),
        _ => None,
    }
}

fn clip_of<T: Scalar>(m: &ImprovementMap<T>) -> Option<(T, T)> {
    match m {
        ImprovementMap::IntervalBall { clip, .. } => *clip,
        _ => None,
    }
}

fn reach_line<T: Scalar>(
    x: &Point<T>,
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    m: &ImprovementMap<T>,
) -> Option<Reach<T>> {
    if x.dim() != 1 {
        return None;
    }
    let window = line_window(x.x(), m)?;
    let hp = h.positive_intervals()?;
    let fp = f_star.positive_intervals()?;
    let r = hp.intersect_interval(&window);
    let pt = |s: &IntervalSet<T>| s.witness().map(Point::scalar);
    Some(Reach { positive: pt(&r), disagreement: pt(&r.intersect(&fp.complement())), agreement: pt(&r.intersect(&fp)) })
}

fn box_window<T: Scalar>(x: &Point<T>, m: &ImprovementMap<T>) -> Result<Option<AaBox<T>>> {
    let d = x.dim();
    Ok(match m {
        ImprovementMap::LinfBall { r } => Some(AaBox::around(&x.coords, &vec![*r; d])),
        ImprovementMap::MaskedLinfBall { r, mask } => {
            let mut radii = vec![T::zero(); d];
            for &i in mask {
                if i >= d {
                    return Err(Error::Argument(format!("mask index {i} out of range for dimension {d}")));
                }
                radii[i] = *r;
            }
            Some(AaBox::around(&x.coords, &radii))
        }
        ImprovementMap::IntervalBall { .. } if d == 1 => {
            line_window(x.x(), m).map(|iv| AaBox::new(vec![iv.lo], vec![iv.hi]))
        }
        ImprovementMap::WholeSpace(InstanceSpace::UnitBox { d: k }) if *k == d => Some(AaBox::unit(d)),
        ImprovementMap::WholeSpace(InstanceSpace::Interval { lo, hi }) if d == 1 => {
            Some(AaBox::new(vec![*lo], vec![*hi]))
        }
        _ => None,
    })
}

fn reach_box<T: Scalar>(
    x: &Point<T>,
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    m: &ImprovementMap<T>,
) -> Result<Option<Reach<T>>> {
    let d = x.dim();
    let Some(window) = box_window(x, m)? else { return Ok(None) };
    let (Some(hb), Some(fb)) = (h.positive_box(d), f_star.positive_box(d)) else {
        return Ok(None);
    };
    let r = window.intersect(&hb);
    if r.is_empty() {
        return Ok(Some(Reach::nothing()));
    }
    Ok(Some(Reach {
        positive: r.witness().map(Point::from_vec),
        disagreement: r.witness_outside(&fb).map(Point::from_vec),
        agreement: r.intersect(&fb).witness().map(Point::from_vec),
    }))
}

fn reach_sphere<T: Scalar>(
    x: &Point<T>,
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    m: &ImprovementMap<T>,
) -> Option<Reach<T>> {
    let d = x.dim();
    let window = match m {
        ImprovementMap::AngularBall { r } => Some(Cap::angular(x.coords.clone(), *r)),
        ImprovementMap::WholeSpace(InstanceSpace::Sphere { d: k }) if *k == d => None,
        _ => return None,
    };
    let hc = h.positive_cap(d)?;
    let fc = f_star.positive_cap(d)?;
    let tol = T::sphere_tol();
    let mut caps: Vec<Cap<T>> = window.into_iter().collect();
    let positive = match max_linear(&hc.center, &caps) {
        Some((v, y)) if v >= hc.cos_radius - tol => Some(Point::from_vec(y)),
        _ => None,
    };
    if positive.is_none() {
        return Some(Reach::nothing());
    }
    caps.push(hc);
    let disagreement = match min_linear(&fc.center, &caps) {
        Some((v, y)) if v < fc.cos_radius - tol => Some(Point::from_vec(y)),
        _ => None,
    };
    let agreement = match max_linear(&fc.center, &caps) {
        Some((v, y)) if v >= fc.cos_radius - tol => Some(Point::from_vec(y)),
        _ => None,
    };
    Some(Reach { positive, disagreement, agreement })
}

fn supports<T: Scalar>(h: &Hypothesis<T>, d: usize, m: &ImprovementMap<T>) -> bool {
    match m {
        ImprovementMap::AngularBall { .. } | ImprovementMap::WholeSpace(InstanceSpace::Sphere { .. }) => {
            h.positive_cap(d).is_some()
        }
        _ => h.positive_box(d).is_some() || (d == 1 && h.positive_intervals().is_some()),
    }
}

fn grid_bounds<T: Scalar>(x: &Point<T>, m: &ImprovementMap<T>) -> Result<Option<AaBox<T>>> {
    let b = box_window(x, m)?;
    Ok(b.filter(|b| b.lo.iter().chain(&b.hi).all(|v| v.is_finite())))
}

/// Approximate reach by scanning a regular grid over the bounding box of
/// `Delta(x)`.
fn reach_grid<T: Scalar>(
    bounds: &AaBox<T>,
    res: usize,
    cap: usize,
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
) -> Result<Reach<T>> {
    let res = res.max(2);
    let d = bounds.dim();
    let counts: Vec<usize> = (0..d).map(|i| if bounds.hi[i] > bounds.lo[i] { res } else { 1 }).collect();
    let total = counts.iter().try_fold(1usize, |acc, &c| acc.checked_mul(c));
    match total {
        Some(t) if t <= cap => {}
        _ => return Err(Error::Resource(format!("grid fallback would need more than {cap} points"))),
    }
    let mut idx = vec![0usize; d];
    let mut out = Reach::nothing();
    loop {
        let coords: Vec<T> = (0..d)
            .map(|i| {
                if counts[i] == 1 {
                    bounds.lo[i]
                } else {
                    let t = T::from_count(idx[i]) / T::from_count(counts[i] - 1);
                    bounds.lo[i] + t * (bounds.hi[i] - bounds.lo[i])
                }
            })
            .collect();
        let p = Point::from_vec(coords);
        if h.predict(&p) {
            let good = f_star.predict(&p);
            if good && out.agreement.is_none() {
                out.agreement = Some(p.clone());
            }
            if !good && out.disagreement.is_none() {
                out.disagreement = Some(p.clone());
            }
            if out.positive.is_none() {
                out.positive = Some(p);
            }
        }
        let mut k = 0;
        loop {
            if k == d {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < counts[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
