//! Exact population loss for the uniform distribution on an interval.
//!
//! On the line the loss of an agent is piecewise constant in its position:
//! it can only change where the agent crosses an endpoint of `h` or `f*`, or
//! where the edge of its window `Delta(x)` crosses one. Splitting the domain
//! at those critical points and evaluating one interior point per cell gives
//! the exact measure.

use super::reach::EvalOptions;
use super::{pointwise_loss, Hypothesis, ImprovementMap, LossKind, Point, Region};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn unsupported<T: Scalar>(h: &Hypothesis<T>, m: &ImprovementMap<T>) -> Error {
    Error::EvaluationUnsupported { hypothesis: h.name(), map: m.name() }
}

fn collect_breaks<T: Scalar>(m: &ImprovementMap<T>, ends: &[T], h: &Hypothesis<T>, out: &mut Vec<T>) -> Result<()> {
    let shifted = |r: T, extra: Option<(T, T)>, out: &mut Vec<T>| {
        let clip: Vec<T> = extra.map(|(a, b)| vec![a, b]).unwrap_or_default();
        for &e in ends.iter().chain(&clip) {
            out.push(e - r);
            out.push(e + r);
        }
    };
    match m {
        ImprovementMap::IntervalBall { r, clip } => shifted(*r, *clip, out),
        ImprovementMap::LinfBall { r } => shifted(*r, None, out),
        ImprovementMap::MaskedLinfBall { r, mask } => {
            if mask.contains(&0) {
                shifted(*r, None, out)
            }
        }
        ImprovementMap::WholeSpace(_) | ImprovementMap::Stay => {}
        ImprovementMap::PiecewiseRegion(parts) => {
            for (region, sub) in parts {
                if let Region::Interval { coord: 0, interval } = region {
                    out.extend([interval.lo, interval.hi].into_iter().filter(|v| v.is_finite()));
                }
                collect_breaks(sub, ends, h, out)?;
            }
        }
        other => return Err(unsupported(h, other)),
    }
    Ok(())
}

/// `P_{x ~ U[lo, hi]}[loss(x) = 1]`, computed exactly by cell decomposition.
pub fn uniform_line_loss<T: Scalar>(
    h: &Hypothesis<T>,
    f_star: &Hypothesis<T>,
    delta: &ImprovementMap<T>,
    lo: T,
    hi: T,
    kind: LossKind,
) -> Result<T> {
    if kind == LossKind::Enabling {
        return Err(Error::EvaluationUnsupported { hypothesis: h.name(), map: delta.name() });
    }
    if !(hi > lo) {
        return Err(Error::Argument("empty interval".into()));
    }
    let hp = h.positive_intervals().ok_or_else(|| unsupported(h, delta))?;
    let fp = f_star.positive_intervals().ok_or_else(|| unsupported(f_star, delta))?;
    let ends: Vec<T> = hp.endpoints().chain(fp.endpoints()).collect();
    let mut cuts = vec![lo, hi];
    cuts.extend_from_slice(&ends);
    collect_breaks(delta, &ends, h, &mut cuts)?;
    cuts.retain(|&c| c >= lo && c <= hi);
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite cut points"));
    cuts.dedup();
    let opts = EvalOptions::default();
    let tiny = T::geom_tol();
    let mut mass = T::zero();
    for w in cuts.windows(2) {
        let len = w[1] - w[0];
        if len <= tiny {
            continue;
        }
        let mid = Point::scalar((w[0] + w[1]) / T::lit(2.0));
        if pointwise_loss(kind, &mid, h, f_star, delta, &opts)? {
            mass += len;
        }
    }
    Ok(mass / (hi - lo))
}
