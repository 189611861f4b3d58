use crate::error::{Error, Result};
use crate::geometry::vector::{dot, norm, normalized, scale};
use crate::model::{Hypothesis, LabeledExample, Point};
use crate::scalar::Scalar;

use super::nnls::nnls;

pub const PERCEPTRON_UPDATE_CAP: usize = 1_000_000;

/// Unit direction `w` with `y_i <w, x_i> > 0` on the whole sample.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfspaceFit<T> {
    pub w: Vec<T>,
    pub updates: usize,
}

fn signed_rows<T: Scalar>(sample: &[LabeledExample<T>]) -> Result<Vec<Vec<T>>> {
    let d = sample.first().map_or(0, |e| e.point.dim());
    sample
        .iter()
        .map(|e| {
            if e.point.dim() != d {
                return Err(Error::Argument("mixed dimensions in sample".into()));
            }
            Ok(if e.label { e.point.coords.clone() } else { scale(&e.point.coords, -T::one()) })
        })
        .collect()
}

/// Mistake-driven search for a homogeneous separator, started at the
/// label-weighted mean direction and cycling over the sample in order.
pub fn consistent_direction<T: Scalar>(sample: &[LabeledExample<T>], cap: usize) -> Result<HalfspaceFit<T>> {
    let rows = signed_rows(sample)?;
    let Some(d) = rows.first().map(Vec::len) else {
        return Err(Error::Argument("empty sample".into()));
    };
    let mut w = vec![T::zero(); d];
    for a in &rows {
        for (wi, &ai) in w.iter_mut().zip(a) {
            *wi += ai;
        }
    }
    if norm(&w) <= T::geom_tol() {
        w = rows[0].clone();
    }
    let mut updates = 0usize;
    loop {
        let mut clean = true;
        for a in &rows {
            if dot(&w, a) <= T::zero() {
                clean = false;
                if updates == cap {
                    let violations = rows.iter().filter(|a| dot(&w, a) <= T::zero()).count();
                    return Err(Error::NonSeparable { updates, violations });
                }
                for (wi, &ai) in w.iter_mut().zip(a) {
                    *wi += ai;
                }
                updates += 1;
            }
        }
        if clean {
            break;
        }
    }
    let w = normalized(&w).ok_or(Error::NonSeparable { updates, violations: rows.len() })?;
    // normalisation can flip a tiny positive margin
    let violations = rows.iter().filter(|a| dot(&w, a) <= T::zero()).count();
    if violations > 0 {
        return Err(Error::NonSeparable { updates, violations });
    }
    Ok(HalfspaceFit { w, updates })
}

/// Consistent homogeneous direction shifted inward by angle `r / 2`:
/// `{x : <w, x> >= sin(r / 2)}`.
pub fn learn_halfspace_shifted<T: Scalar>(sample: &[LabeledExample<T>], r: T) -> Result<Hypothesis<T>> {
    if !(r > T::zero() && r < T::FRAC_PI_2()) {
        return Err(Error::Argument("shift angle r must lie in (0, pi/2)".into()));
    }
    let fit = consistent_direction(sample, PERCEPTRON_UPDATE_CAP)?;
    Ok(Hypothesis::AffineHalfspace { w: fit.w, bias: (r / T::lit(2.0)).sin() })
}

/// Why a point is or is not in the positive agreement region.
#[derive(Debug, Clone, PartialEq)]
pub enum PosCertificate<T> {
    /// `x = sum_i lambda_i y_i x_i` with `lambda >= 0`, so every consistent
    /// direction labels `x` positive.
    Member { lambda: Vec<T> },
    /// A consistent direction labelling `x` negative.
    Separated { w: Vec<T> },
}

/// Decides membership of `x` in the intersection of the positive regions of
/// all homogeneous halfspaces consistent with the sample. The consistent
/// directions form the open cone `{w : <w, y_i x_i> > 0}`, and `x` is positive
/// under all of them exactly when it lies in the closed cone generated by
/// the `y_i x_i`; a non-negative least-squares residual decides that and
/// yields a separating direction otherwise.
pub fn pos_agreement_certificate<T: Scalar>(x: &Point<T>, sample: &[LabeledExample<T>]) -> Result<PosCertificate<T>> {
    let fit = consistent_direction(sample, PERCEPTRON_UPDATE_CAP)?;
    let rows = signed_rows(sample)?;
    if x.dim() != fit.w.len() {
        return Err(Error::Argument("probe dimension differs from sample".into()));
    }
    let lambda = nnls(&rows, &x.coords);
    let mut v = scale(&x.coords, -T::one());
    for (a, &l) in rows.iter().zip(&lambda) {
        for (vi, &ai) in v.iter_mut().zip(a) {
            *vi += l * ai;
        }
    }
    let gap = norm(&v);
    if gap <= T::lit(1e-9) * norm(&x.coords).max(T::one()) {
        return Ok(PosCertificate::Member { lambda });
    }
    let v = scale(&v, T::one() / gap);
    let wx = dot(&fit.w, &x.coords).abs().max(T::one());
    let mut eps = gap / (T::lit(2.0) * wx);
    for _ in 0..60 {
        let w: Vec<T> = v.iter().zip(&fit.w).map(|(&a, &b)| a + eps * b).collect();
        let consistent = rows.iter().all(|a| dot(&w, a) > T::zero());
        if consistent && dot(&w, &x.coords) < T::zero() {
            let w = normalized(&w).unwrap_or(w);
            return Ok(PosCertificate::Separated { w });
        }
        eps = if consistent { eps / T::lit(2.0) } else { eps * T::lit(2.0) };
    }
    // the residual is below working precision: treat as on the cone boundary
    Ok(PosCertificate::Member { lambda })
}

pub fn pos_agreement_member<T: Scalar>(x: &Point<T>, sample: &[LabeledExample<T>]) -> Result<bool> {
    Ok(matches!(pos_agreement_certificate(x, sample)?, PosCertificate::Member { .. }))
}
