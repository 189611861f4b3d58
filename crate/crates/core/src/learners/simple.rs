use crate::error::{Error, Result};
use crate::model::{Hypothesis, LabeledExample};
use crate::scalar::Scalar;

/// Rightmost threshold consistent with the sample: the smallest positive
/// point, or 1 when there are no positives.
pub fn learn_threshold_conservative<T: Scalar>(sample: &[LabeledExample<T>]) -> Result<Hypothesis<T>> {
    let t = sample
        .iter()
        .filter(|e| e.label)
        .map(|e| e.point.x())
        .fold(None, |acc: Option<T>, x| Some(acc.map_or(x, |a| a.min(x))))
        .unwrap_or_else(T::one);
    let h = Hypothesis::threshold(t);
    if let Some(bad) = sample.iter().find(|e| !e.label && h.predict(&e.point)) {
        return Err(Error::InconsistentSample(format!(
            "negative example at {} is not below the threshold {}",
            bad.point.x(),
            t
        )));
    }
    Ok(h)
}

/// Positive exactly at the first positive example, or all-negative.
pub fn learn_singleton_positive<T: Scalar>(sample: &[LabeledExample<T>]) -> Hypothesis<T> {
    match sample.iter().find(|e| e.label) {
        Some(e) => Hypothesis::SingletonPositive(e.point.clone()),
        None => Hypothesis::ConstantZero,
    }
}
