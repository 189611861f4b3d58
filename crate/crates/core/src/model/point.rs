use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::vector::norm;
use crate::scalar::Scalar;

/// A point of the instance space. Finite domains (graph nodes, table ids)
/// embed node `i` as the one-dimensional point `[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point<T> {
    pub coords: Vec<T>,
}

impl<T: Scalar> Point<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Argument("point must have dimension >= 1".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Argument("point has non-finite coordinate".into()));
        }
        Ok(Point { coords })
    }

    /// Constructs without validation; callers guarantee finiteness.
    pub fn from_vec(coords: Vec<T>) -> Self {
        Point { coords }
    }

    pub fn scalar(x: T) -> Self {
        Point { coords: vec![x] }
    }

    pub fn from_id(id: usize) -> Self {
        Point::scalar(T::from_count(id))
    }

    /// Node id of a point on a finite domain.
    pub fn as_id(&self) -> Option<usize> {
        match self.coords.as_slice() {
            [x] if *x >= T::zero() && x.fract() == T::zero() => x.to_usize(),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// First coordinate, the position on the line.
    pub fn x(&self) -> T {
        self.coords[0]
    }

    pub fn on_sphere(&self) -> bool {
        (norm(&self.coords) - T::one()).abs() <= T::sphere_tol()
    }

    /// Validates a sphere-typed point.
    pub fn sphere(coords: Vec<T>) -> Result<Self> {
        let p = Self::new(coords)?;
        if !p.on_sphere() {
            return Err(Error::Argument("sphere point must have unit norm".into()));
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledExample<T> {
    pub point: Point<T>,
    pub label: bool,
}

impl<T: Scalar> LabeledExample<T> {
    pub fn new(point: Point<T>, label: bool) -> Self {
        LabeledExample { point, label }
    }

    /// Labels `point` with `f_star`.
    pub fn labeled_by(point: Point<T>, f_star: &super::Hypothesis<T>) -> Self {
        let label = f_star.predict(&point);
        LabeledExample { point, label }
    }
}
