//! Simulation and verification toolkit for learning with improving agents.
//!
//! Agents respond to a published classifier `h` by moving within their
//! improvement set `Delta(x)` to a point that `h` labels positive, when one
//! exists. The crate provides the loss semantics for that reaction, learners
//! that stay correct under it, brute-force oracles on finite instances, graph
//! instance spaces, and a small risk-averse training pipeline.
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix `f64`.

// Negated comparisons also reject NaN; index loops read closer to the maths.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod geometry;
pub mod graph;
pub mod learners;
pub mod model;
pub mod rng;
pub mod scalar;
pub mod stats;
pub mod theory;
pub mod trainer;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use stats::Estimate;

pub type Point = model::Point<f64>;
pub type LabeledExample = model::LabeledExample<f64>;
pub type Hypothesis = model::Hypothesis<f64>;
pub type ImprovementMap = model::ImprovementMap<f64>;
pub type DistributionSpec = model::DistributionSpec<f64>;
pub type Interval = geometry::Interval<f64>;
pub type IntervalSet = geometry::IntervalSet<f64>;
