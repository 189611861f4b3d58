//! Low-level geometry: real intervals, axis-aligned boxes, spherical caps.

pub mod boxes;
pub mod interval;
pub mod sphere;
pub mod vector;

pub use boxes::AaBox;
pub use interval::{Interval, IntervalSet};
pub use sphere::Cap;
