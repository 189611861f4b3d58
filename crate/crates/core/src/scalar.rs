//! Scalar abstraction shared by the geometric and numerical code.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Conversion from a count or index.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Absolute tolerance for geometric comparisons.
    fn geom_tol() -> Self {
        Self::lit(GEOM_TOL)
    }

    /// Tolerance for unit-norm checks on sphere points.
    fn sphere_tol() -> Self {
        Self::lit(SPHERE_TOL)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

pub const GEOM_TOL: f64 = 1e-12;
pub const SPHERE_TOL: f64 = 1e-9;
