use std::sync::Arc;

use super::Point;
use crate::error::{Error, Result};
use crate::geometry::Interval;
use crate::graph::Graph;
use crate::scalar::Scalar;

/// The instance space an improvement map may range over.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSpace<T> {
    Interval { lo: T, hi: T },
    UnitBox { d: usize },
    Sphere { d: usize },
    Finite(Vec<Point<T>>),
}

/// Predicate selecting the sub-map of a [`ImprovementMap::PiecewiseRegion`].
#[derive(Debug, Clone, PartialEq)]
pub enum Region<T> {
    All,
    Interval { coord: usize, interval: Interval<T> },
}

impl<T: Scalar> Region<T> {
    pub fn contains(&self, x: &Point<T>) -> bool {
        match self {
            Region::All => true,
            Region::Interval { coord, interval } => x.coords.get(*coord).is_some_and(|&v| interval.contains(v)),
        }
    }
}

/// The rule `x -> Delta(x)` describing where an agent can move.
#[derive(Debug, Clone)]
pub enum ImprovementMap<T> {
    /// Closed ball `[x - r, x + r]` on the line, optionally clipped to `[lo, hi]`.
    IntervalBall { r: T, clip: Option<(T, T)> },
    /// Closed l-infinity ball of radius `r`.
    LinfBall { r: T },
    /// l-infinity ball that only moves the coordinates in `mask`.
    MaskedLinfBall { r: T, mask: Vec<usize> },
    /// Points on the unit sphere within angle `r` of `x`.
    AngularBall { r: T },
    /// Nodes within `radius` hops.
    GraphNeighborhood { graph: Arc<Graph>, radius: usize },
    /// Every point of the space is reachable.
    WholeSpace(InstanceSpace<T>),
    /// Explicit reachable ids per id; missing ids reach nothing.
    FiniteTable(Vec<Vec<usize>>),
    /// First region containing `x` picks the sub-map; no match means no movement.
    PiecewiseRegion(Vec<(Region<T>, ImprovementMap<T>)>),
    /// No movement at all.
    Stay,
}

impl<T: Scalar> ImprovementMap<T> {
    pub fn interval_ball(r: T) -> Self {
        ImprovementMap::IntervalBall { r, clip: None }
    }

    pub fn graph(graph: Arc<Graph>, radius: usize) -> Self {
        ImprovementMap::GraphNeighborhood { graph, radius }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ImprovementMap::IntervalBall { .. } => "IntervalBall",
            ImprovementMap::LinfBall { .. } => "LinfBall",
            ImprovementMap::MaskedLinfBall { .. } => "MaskedLinfBall",
            ImprovementMap::AngularBall { .. } => "AngularBall",
            ImprovementMap::GraphNeighborhood { .. } => "GraphNeighborhood",
            ImprovementMap::WholeSpace(_) => "WholeSpace",
            ImprovementMap::FiniteTable(_) => "FiniteTable",
            ImprovementMap::PiecewiseRegion(_) => "PiecewiseRegion",
            ImprovementMap::Stay => "Stay",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ImprovementMap::IntervalBall { r, .. }
            | ImprovementMap::LinfBall { r }
            | ImprovementMap::MaskedLinfBall { r, .. } => {
                if !(*r >= T::zero()) {
                    return Err(Error::Argument("improvement radius must be >= 0".into()));
                }
            }
            ImprovementMap::AngularBall { r } => {
                if !(*r >= T::zero() && *r < T::PI()) {
                    return Err(Error::Argument("angular radius must lie in [0, pi)".into()));
                }
            }
            ImprovementMap::GraphNeighborhood { radius, .. } => {
                if *radius < 1 {
                    return Err(Error::Argument("graph radius must be >= 1".into()));
                }
            }
            ImprovementMap::PiecewiseRegion(parts) => {
                for (_, m) in parts {
                    m.validate()?;
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// The concrete map in force at `x`, unwrapping piecewise maps.
    /// `None` means the agent cannot move.
    pub fn resolve(&self, x: &Point<T>) -> Option<&ImprovementMap<T>> {
        match self {
            ImprovementMap::PiecewiseRegion(parts) => {
                parts.iter().find(|(region, _)| region.contains(x)).and_then(|(_, m)| m.resolve(x))
            }
            ImprovementMap::Stay => None,
            m => Some(m),
        }
    }
}
