//! Instance space, hypotheses, improvement maps and the loss semantics.

mod distribution;
mod hypothesis;
mod improvement;
mod line_exact;
mod loss;
mod point;
pub mod reach;

pub use distribution::{sample_sphere, DistributionSpec};
pub use hypothesis::Hypothesis;
pub use improvement::{ImprovementMap, InstanceSpace, Region};
pub use line_exact::uniform_line_loss;
pub use loss::{
    enabling_loss, improvement_loss, improvement_loss_with, pointwise_loss, population_loss_exact, population_loss_mc,
    population_loss_mc_with, strategic_loss, strategic_loss_with, LossKind, ReactionCase, ReactionOutcome,
};
pub use point::{LabeledExample, Point};
pub use reach::{EvalOptions, Reach, DEFAULT_GRID_RESOLUTION};
