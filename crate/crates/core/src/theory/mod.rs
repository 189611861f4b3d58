//! Brute-force oracles and runnable separation constructions.

pub mod catalogue;
mod hardness;
mod scenarios;
mod svc;

pub use catalogue::{catalogue, catalogue_json, lookup, Expectation, ExpectationOp, ScenarioEntry};
pub use hardness::{demo_class, find_hardness_construction, HardnessConstruction, MinMaxTable};
pub use scenarios::{
    outer_quarters_map, quarter_ball_map, quarter_ball_svc_problem, run_counterexample, singleton_sample_size,
    Counterexample, CounterexampleReport, OuterMoves, ScenarioId, TrialOutcome,
};
pub use svc::{
    materialize_reaction_set, post_reaction_label, shattering_coefficient, svc_dimension, svc_shattering_coefficient,
    two_interval_family, vc_labelings, FiniteProblem, MAX_PROBLEM_POINTS, MAX_TUPLE,
};
