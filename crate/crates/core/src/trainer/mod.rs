//! Risk-averse training on synthetic data: a small differentiable model,
//! weighted cross entropy, agents that improve by projected sign-gradient
//! steps, and error-versus-budget sweeps.

mod data;
mod improve;
mod model;
mod sweep;

pub use data::{generate_synthetic, FStarRule, SynthParams, SyntheticDataset};
pub use improve::{evaluate_improvement, pgd_improve, ImproveConfig, PgdLoss, TransitionReport};
pub use model::{gradient_check, loss_and_grad, train, wbce_loss, Arch, Model, TrainConfig, PROB_CLAMP};
pub use sweep::{sweep_budget, sweep_csv, SweepRow, TrainSpec, SWEEP_COLUMNS};
