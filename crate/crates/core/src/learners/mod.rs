//! Learners for the improvement setting: conservative thresholds, the
//! closure algorithm, the singleton-positive learner and shifted halfspaces.

mod closure;
mod halfspace;
mod nnls;
mod region;
mod simple;

pub use closure::{closure_learn, mask_labels, to_mask, ClosureOperator, FiniteClass};
pub use halfspace::{
    consistent_direction, learn_halfspace_shifted, pos_agreement_certificate, pos_agreement_member, HalfspaceFit,
    PosCertificate, PERCEPTRON_UPDATE_CAP,
};
pub use nnls::nnls;
pub use region::{
    improvement_region_closed_form, improvement_region_mass, in_improvement_region, ImprovementRegionReport,
};
pub use simple::{learn_singleton_positive, learn_threshold_conservative};
