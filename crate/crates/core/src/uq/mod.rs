//! Forward uncertainty quantification: random-variable specs, Latin
//! Hypercube Sampling, propagation through the shear frame, Gaussian KDE and
//! Tukey boxplot statistics.

mod boxplot;
mod dist;
mod kde;
mod lhs;
mod propagate;

pub use boxplot::{boxplot_stats, quantile, BoxplotStats};
pub use dist::{cdf, inverse_cdf, normal_quantile, Distribution, RandomVariableSpec};
pub use kde::{kde_estimate, silverman_bandwidth, ResponseDistribution};
pub use lhs::{lhs_sample, SampleMatrix};
pub use propagate::{
    distribution_study, load_factor_specs, mean_structural_specs, propagate, structural_specs, wave_height_spec,
    EdpRow, LoadLibrary, PropagationConfig, PropagationResult, StudyGroup, LOAD_FACTOR, WAVE_HEIGHT,
};

use thiserror::Error;

use crate::structure::StructuralError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UqError {
    #[error("invalid random variable '{name}': {reason}")]
    InvalidSpec { name: String, reason: String },
    #[error("probability {0} outside (0, 1)")]
    DomainError(f64),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("{failed} of {total} samples failed")]
    TooManyFailures { failed: usize, total: usize },
    #[error("no force history for wave height {0} m")]
    MissingLoad(f64),
    #[error(transparent)]
    Structural(#[from] StructuralError),
}
