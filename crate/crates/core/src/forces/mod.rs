//! Horizontal wave load on the structure from three independent estimators,
//! plus Froude-number diagnostics.

mod asce;
mod froude;
mod record;
mod semi_empirical;
mod sph_force;

pub use asce::{asce_envelope_record, asce_force_per_length, asce_force_record, asce_pressure, AsceParams};
pub use froude::{froude_number, FlowRegime, Froude};
pub use record::{read_force_csv, write_force_csv, Estimator, ForceRecord};
pub use semi_empirical::{dynamic_force, semi_empirical_force, static_force, SemiEmpiricalParams};
pub use sph_force::{effective_velocity, sph_structure_force};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ForceError {
    #[error("pressure coefficient Cp = {0} outside [1.6, 3.5]")]
    CoefficientOutOfRange(f64),
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("trace lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("depth must be positive, got {0}")]
    NonPositiveDepth(f64),
    #[error("malformed force file: {0}")]
    Malformed(String),
}
