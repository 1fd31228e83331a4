//! Lumped-mass nonlinear shear-frame surrogate driven one-way by wave-load
//! histories, with average-acceleration Newmark integration and demand
//! parameter extraction.

mod edp;
mod frame;
mod newmark;

pub use edp::{extract_edp, rms, EdpResult};
pub use frame::{build_frame, load_fractions, story_loads, FrameGeometry, ShearFrameModel, StructuralParams};
pub use newmark::{newmark_response, newmark_response_from, BilinearSpring};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StructuralError {
    #[error("invalid structural parameters: {0}")]
    InvalidParams(String),
    #[error("Newton iteration did not converge at step {step}")]
    NonConvergence { step: usize },
    #[error("time step {dt} exceeds T1/20 = {limit}")]
    TimestepTooCoarse { dt: f64, limit: f64 },
    #[error("empty response history")]
    EmptyHistory,
}
