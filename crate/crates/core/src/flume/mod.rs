//! Flume geometry, particle seeding, wave gauges and the wave-paddle catalogue.
//!
//! The default scenario is the tsunami flume used for validation: a 14.05 m
//! flat bed, a 1:10 beach over 7.95 m, and an 8 m terrace at 0.795 m carrying a
//! 0.4 m × 0.5 m box structure 0.79 m past the slope toe, with 0.75 m of still
//! water. The simulation is a unit-width longitudinal x–z slice.

mod catalogue;
mod gauges;
mod scenario;
mod seeding;

pub use catalogue::{scenario_catalogue, CatalogueEntry};
pub use gauges::{read_traces_csv, sample_gauge, write_traces_csv, GaugeTrace};
pub use scenario::{build_scenario, default_gauges, FlumeScenario, GaugeSpec, ScenarioOverrides, StructureSpec};
pub use seeding::{seed_particles, SeededFlume, StructureBox};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlumeError {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("resolution too coarse: H/dp = {ratio:.3} < 4")]
    ResolutionTooCoarse { ratio: f64 },
    #[error("malformed trace file: {0}")]
    MalformedTrace(String),
}
