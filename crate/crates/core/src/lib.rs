//! Desk-scale digital wave flume.
//!
//! A two-dimensional weakly-compressible SPH solver propagates solitary waves
//! generated by a piston wavemaker along a flume with a sloping beach and a
//! box structure on the terrace. Horizontal wave loads on the structure are
//! extracted with three estimators, fed one-way into a lumped-mass nonlinear
//! shear-frame model, and the resulting demand parameters are propagated
//! through Latin Hypercube Sampling and kernel density estimation.
//!
//! Module map:
//!
//! * [`sph`] - kernel, equation of state, rates, symplectic stepping, wavemaker.
//! * [`flume`] - scenario geometry, particle seeding, wave gauges, scenario catalogue.
//! * [`forces`] - SPH, ASCE and semi-empirical wave loads, Froude diagnostics.
//! * [`run`] - drives a scenario to completion and records gauges and loads.
//! * [`structure`] - shear-frame surrogate, Newmark integration, EDP extraction.
//! * [`uq`] - random variables, LHS, forward propagation, KDE, boxplot statistics.

pub mod flume;
pub mod forces;
pub mod run;
pub mod sph;
pub mod structure;
pub mod uq;

pub use flume::{FlumeScenario, GaugeSpec, GaugeTrace};
pub use forces::{Estimator, ForceRecord};
pub use sph::{FluidConstants, KernelConfig, Particle, ParticleKind, SimState};
pub use structure::{EdpResult, ShearFrameModel, StructuralParams};
pub use uq::{RandomVariableSpec, ResponseDistribution, SampleMatrix};

/// Gravitational acceleration used throughout [m/s²].
pub const GRAVITY: f64 = 9.81;

/// Reference water density [kg/m³].
pub const RHO_WATER: f64 = 1000.0;

/// Characteristic wave height used to normalise gauge traces [m].
pub const ETA0: f64 = 0.4;

/// Characteristic time, wavelength over celerity of the 0.4 m wave [s].
pub const T0: f64 = 2.747;

/// Characteristic force, the SPH peak of the 0.4 m wave [N].
pub const F0: f64 = 695.0;
