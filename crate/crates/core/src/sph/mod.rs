//! Weakly-compressible SPH engine.
//!
//! Particles carry position, velocity, density, pressure and mass. Pressure is
//! closed with a Tait-type barotropic equation of state, momentum uses the
//! symmetric pressure gradient plus Monaghan artificial viscosity, and the
//! continuity equation carries a hydrostatic-corrected density diffusion term.
//! Walls use dynamic boundary particles: they evolve density through the
//! continuity equation but never move unless prescribed (the piston).

mod eos;
mod grid;
mod integrator;
mod kernel;
mod particle;
mod rates;
mod snapshot;
mod viscosity;
mod wavemaker;

pub use eos::{eos_pressure, hydrostatic_density, sound_speed, FluidConstants};
pub use grid::{CellGrid, Domain};
pub use integrator::{symplectic_position_verlet, verlet_step, SimState, Solver, SolverConfig};
pub use kernel::{wendland_grad_factor, wendland_grad_w, wendland_w, KernelConfig};
pub use particle::{Particle, ParticleKind};
pub use rates::{compute_rates, Rate};
pub use snapshot::write_snapshot_csv;
pub use viscosity::artificial_viscosity;
pub use wavemaker::{wavemaker_trajectory, PistonTrajectory, SolitaryWave};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SphError {
    #[error("non-finite rate on particle {id} at t = {time:.6} s")]
    NonFiniteRate { id: u32, time: f64 },
    #[error("non-positive density {density} on particle {id} at t = {time:.6} s")]
    NonPositiveDensity { id: u32, density: f64, time: f64 },
    #[error("requested dt = {requested:.3e} s exceeds the stable step {stable:.3e} s")]
    CflViolation { requested: f64, stable: f64 },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
}
