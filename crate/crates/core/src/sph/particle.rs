use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParticleKind {
    Fluid,
    WallFixed,
    WallPiston,
}

impl ParticleKind {
    #[inline]
    pub fn is_fluid(self) -> bool {
        matches!(self, ParticleKind::Fluid)
    }

    pub fn label(self) -> &'static str {
        match self {
            ParticleKind::Fluid => "fluid",
            ParticleKind::WallFixed => "wall",
            ParticleKind::WallPiston => "piston",
        }
    }
}

/// One SPH particle in the x–z plane (unit-width slice).
#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub id: u32,
    pub kind: ParticleKind,
    pub position: Vector2<f64>,
    pub velocity: Vector2<f64>,
    pub density: f64,
    pub pressure: f64,
    /// Mass per unit width [kg/m].
    pub mass: f64,
    /// Set once a fluid particle leaves the domain; excluded particles take no
    /// further part in the interaction loop.
    pub excluded: bool,
}

impl Particle {
    pub fn new(id: u32, kind: ParticleKind, position: Vector2<f64>, density: f64, mass: f64) -> Self {
        Self {
            id,
            kind,
            position,
            velocity: Vector2::zeros(),
            density,
            pressure: 0.0,
            mass,
            excluded: false,
        }
    }

    #[inline]
    pub fn volume(&self) -> f64 {
        self.mass / self.density
    }
}
