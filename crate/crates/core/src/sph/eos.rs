use serde::{Deserialize, Serialize};

/// Fluid and closure constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluidConstants {
    /// Reference density ρ0 [kg/m³].
    pub rho0: f64,
    /// Numerical speed of sound c0 [m/s].
    pub c0: f64,
    /// Polytropic index γ.
    pub gamma: f64,
    /// Artificial viscosity coefficient α.
    pub alpha_visc: f64,
    /// Density diffusion coefficient δ.
    pub delta_diff: f64,
    /// Gravitational acceleration magnitude [m/s²], acting along -z.
    pub g: f64,
}

impl FluidConstants {
    /// Water defaults with c0 = 10·√(g·depth) for the given still-water depth.
    pub fn for_depth(depth: f64) -> Self {
        let g = crate::GRAVITY;
        Self {
            rho0: crate::RHO_WATER,
            c0: 10.0 * (g * depth).sqrt(),
            gamma: 7.0,
            alpha_visc: 0.01,
            delta_diff: 0.1,
            g,
        }
    }

    /// Stiffness B = c0²ρ0/γ [Pa].
    #[inline]
    pub fn stiffness(&self) -> f64 {
        self.c0 * self.c0 * self.rho0 / self.gamma
    }
}

/// Barotropic equation of state P = B[(ρ/ρ0)^γ − 1].
#[inline]
pub fn eos_pressure(rho: f64, consts: &FluidConstants) -> f64 {
    consts.stiffness() * ((rho / consts.rho0).powf(consts.gamma) - 1.0)
}

/// Local sound speed c = c0·(ρ/ρ0)^((γ−1)/2).
#[inline]
pub fn sound_speed(rho: f64, consts: &FluidConstants) -> f64 {
    consts.c0 * (rho / consts.rho0).powf(0.5 * (consts.gamma - 1.0))
}

/// Density giving hydrostatic pressure ρ0·g·depth through the EOS.
pub fn hydrostatic_density(depth: f64, consts: &FluidConstants) -> f64 {
    let p = consts.rho0 * consts.g * depth;
    consts.rho0 * (1.0 + p / consts.stiffness()).powf(1.0 / consts.gamma)
}
