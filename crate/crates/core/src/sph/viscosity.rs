use nalgebra::Vector2;

use super::{FluidConstants, KernelConfig};

/// Monaghan artificial viscosity Π_ab.
///
/// Active only for approaching pairs (u_ab·r_ab < 0), where
/// μ_ab = h·(u_ab·r_ab)/(|r_ab|² + 0.01h²) and Π_ab = −α·c̄·μ_ab/ρ̄ ≥ 0.
#[inline]
pub fn artificial_viscosity(
    u_ab: &Vector2<f64>,
    r_ab: &Vector2<f64>,
    rho_mean: f64,
    c_mean: f64,
    cfg: &KernelConfig,
    consts: &FluidConstants,
) -> f64 {
    viscosity_term(
        u_ab.dot(r_ab),
        r_ab.norm_squared(),
        rho_mean,
        c_mean,
        cfg.h,
        consts.alpha_visc,
    )
}

#[inline]
pub(crate) fn viscosity_term(vdotr: f64, r2: f64, rho_mean: f64, c_mean: f64, h: f64, alpha: f64) -> f64 {
    if vdotr >= 0.0 {
        return 0.0;
    }
    let mu = h * vdotr / (r2 + 0.01 * h * h);
    -alpha * c_mean * mu / rho_mean
}
