use nalgebra::Vector2;
use rayon::prelude::*;

use super::viscosity::viscosity_term;
use super::{sound_speed, wendland_grad_factor, CellGrid, FluidConstants, KernelConfig, Particle, SphError};

/// Time derivatives for one particle.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Rate {
    /// dρ/dt [kg/m³/s].
    pub drho: f64,
    /// du/dt [m/s²]; zero for wall particles.
    pub accel: Vector2<f64>,
}

/// Continuity and momentum rates for every particle.
///
/// Gather pattern: each particle sums over its own neighbours in the fixed
/// order produced by the cell grid, so the result does not depend on how the
/// outer loop is scheduled across threads.
///
/// * fluid: dρ/dt = ρ_a Σ V_b u_ab·∇_aW_ab + δhc0 Σ V_b 2ψ_ab (r_ab·∇_aW_ab)/|r_ab|²,
///   du/dt = −Σ m_b ((P_a + P_b)/(ρ_aρ_b) + Π_ab) ∇_aW_ab + g.
///   Diffusion acts between fluid pairs only. ψ_ab is the dynamic density
///   difference [(P_a − P_b) − ρ0g(z_b − z_a)]/c̄_ab², which vanishes on the
///   hydrostatic initial state.
/// * walls: continuity against fluid neighbours only; no acceleration.
///
/// Pressures are read from the particles and must be current.
pub fn compute_rates(
    particles: &[Particle],
    grid: &CellGrid,
    cfg: &KernelConfig,
    consts: &FluidConstants,
    time: f64,
) -> Result<Vec<Rate>, SphError> {
    let sound: Vec<f64> = particles.iter().map(|p| sound_speed(p.density, consts)).collect();
    let support2 = cfg.support_radius().powi(2);
    let h = cfg.h;
    let diff_coeff = consts.delta_diff * h * consts.c0;
    let hydro_dp = consts.rho0 * consts.g;
    let gravity = Vector2::new(0.0, -consts.g);

    let rates: Vec<Rate> = (0..particles.len())
        .into_par_iter()
        .with_min_len(128)
        .map(|a| {
            let pa = &particles[a];
            if pa.excluded {
                return Rate::default();
            }
            let fluid_a = pa.kind.is_fluid();
            let mut cont = 0.0;
            let mut diff = 0.0;
            let mut acc = Vector2::zeros();
            let p_over_rho_a = pa.pressure / pa.density;
            grid.for_each_candidate(&pa.position, |b| {
                if b == a {
                    return;
                }
                let pb = &particles[b];
                let fluid_b = pb.kind.is_fluid();
                if !fluid_a && !fluid_b {
                    return;
                }
                let r_ab = pa.position - pb.position;
                let r2 = r_ab.norm_squared();
                if r2 >= support2 || r2 == 0.0 {
                    return;
                }
                let fac = wendland_grad_factor(r2.sqrt(), cfg);
                let u_ab = pa.velocity - pb.velocity;
                let vdotr = u_ab.dot(&r_ab);
                let vol_b = pb.mass / pb.density;
                // u_ab·∇W = vdotr·fac
                cont += vol_b * vdotr * fac;
                if !fluid_a {
                    return;
                }
                let rho_mean = 0.5 * (pa.density + pb.density);
                let c_mean = 0.5 * (sound[a] + sound[b]);
                if fluid_b {
                    // ψ_ab (r_ab·∇W)/r² = 2·ψ_ab·fac, with the dynamic density
                    // difference taken through the pressure so that the
                    // hydrostatic state is removed exactly
                    let dyn_p = (pa.pressure - pb.pressure) - hydro_dp * (pb.position.y - pa.position.y);
                    diff += vol_b * 2.0 * dyn_p / (c_mean * c_mean) * fac;
                }
                let visc = viscosity_term(vdotr, r2, rho_mean, c_mean, h, consts.alpha_visc);
                let press = p_over_rho_a / pb.density + pb.pressure / (pa.density * pb.density);
                acc -= r_ab * (pb.mass * (press + visc) * fac);
            });
            let mut drho = pa.density * cont;
            if fluid_a {
                drho += diff_coeff * diff;
                acc += gravity;
            }
            Rate { drho, accel: acc }
        })
        .collect();

    if let Some((i, _)) = rates
        .iter()
        .enumerate()
        .find(|(_, r)| !(r.drho.is_finite() && r.accel.x.is_finite() && r.accel.y.is_finite()))
    {
        return Err(SphError::NonFiniteRate {
            id: particles[i].id,
            time,
        });
    }
    Ok(rates)
}
