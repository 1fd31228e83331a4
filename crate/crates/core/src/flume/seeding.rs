use nalgebra::Vector2;

use super::{FlumeError, FlumeScenario};
use crate::sph::{
    hydrostatic_density, Domain, FluidConstants, Particle, ParticleKind, PistonTrajectory, SimState, SolitaryWave,
    Solver, SolverConfig,
};

/// Boundary particles making up the structure, with the two faces that carry
/// horizontal load.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureBox {
    pub x_min: f64,
    pub x_max: f64,
    pub z_min: f64,
    pub z_max: f64,
    /// Transverse width for slice-to-3-D force scaling [m].
    pub width_y: f64,
    /// Outermost particle column facing upstream.
    pub upstream_face: Vec<usize>,
    /// Outermost particle column facing downstream.
    pub downstream_face: Vec<usize>,
    /// Every particle of the structure.
    pub members: Vec<usize>,
}

/// Seeded particles plus the pieces needed to run them.
#[derive(Debug, Clone)]
pub struct SeededFlume {
    pub state: SimState,
    pub structure: Option<StructureBox>,
    pub solver: Solver,
    pub fluid_count: usize,
    pub wall_count: usize,
    pub piston_count: usize,
}

/// Lattice coordinate (i + ½)·dp.
#[inline]
fn lattice(i: i64, dp: f64) -> f64 {
    (i as f64 + 0.5) * dp
}

/// Fluid constants for a scenario; a dry flume falls back to the wave height
/// for the sound speed.
pub(crate) fn fluid_constants(scn: &FlumeScenario) -> FluidConstants {
    let depth = if scn.still_water_depth > 0.0 {
        scn.still_water_depth
    } else {
        scn.wave_height
    };
    FluidConstants::for_depth(depth)
}

/// Seed fluid, wall, piston and structure particles on a common lattice of
/// spacing dp.
///
/// Walls fill `wall_layers` lattice rows below the bed line and behind the
/// paddle and end wall, so the first fluid row sits dp/2 above the bed. Fluid
/// and walls below still water start from hydrostatic density.
pub fn seed_particles(scn: &FlumeScenario) -> Result<SeededFlume, FlumeError> {
    scn.validate()?;
    let dp = scn.dp;
    let layers = scn.wall_layers as i64;
    let d = scn.still_water_depth;
    let length = scn.total_length();
    let consts = fluid_constants(scn);
    let mass = consts.rho0 * dp * dp;
    let structure_top = scn.structure.map_or(0.0, |s| scn.terrace_height + s.height);
    let wall_top = scn.piston_top().max(structure_top) + 2.0 * dp;
    let density_at = |z: f64| {
        if z < d {
            hydrostatic_density(d - z, &consts)
        } else {
            consts.rho0
        }
    };

    let mut particles = Vec::new();
    let push = |kind: ParticleKind, x: f64, z: f64, particles: &mut Vec<Particle>| {
        let id = particles.len() as u32;
        particles.push(Particle::new(id, kind, Vector2::new(x, z), density_at(z), mass));
        particles.len() - 1
    };

    let i_end = (length / dp - 0.5).ceil() as i64; // first column with x > length
    let j_top = (wall_top / dp).ceil() as i64;

    // bed, under the paddle and the end wall as well
    let mut counts = [0usize; 3];
    for i in -(layers + 2)..(i_end + layers) {
        let x = lattice(i, dp);
        let zb = scn.bed_elevation(x);
        let j_hi = (zb / dp - 0.5).floor() as i64;
        for j in (j_hi - layers + 1)..=j_hi {
            let z = lattice(j, dp);
            if z <= zb && z > zb - layers as f64 * dp {
                push(ParticleKind::WallFixed, x, z, &mut particles);
                counts[1] += 1;
            }
        }
    }
    // paddle
    for i in -layers..0 {
        let x = lattice(i, dp);
        for j in 0..j_top {
            let z = lattice(j, dp);
            if z <= scn.piston_top() + 1e-9 {
                push(ParticleKind::WallPiston, x, z, &mut particles);
                counts[2] += 1;
            }
        }
    }
    // end wall
    for i in i_end..(i_end + layers) {
        let x = lattice(i, dp);
        let zb = scn.bed_elevation(x);
        for j in 0..j_top {
            let z = lattice(j, dp);
            if z > zb && z <= wall_top {
                push(ParticleKind::WallFixed, x, z, &mut particles);
                counts[1] += 1;
            }
        }
    }
    // structure
    let mut structure = None;
    if let (Some(spec), Some((x0, x1))) = (scn.structure, scn.structure_x_range()) {
        let z0 = scn.terrace_height;
        let z1 = z0 + spec.height;
        let mut members = Vec::new();
        let mut cols: Vec<(i64, usize)> = Vec::new();
        for i in 0..i_end {
            let x = lattice(i, dp);
            if x < x0 || x > x1 {
                continue;
            }
            for j in 0..j_top {
                let z = lattice(j, dp);
                if z > z0 && z <= z1 {
                    let idx = push(ParticleKind::WallFixed, x, z, &mut particles);
                    members.push(idx);
                    cols.push((i, idx));
                    counts[1] += 1;
                }
            }
        }
        if members.is_empty() {
            return Err(FlumeError::InvalidGeometry(
                "structure is thinner than one particle spacing".into(),
            ));
        }
        let i_min = cols.iter().map(|c| c.0).min().unwrap();
        let i_max = cols.iter().map(|c| c.0).max().unwrap();
        structure = Some(StructureBox {
            x_min: x0,
            x_max: x1,
            z_min: z0,
            z_max: z1,
            width_y: spec.width_y,
            upstream_face: cols.iter().filter(|c| c.0 == i_min).map(|c| c.1).collect(),
            downstream_face: cols.iter().filter(|c| c.0 == i_max).map(|c| c.1).collect(),
            members,
        });
    }
    // fluid
    let inside_structure = |x: f64, z: f64| {
        structure
            .as_ref()
            .is_some_and(|s: &StructureBox| x >= s.x_min && x <= s.x_max && z > s.z_min && z <= s.z_max)
    };
    if d > 0.0 {
        for i in 0..i_end {
            let x = lattice(i, dp);
            if x >= length {
                continue;
            }
            let zb = scn.bed_elevation(x);
            let mut j = 0;
            loop {
                let z = lattice(j, dp);
                if z >= d {
                    break;
                }
                if z > zb && !inside_structure(x, z) {
                    push(ParticleKind::Fluid, x, z, &mut particles);
                    counts[0] += 1;
                }
                j += 1;
            }
        }
    }

    let config = SolverConfig {
        fluid: consts,
        ..SolverConfig::new(dp, d.max(scn.wave_height))
    };
    let margin = 2.0 * config.kernel.support_radius();
    let domain = Domain::new(
        Vector2::new(-(layers as f64 + 3.0) * dp - margin, -(layers as f64) * dp - margin),
        Vector2::new(length + (layers as f64 + 1.0) * dp + margin, wall_top + 2.0),
    );
    let wave = SolitaryWave::new(scn.wave_height, d);
    let piston = if d > 0.0 {
        let ramp = scn.piston_ramp.unwrap_or_else(|| wave.default_ramp());
        PistonTrajectory::rayleigh(&wave, ramp, scn.duration + 1.0, 1e-3)
    } else {
        PistonTrajectory::stationary()
    };
    let state = SimState::new(particles, domain, config.kernel.support_radius());
    Ok(SeededFlume {
        state,
        structure,
        solver: Solver::new(config, piston),
        fluid_count: counts[0],
        wall_count: counts[1],
        piston_count: counts[2],
    })
}
