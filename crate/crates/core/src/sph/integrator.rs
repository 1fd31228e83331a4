use nalgebra::Vector2;

use super::{
    compute_rates, eos_pressure, CellGrid, Domain, FluidConstants, KernelConfig, Particle, ParticleKind,
    PistonTrajectory, Rate, SphError,
};

/// Solver settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub kernel: KernelConfig,
    pub fluid: FluidConstants,
    /// Courant factor applied to both the acoustic and the force limit.
    pub cfl: f64,
    /// Clamp wall densities at ρ0 from below.
    pub wall_density_floor: bool,
}

impl SolverConfig {
    pub fn new(dp: f64, still_water_depth: f64) -> Self {
        Self {
            kernel: KernelConfig::from_spacing(dp),
            fluid: FluidConstants::for_depth(still_water_depth),
            cfl: 0.2,
            wall_density_floor: true,
        }
    }
}

/// Complete simulation state. Owned by one simulation at a time.
#[derive(Debug, Clone)]
pub struct SimState {
    pub particles: Vec<Particle>,
    pub time: f64,
    pub step_count: u64,
    pub domain: Domain,
    pub grid: CellGrid,
    /// Rates at the current state, cached between steps.
    rates: Option<Vec<Rate>>,
}

impl SimState {
    /// Build a state; the cell size must be the kernel support radius.
    pub fn new(particles: Vec<Particle>, domain: Domain, cell_size: f64) -> Self {
        let mut grid = CellGrid::new(&domain, cell_size);
        grid.rebuild(&particles);
        Self {
            particles,
            time: 0.0,
            step_count: 0,
            domain,
            grid,
            rates: None,
        }
    }

    pub fn fluid(&self) -> impl Iterator<Item = &Particle> {
        self.particles.iter().filter(|p| p.kind.is_fluid() && !p.excluded)
    }

    pub fn fluid_count(&self) -> usize {
        self.fluid().count()
    }

    pub fn total_mass(&self) -> f64 {
        self.particles.iter().map(|p| p.mass).sum()
    }

    /// Σ m u over active fluid particles.
    pub fn fluid_momentum(&self) -> Vector2<f64> {
        self.fluid().map(|p| p.velocity * p.mass).sum()
    }

    /// Cached rates, if the state has been stepped or prepared.
    pub fn rates(&self) -> Option<&[Rate]> {
        self.rates.as_deref()
    }

    /// Drop cached rates after external edits to the particles.
    pub fn invalidate(&mut self) {
        self.grid.rebuild(&self.particles);
        self.rates = None;
    }

    fn refresh_pressures(&mut self, consts: &FluidConstants) {
        for p in &mut self.particles {
            p.pressure = eos_pressure(p.density, consts);
        }
    }
}

/// Symplectic stepper with a prescribed piston trajectory.
#[derive(Debug, Clone)]
pub struct Solver {
    pub config: SolverConfig,
    pub piston: PistonTrajectory,
}

impl Solver {
    pub fn new(config: SolverConfig, piston: PistonTrajectory) -> Self {
        Self { config, piston }
    }

    /// Make pressures current and compute the rates at the present state.
    pub fn prepare(&self, state: &mut SimState) -> Result<(), SphError> {
        if state.rates.is_none() {
            state.refresh_pressures(&self.config.fluid);
            let rates = compute_rates(
                &state.particles,
                &state.grid,
                &self.config.kernel,
                &self.config.fluid,
                state.time,
            )?;
            state.rates = Some(rates);
        }
        Ok(())
    }

    /// dt = CFL · min(h/(c0 + |u|max), √(h/|a|max)).
    pub fn stable_dt(&self, state: &mut SimState) -> Result<f64, SphError> {
        self.prepare(state)?;
        let h = self.config.kernel.h;
        let rates = state.rates.as_ref().expect("prepared");
        let mut umax: f64 = 0.0;
        let mut amax: f64 = 0.0;
        for (p, r) in state.particles.iter().zip(rates) {
            if p.excluded {
                continue;
            }
            umax = umax.max(p.velocity.norm());
            if p.kind.is_fluid() {
                amax = amax.max(r.accel.norm());
            }
        }
        let acoustic = h / (self.config.fluid.c0 + umax);
        let force = if amax > 0.0 { (h / amax).sqrt() } else { f64::INFINITY };
        Ok(self.config.cfl * acoustic.min(force))
    }

    /// Advance by `dt` with the symplectic position Verlet scheme.
    ///
    /// Predictor from the rates at step n:
    /// r^{n+½} = r^n + ½Δt u^n, u^{n+½} = u^n + ½Δt a^n, ρ^{n+½} = ρ^n + ½Δt D^n.
    /// Corrector from the rates at n+½:
    /// u^{n+1} = u^n + Δt a^{n+½}, r^{n+1} = r^n + ½Δt (u^n + u^{n+1}),
    /// ρ^{n+1} = ρ^n (2 − ε)/(2 + ε) with ε = −Δt D^{n+½}/ρ^{n+½}.
    /// Hence r^{n+1} = r^n + Δt u^n + ½Δt² a^{n+½}. Fixed walls evolve density
    /// only; the piston follows its trajectory.
    pub fn step(&self, state: &mut SimState, dt: f64) -> Result<(), SphError> {
        let stable = self.stable_dt(state)?;
        if dt > stable * (1.0 + 1e-9) {
            return Err(SphError::CflViolation { requested: dt, stable });
        }
        let rates = state.rates.take().expect("prepared");
        let t0 = state.time;
        let t_half = t0 + 0.5 * dt;
        let t_new = t0 + dt;
        let start: Vec<(Vector2<f64>, Vector2<f64>, f64)> = state
            .particles
            .iter()
            .map(|p| (p.position, p.velocity, p.density))
            .collect();
        let x_p0 = self.piston.displacement(t0);

        for (p, r) in state.particles.iter_mut().zip(&rates) {
            if p.excluded {
                continue;
            }
            p.density += 0.5 * dt * r.drho;
            match p.kind {
                ParticleKind::Fluid => {
                    p.position += 0.5 * dt * p.velocity;
                    p.velocity += 0.5 * dt * r.accel;
                }
                ParticleKind::WallFixed => {}
                ParticleKind::WallPiston => {
                    p.position.x += self.piston.displacement(t_half) - x_p0;
                    p.velocity = Vector2::new(self.piston.velocity(t_half), 0.0);
                }
            }
        }
        self.enforce_density(state, t_half)?;
        state.grid.rebuild(&state.particles);
        let mid = compute_rates(
            &state.particles,
            &state.grid,
            &self.config.kernel,
            &self.config.fluid,
            t_half,
        )?;

        for ((p, r), (x0, u0, rho0)) in state.particles.iter_mut().zip(&mid).zip(&start) {
            if p.excluded {
                continue;
            }
            let eps = -dt * r.drho / p.density;
            p.density = rho0 * (2.0 - eps) / (2.0 + eps);
            match p.kind {
                ParticleKind::Fluid => {
                    p.velocity = u0 + dt * r.accel;
                    p.position = x0 + 0.5 * dt * (u0 + p.velocity);
                    if !state.domain.contains(&p.position) {
                        p.excluded = true;
                    }
                }
                ParticleKind::WallFixed => {}
                ParticleKind::WallPiston => {
                    p.position.x = x0.x + self.piston.displacement(t_new) - x_p0;
                    p.velocity = Vector2::new(self.piston.velocity(t_new), 0.0);
                }
            }
        }
        self.enforce_density(state, t_new)?;
        state.grid.rebuild(&state.particles);
        state.time = t_new;
        state.step_count += 1;
        self.prepare(state)
    }

    fn enforce_density(&self, state: &mut SimState, time: f64) -> Result<(), SphError> {
        let consts = &self.config.fluid;
        for p in &mut state.particles {
            if p.excluded {
                continue;
            }
            if !p.kind.is_fluid() && self.config.wall_density_floor && p.density < consts.rho0 {
                p.density = consts.rho0;
            }
            if !(p.density > 0.0) {
                return Err(SphError::NonPositiveDensity {
                    id: p.id,
                    density: p.density,
                    time,
                });
            }
            p.pressure = eos_pressure(p.density, consts);
        }
        Ok(())
    }
}

/// One solver step; see [`Solver::step`].
pub fn verlet_step(solver: &Solver, state: &mut SimState, dt: f64) -> Result<(), SphError> {
    solver.step(state, dt)
}

/// The same predictor–corrector on a generic system x'' = f(x, v).
pub fn symplectic_position_verlet(x: &mut [f64], v: &mut [f64], dt: f64, force: impl Fn(&[f64], &[f64]) -> Vec<f64>) {
    let a0 = force(x, v);
    let xh: Vec<f64> = x.iter().zip(v.iter()).map(|(x, v)| x + 0.5 * dt * v).collect();
    let vh: Vec<f64> = v.iter().zip(&a0).map(|(v, a)| v + 0.5 * dt * a).collect();
    let ah = force(&xh, &vh);
    for ((xi, vi), ai) in x.iter_mut().zip(v.iter_mut()).zip(&ah) {
        let v_new = *vi + dt * ai;
        *xi += 0.5 * dt * (*vi + v_new);
        *vi = v_new;
    }
}
