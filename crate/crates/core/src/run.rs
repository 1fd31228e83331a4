//! Drive a seeded flume to the end of its scenario and record gauge traces,
//! the SPH structure force and the flow speed in front of the structure.

use thiserror::Error;

use crate::flume::{sample_gauge, seed_particles, FlumeError, FlumeScenario, GaugeSpec, GaugeTrace, SeededFlume};
use crate::forces::{effective_velocity, sph_structure_force, Estimator, ForceRecord};
use crate::sph::{SimState, SphError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RunError {
    #[error(transparent)]
    Flume(#[from] FlumeError),
    #[error(transparent)]
    Solver(#[from] SphError),
}

/// Gauge position used for the water level at the structure when the
/// scenario has no gauge with this id.
pub const STRUCTURE_GAUGE: &str = "WG8";

/// Everything recorded during a run, sampled at the scenario output cadence
/// unless a gauge asks for a coarser one.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub traces: Vec<GaugeTrace>,
    /// Present when the scenario has a structure.
    pub sph_force: Option<ForceRecord>,
    /// Water level at the structure gauge, on the output cadence.
    pub structure_level: Option<GaugeTrace>,
    /// Effective velocity aligned with `structure_level`.
    pub veff: Vec<f64>,
    pub fluid_count: usize,
    pub wall_count: usize,
    pub piston_count: usize,
    pub steps: u64,
}

/// Run a scenario with no per-output callback.
pub fn run_scenario(scn: &FlumeScenario) -> Result<RunOutput, RunError> {
    run_scenario_with(scn, |_, _| {})
}

/// Run a scenario, calling `observer(state, k)` at the k-th output time.
pub fn run_scenario_with(
    scn: &FlumeScenario,
    mut observer: impl FnMut(&SimState, usize),
) -> Result<RunOutput, RunError> {
    let SeededFlume {
        mut state,
        structure,
        solver,
        fluid_count,
        wall_count,
        piston_count,
    } = seed_particles(scn)?;
    let d = scn.still_water_depth;
    let dp = scn.dp;
    let half = scn.gauge_half_width();
    let reach = solver.config.kernel.support_radius();

    let mut traces: Vec<GaugeTrace> = scn.gauges.iter().map(|g| GaugeTrace::new(g, d)).collect();
    let mut next_gauge: Vec<f64> = vec![0.0; scn.gauges.len()];
    let level_spec = structure.as_ref().map(|s| {
        scn.gauge(STRUCTURE_GAUGE).cloned().unwrap_or(GaugeSpec {
            id: STRUCTURE_GAUGE.into(),
            x_position: s.x_min - 0.3,
            sampling_dt: scn.output_dt,
        })
    });
    let mut level = level_spec.as_ref().map(|g| GaugeTrace::new(g, d));
    let mut force = structure.as_ref().map(|_| ForceRecord::new(Estimator::Sph));
    let mut veff = Vec::new();

    let n_out = (scn.duration / scn.output_dt).round() as usize;
    let mut k = 0usize;
    loop {
        let t_out = k as f64 * scn.output_dt;
        if state.time >= t_out - 1e-9 {
            let t = state.time;
            for ((g, tr), next) in scn.gauges.iter().zip(&mut traces).zip(&mut next_gauge) {
                if t >= *next - 1e-9 {
                    tr.push(t, sample_gauge(&state, g, d, half));
                    *next += g.sampling_dt.max(scn.output_dt);
                }
            }
            if let (Some(s), Some(f), Some(lv), Some(ls)) =
                (structure.as_ref(), force.as_mut(), level.as_mut(), level_spec.as_ref())
            {
                f.push(t, sph_structure_force(&state, s, dp, reach));
                lv.push(t, sample_gauge(&state, ls, d, half));
                veff.push(effective_velocity(&state, s, dp));
            }
            observer(&state, k);
            if k == n_out {
                break;
            }
            k += 1;
            continue;
        }
        let stable = solver.stable_dt(&mut state)?;
        let remaining = t_out - state.time;
        let dt = if stable >= remaining {
            remaining
        } else if stable > 0.5 * remaining {
            // split evenly rather than leave a sliver before the output time
            0.5 * remaining
        } else {
            stable
        };
        solver.step(&mut state, dt)?;
    }

    Ok(RunOutput {
        traces,
        sph_force: force,
        structure_level: level,
        veff,
        fluid_count,
        wall_count,
        piston_count,
        steps: state.step_count,
    })
}
