use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Args;
use flume_core::flume::write_traces_csv;
use flume_core::forces::write_force_csv;
use flume_core::run::{run_scenario_with, RunOutput};
use flume_core::sph::write_snapshot_csv;
use flume_core::{ETA0, T0};

use crate::config::{library_file_name, load_overrides, resolve_scenario, scenario_hash, scenario_toml};
use crate::error::CliError;
use crate::manifest::{RunManifest, StageRecord};

pub const SCENARIO: &str = "scenario.toml";
pub const TRACES: &str = "traces.csv";
pub const STRUCTURE: &str = "structure.csv";
pub const SPH_FORCE: &str = "sph_force.csv";

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Scenario overrides (TOML); unset fields take the validation flume.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub wave_height: Option<f64>,
    #[arg(long)]
    pub dp: Option<f64>,
    #[arg(long)]
    pub duration: Option<f64>,
    #[arg(long)]
    pub output_dt: Option<f64>,
    /// Drop the structure from the flume.
    #[arg(long)]
    pub no_structure: bool,
    /// Write a particle snapshot every k-th output time; 0 disables.
    #[arg(long, default_value_t = 0)]
    pub snapshot_every: usize,
    /// Also store the SPH force history in this force-library directory.
    #[arg(long)]
    pub library: Option<PathBuf>,
    #[arg(short, long)]
    pub out: PathBuf,
}

pub fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(CliError::io(parent))?;
    }
    File::create(path).map(BufWriter::new).map_err(CliError::io(path))
}

/// Write through `f` to `path`, flushing before returning.
pub fn write_with(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<(), CliError> {
    let mut w = create(path)?;
    f(&mut w).and_then(|_| w.flush()).map_err(CliError::io(path))
}

pub fn simulate(args: &SimulateArgs) -> Result<RunOutput, CliError> {
    let mut o = load_overrides(args.config.as_deref())?;
    o.wave_height = args.wave_height.or(o.wave_height);
    o.dp = args.dp.or(o.dp);
    o.duration = args.duration.or(o.duration);
    o.output_dt = args.output_dt.or(o.output_dt);
    if args.no_structure {
        o.no_structure = Some(true);
    }
    let scn = resolve_scenario(&o)?;
    let out = &args.out;
    fs::create_dir_all(out).map_err(CliError::io(out))?;

    let t0 = Instant::now();
    let snap_dir = out.join("snapshots");
    let mut snap_err = None;
    let run = run_scenario_with(&scn, |state, k| {
        if args.snapshot_every > 0 && k % args.snapshot_every == 0 && snap_err.is_none() {
            let path = snap_dir.join(format!("snapshot_{k:05}.csv"));
            if let Err(e) = write_with(&path, |w| write_snapshot_csv(state, w)) {
                snap_err = Some(e);
            }
        }
    })?;
    if let Some(e) = snap_err {
        return Err(e);
    }
    let seconds = t0.elapsed().as_secs_f64();

    fs::write(out.join(SCENARIO), scenario_toml(&scn)).map_err(CliError::io(&out.join(SCENARIO)))?;
    write_with(&out.join(TRACES), |w| write_traces_csv(&run.traces, T0, ETA0, w))?;
    if let (Some(level), Some(force)) = (&run.structure_level, &run.sph_force) {
        write_with(&out.join(STRUCTURE), |w| {
            writeln!(w, "t,eta,veff")?;
            for ((t, e), v) in level.times.iter().zip(&level.eta).zip(&run.veff) {
                writeln!(w, "{t},{e},{v}")?;
            }
            Ok(())
        })?;
        write_with(&out.join(SPH_FORCE), |w| write_force_csv(&[force], T0, w))?;
        if let Some(lib) = &args.library {
            write_with(&lib.join(library_file_name(&scn)), |w| write_force_csv(&[force], T0, w))?;
        }
    }

    let counts = [
        ("fluid_particles", run.fluid_count as u64),
        ("wall_particles", run.wall_count as u64),
        ("piston_particles", run.piston_count as u64),
        ("steps", run.steps),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    RunManifest::record(
        out,
        "simulate",
        StageRecord {
            config_hash: scenario_hash(&scn),
            seed: None,
            scenarios: vec![format!("H={} dp={}", scn.wave_height, scn.dp)],
            seconds: Some(seconds),
            counts,
        },
    )?;
    println!(
        "simulated H = {} m at dp = {} m: {} fluid particles, {} steps, {:.1} s",
        scn.wave_height, scn.dp, run.fluid_count, run.steps, seconds
    );
    Ok(run)
}
