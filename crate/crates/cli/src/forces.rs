use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Args;
use flume_core::flume::{FlumeScenario, GaugeSpec, GaugeTrace};
use flume_core::forces::{
    asce_envelope_record, asce_force_record, froude_number, read_force_csv, semi_empirical_force, write_force_csv,
    AsceParams, Estimator, FlowRegime, ForceRecord, SemiEmpiricalParams,
};
use flume_core::run::STRUCTURE_GAUGE;
use flume_core::{GRAVITY, T0};

use crate::config::{read_toml, scenario_hash};
use crate::error::CliError;
use crate::manifest::{sha256_hex, RunManifest, StageRecord};
use crate::simulate::{write_with, SCENARIO, SPH_FORCE, STRUCTURE};

pub const COMPARISON: &str = "force_comparison.csv";
pub const PEAKS: &str = "force_peaks.csv";
pub const FROUDE: &str = "froude.csv";

#[derive(Debug, Args)]
pub struct ForcesArgs {
    /// Run directories written by `simulate`.
    #[arg(required = true)]
    pub runs: Vec<PathBuf>,
    /// Estimators to evaluate.
    #[arg(long, value_delimiter = ',', default_value = "sph,asce,semi")]
    pub estimators: Vec<Estimator>,
    /// ASCE pressure coefficient.
    #[arg(long, default_value_t = 1.6)]
    pub cp: f64,
    /// Unit weight of water [N/m³].
    #[arg(long, default_value_t = 9810.0)]
    pub gamma_w: f64,
    /// Evaluate ASCE once at this still-water depth instead of following the
    /// gauge depth; the record is then a single row at the wave crest.
    #[arg(long)]
    pub asce_ds: Option<f64>,
    /// Directory for the cross-run Froude and peak-force summary.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

/// Peak values of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunForces {
    pub wave_height: f64,
    pub records: Vec<ForceRecord>,
    pub veff_max: f64,
    pub froude: f64,
    pub regime: FlowRegime,
}

fn regime_label(r: FlowRegime) -> &'static str {
    match r {
        FlowRegime::Subcritical => "subcritical",
        FlowRegime::Critical => "critical",
        FlowRegime::Supercritical => "supercritical",
    }
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|_| CliError::MissingInput(path.display().to_string()))
}

fn read_structure(path: &Path, depth: f64) -> Result<(GaugeTrace, Vec<f64>), CliError> {
    let spec = GaugeSpec {
        id: STRUCTURE_GAUGE.into(),
        x_position: f64::NAN,
        sampling_dt: 0.0,
    };
    let mut trace = GaugeTrace::new(&spec, depth);
    let mut veff = Vec::new();
    let mut rdr = csv::Reader::from_reader(open(path)?);
    for row in rdr.deserialize::<(f64, f64, f64)>() {
        let (t, eta, v) = row.map_err(|e| CliError::MissingInput(format!("{}: {e}", path.display())))?;
        trace.push(t, eta);
        veff.push(v);
    }
    Ok((trace, veff))
}

fn forces_for_run(dir: &Path, args: &ForcesArgs) -> Result<RunForces, CliError> {
    let scn: FlumeScenario = read_toml(&dir.join(SCENARIO))?;
    let structure = scn
        .structure
        .ok_or_else(|| CliError::MissingInput(format!("{}: scenario has no structure", dir.display())))?;
    let (level, veff) = read_structure(&dir.join(STRUCTURE), scn.still_water_depth)?;

    let mut records = Vec::new();
    for est in &args.estimators {
        let rec = match est {
            Estimator::Sph => read_force_csv(open(&dir.join(SPH_FORCE))?)?
                .into_iter()
                .find(|r| r.estimator == Estimator::Sph)
                .ok_or_else(|| CliError::MissingInput(format!("{}: no SPH rows", dir.join(SPH_FORCE).display())))?,
            Estimator::Asce => match args.asce_ds {
                Some(ds) => {
                    let crest = level.peak().map_or(0.0, |p| p.0);
                    let p = AsceParams {
                        cp: args.cp,
                        gamma_w: args.gamma_w,
                        ds,
                    };
                    asce_envelope_record(&p, structure.width_y, crest)?
                }
                None => asce_force_record(&level, args.cp, args.gamma_w, structure.width_y)?,
            },
            Estimator::SemiEmpirical => {
                let p = SemiEmpiricalParams {
                    width: structure.width_y,
                    base_offset: scn.still_water_depth,
                    ..SemiEmpiricalParams::default()
                };
                semi_empirical_force(&level, &veff, &p)?
            }
        };
        records.push(rec);
    }

    for rec in &records {
        if rec.estimator != Estimator::Sph {
            let name = format!("forces_{}.csv", rec.estimator.label().to_ascii_lowercase());
            write_with(&dir.join(name), |w| write_force_csv(&[rec], T0, w))?;
        }
    }
    let refs: Vec<&ForceRecord> = records.iter().collect();
    write_with(&dir.join(COMPARISON), |w| write_force_csv(&refs, T0, w))?;
    write_with(&dir.join(PEAKS), |w| {
        writeln!(w, "estimator,t_peak,t_peak_over_T0,F_peak,F_peak_over_F0")?;
        for r in &records {
            if let Some((t, f)) = r.peak() {
                writeln!(w, "{},{t},{},{f},{}", r.estimator, t / T0, f / r.f0)?;
            }
        }
        Ok(())
    })?;

    let veff_max = veff.iter().cloned().fold(0.0, f64::max);
    let fr = froude_number(veff_max, scn.still_water_depth, GRAVITY)?;
    write_with(&dir.join(FROUDE), |w| {
        writeln!(w, "wave_height,veff_max,Fr,regime")?;
        writeln!(
            w,
            "{},{veff_max},{},{}",
            scn.wave_height,
            fr.value,
            regime_label(fr.regime)
        )
    })?;
    Ok(RunForces {
        wave_height: scn.wave_height,
        records,
        veff_max,
        froude: fr.value,
        regime: fr.regime,
    })
}

fn settings_hash(args: &ForcesArgs) -> String {
    let est: Vec<&str> = args.estimators.iter().map(|e| e.label()).collect();
    sha256_hex(format!("{est:?} cp={} gamma_w={} ds={:?}", args.cp, args.gamma_w, args.asce_ds).as_bytes())
}

pub fn forces(args: &ForcesArgs) -> Result<Vec<RunForces>, CliError> {
    if !(1.6..=3.5).contains(&args.cp) {
        return Err(CliError::Config(format!("Cp = {} outside [1.6, 3.5]", args.cp)));
    }
    let mut all = Vec::new();
    for dir in &args.runs {
        let t0 = Instant::now();
        let r = forces_for_run(dir, args)?;
        let scn: FlumeScenario = read_toml(&dir.join(SCENARIO))?;
        RunManifest::record(
            dir,
            "forces",
            StageRecord {
                config_hash: settings_hash(args),
                scenarios: vec![scenario_hash(&scn)],
                seconds: Some(t0.elapsed().as_secs_f64()),
                ..Default::default()
            },
        )?;
        for rec in &r.records {
            if let Some((_, f)) = rec.peak() {
                println!(
                    "H = {} m  {:<13} peak {:>10.1} N  ({:.3} F0)",
                    r.wave_height,
                    rec.estimator,
                    f,
                    f / rec.f0
                );
            }
        }
        println!(
            "H = {} m  max Fr = {:.3} ({})",
            r.wave_height,
            r.froude,
            regime_label(r.regime)
        );
        all.push(r);
    }
    all.sort_by(|a, b| a.wave_height.total_cmp(&b.wave_height));

    if let Some(dir) = &args.summary {
        write_with(&dir.join("froude_summary.csv"), |w| {
            writeln!(w, "wave_height,veff_max,Fr,regime")?;
            for r in &all {
                writeln!(
                    w,
                    "{},{},{},{}",
                    r.wave_height,
                    r.veff_max,
                    r.froude,
                    regime_label(r.regime)
                )?;
            }
            Ok(())
        })?;
        write_with(&dir.join("peak_summary.csv"), |w| {
            writeln!(w, "wave_height,estimator,F_peak,F_peak_over_F0")?;
            for r in &all {
                for rec in &r.records {
                    if let Some((_, f)) = rec.peak() {
                        writeln!(w, "{},{},{f},{}", r.wave_height, rec.estimator, f / rec.f0)?;
                    }
                }
            }
            Ok(())
        })?;
        RunManifest::record(
            dir,
            "forces",
            StageRecord {
                config_hash: settings_hash(args),
                scenarios: all.iter().map(|r| format!("H={}", r.wave_height)).collect(),
                ..Default::default()
            },
        )?;
        if let Some(top) = all.iter().max_by(|a, b| a.froude.total_cmp(&b.froude)) {
            println!("largest Froude number {:.3} at H = {} m", top.froude, top.wave_height);
        }
    }
    Ok(all)
}
