use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Args;
use flume_core::forces::{read_force_csv, Estimator};
use flume_core::uq::{
    boxplot_stats, distribution_study, kde_estimate, lhs_sample, mean_structural_specs, propagate, structural_specs,
    wave_height_spec, BoxplotStats, EdpRow, LoadLibrary, PropagationConfig, PropagationResult, SampleMatrix,
    StudyGroup, WAVE_HEIGHT,
};

use crate::config::{effective_jobs, library_file_name, load_overrides, resolve_scenario, UqConfig};
use crate::error::CliError;
use crate::manifest::{RunManifest, StageRecord};
use crate::simulate::write_with;

pub const SAMPLES: &str = "samples.csv";
pub const EDP: &str = "edp.csv";
pub const KDE: &str = "kde.csv";
pub const BOXPLOT: &str = "boxplot.csv";
pub const RMSA_BY_HEIGHT: &str = "rmsa_vs_height.csv";
pub const FAILURES: &str = "failures.csv";
pub const STUDY_BOXPLOT: &str = "distribution_boxplot.csv";
pub const STUDY_RMSA: &str = "distribution_rmsa.csv";

#[derive(Debug, Args)]
pub struct UqArgs {
    /// Sweep configuration (TOML); flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Force-library directory filled by `simulate --library`.
    #[arg(long)]
    pub library: Option<PathBuf>,
    /// Scenario overrides the library was simulated with.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub heights: Option<Vec<f64>>,
    #[arg(long)]
    pub dp: Option<f64>,
    #[arg(short, long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads for sample evaluation.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Upper bound on worker threads from the environment.
    #[arg(long, env = "FLUME_UQ_THREADS", hide = true)]
    pub thread_cap: Option<usize>,
    #[arg(long)]
    pub failure_threshold: Option<f64>,
    /// Also run the five-distribution load-factor study.
    #[arg(long)]
    pub distribution_study: bool,
    #[arg(short, long)]
    pub out: PathBuf,
}

/// Outcome of a sweep, for callers that want the numbers.
#[derive(Debug, Clone)]
pub struct UqOutput {
    pub samples: SampleMatrix,
    pub result: PropagationResult,
    pub study: Vec<StudyGroup>,
}

fn resolve(args: &UqArgs) -> Result<UqConfig, CliError> {
    let mut c = match &args.config {
        Some(p) => UqConfig::load(p)?,
        None => UqConfig::default(),
    };
    macro_rules! flag {
        ($($f:ident),*) => { $( if let Some(v) = args.$f.clone() { c.$f = v; } )* };
    }
    flag!(heights, dp, q, seed, failure_threshold);
    c.library = args.library.clone().or(c.library);
    c.scenario = args.scenario.clone().or(c.scenario);
    c.jobs = effective_jobs(args.jobs.or(c.jobs), args.thread_cap);
    c.distribution_study |= args.distribution_study;
    if c.heights.is_empty() {
        return Err(CliError::Config("no wave heights given".into()));
    }
    if c.q == 0 {
        return Err(CliError::Config("q must be at least 1".into()));
    }
    Ok(c)
}

/// Look up the cached force history of every height under the current
/// scenario hash; a file for the same (H, dp) under another hash is stale.
pub fn load_library(c: &UqConfig) -> Result<(LoadLibrary, Vec<String>), CliError> {
    let dir = c
        .library
        .as_ref()
        .ok_or_else(|| CliError::Config("no force-library directory given".into()))?;
    if !dir.is_dir() {
        return Err(CliError::MissingInput(format!("force library {}", dir.display())));
    }
    let base = load_overrides(c.scenario.as_deref())?;
    let mut lib = LoadLibrary::default();
    let mut names = Vec::new();
    for &h in &c.heights {
        let mut o = base.clone();
        o.wave_height = Some(h);
        o.dp = Some(c.dp);
        let name = library_file_name(&resolve_scenario(&o)?);
        let path = dir.join(&name);
        if !path.is_file() {
            let prefix = &name[..name.rfind('_').expect("name has a hash suffix") + 1];
            let stale = fs::read_dir(dir)
                .map_err(CliError::io(dir))?
                .filter_map(|e| e.ok())
                .any(|e| e.file_name().to_string_lossy().starts_with(prefix));
            let why = if stale {
                "cached for a different scenario config"
            } else {
                "not simulated"
            };
            return Err(CliError::MissingInput(format!(
                "{name}: force history for H = {h} m {why}"
            )));
        }
        let file = fs::File::open(&path).map_err(CliError::io(&path))?;
        let rec = read_force_csv(std::io::BufReader::new(file))?
            .into_iter()
            .find(|r| r.estimator == Estimator::Sph)
            .ok_or_else(|| CliError::MissingInput(format!("{name}: no SPH rows")))?;
        lib.insert(h, rec);
        names.push(name);
    }
    Ok((lib, names))
}

const STAT_HEADER: &str =
    "q1,median,q3,iqr,lower_whisker,upper_whisker,lowest_inlier,highest_inlier,min,max,n_outliers";

fn stat_cols(s: &BoxplotStats) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        s.q1,
        s.q2,
        s.q3,
        s.iqr,
        s.lower_whisker,
        s.upper_whisker,
        s.lowest_inlier,
        s.highest_inlier,
        s.min,
        s.max,
        s.outliers.len()
    )
}

fn write_samples(path: &Path, m: &SampleMatrix) -> Result<(), CliError> {
    write_with(path, |w| {
        let names: Vec<&str> = m.specs.iter().map(|s| s.name.as_str()).collect();
        writeln!(w, "sample_id,{}", names.join(","))?;
        for i in 0..m.q {
            let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(w, "{i},{}", row.join(","))?;
        }
        Ok(())
    })
}

fn write_edp(path: &Path, rows: &[EdpRow]) -> Result<(), CliError> {
    let stories = rows.first().map_or(0, |r| r.story_rmsa.len());
    write_with(path, |w| {
        write!(
            w,
            "sample_id,wave_height,load_factor,yield_strength,col_weight_per_len,beam_weight_per_len,\
             girder_weight_per_len,youngs_modulus,rmsa,peak_displacement,yielded"
        )?;
        for k in 1..=stories {
            write!(w, ",story{k}_rmsa,story{k}_peak_displacement")?;
        }
        writeln!(w)?;
        for r in rows {
            let p = &r.params;
            write!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.sample_id,
                r.wave_height,
                r.load_factor,
                p.yield_strength,
                p.col_weight_per_len,
                p.beam_weight_per_len,
                p.girder_weight_per_len,
                p.youngs_modulus,
                r.rmsa,
                r.peak_displacement,
                r.yielded
            )?;
            for (a, d) in r.story_rmsa.iter().zip(&r.story_peak_displacement) {
                write!(w, ",{a},{d}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    })
}

pub fn uq(args: &UqArgs) -> Result<UqOutput, CliError> {
    let c = resolve(args)?;
    let (lib, names) = load_library(&c)?;
    let out = &args.out;
    fs::create_dir_all(out).map_err(CliError::io(out))?;
    let t0 = Instant::now();

    let mut specs = c.variables.clone().unwrap_or_else(structural_specs);
    if !specs.iter().any(|s| s.name == WAVE_HEIGHT) {
        specs.push(wave_height_spec(&c.heights));
    }
    let samples = lhs_sample(&specs, c.q, c.seed)?;
    let pcfg = PropagationConfig {
        dt: c.dt,
        duration: c.duration,
        wetted_height: c.wetted_height,
        failure_threshold: c.failure_threshold,
        jobs: c.jobs,
        ..PropagationConfig::default()
    };
    let result = propagate(&samples, &lib, &pcfg)?;

    write_samples(&out.join(SAMPLES), &samples)?;
    write_edp(&out.join(EDP), &result.rows)?;
    write_with(&out.join(FAILURES), |w| {
        writeln!(w, "sample_id,message")?;
        for (i, msg) in &result.failures {
            writeln!(w, "{i},\"{}\"", msg.replace('"', "'"))?;
        }
        Ok(())
    })?;
    let by_height: Vec<(f64, Vec<f64>)> = c
        .heights
        .iter()
        .map(|&h| (h, result.rmsa_for_height(h)))
        .filter(|(_, r)| !r.is_empty())
        .collect();
    write_with(&out.join(KDE), |w| {
        writeln!(w, "wave_height,rmsa,density,bandwidth")?;
        for (h, r) in &by_height {
            if let Ok(k) = kde_estimate(
                r,
                if r.len() < 2 {
                    Some(1e-3 * r[0].abs().max(1e-6))
                } else {
                    None
                },
            ) {
                for (x, f) in k.grid.iter().zip(&k.density) {
                    writeln!(w, "{h},{x},{f},{}", k.kde_bandwidth)?;
                }
            }
        }
        Ok(())
    })?;
    write_with(&out.join(BOXPLOT), |w| {
        writeln!(w, "wave_height,n,{STAT_HEADER}")?;
        for (h, r) in &by_height {
            writeln!(w, "{h},{},{}", r.len(), stat_cols(&boxplot_stats(r)))?;
        }
        Ok(())
    })?;
    write_rmsa_by_height(&out.join(RMSA_BY_HEIGHT), &by_height)?;

    let study = if c.distribution_study {
        let groups = distribution_study(&mean_structural_specs(), &lib, c.study_q, c.seed, &pcfg)?;
        write_with(&out.join(STUDY_BOXPLOT), |w| {
            writeln!(w, "distribution,wave_height,n,{STAT_HEADER}")?;
            for g in &groups {
                writeln!(
                    w,
                    "{},{},{},{}",
                    g.distribution,
                    g.wave_height,
                    g.rmsa.len(),
                    stat_cols(&g.stats)
                )?;
            }
            Ok(())
        })?;
        write_with(&out.join(STUDY_RMSA), |w| {
            writeln!(w, "distribution,wave_height,rmsa")?;
            for g in &groups {
                for a in &g.rmsa {
                    writeln!(w, "{},{},{a}", g.distribution, g.wave_height)?;
                }
            }
            Ok(())
        })?;
        groups
    } else {
        Vec::new()
    };

    let seconds = t0.elapsed().as_secs_f64();
    RunManifest::record(
        out,
        "uq",
        StageRecord {
            config_hash: c.hash(),
            seed: Some(c.seed),
            scenarios: names,
            seconds: Some(seconds),
            counts: [
                ("rows".to_string(), result.rows.len() as u64),
                ("failures".to_string(), result.failures.len() as u64),
            ]
            .into_iter()
            .collect(),
        },
    )?;

    println!(
        "{} rows, {} failed ({:.2}%), {:.1} s",
        result.rows.len(),
        result.failures.len(),
        100.0 * result.failure_rate(),
        seconds
    );
    for (h, r) in &by_height {
        let s = boxplot_stats(r);
        println!(
            "H = {h} m  n = {:>4}  median RMSA {:.4e}  max {:.4e} m/s²",
            r.len(),
            s.q2,
            s.max
        );
    }
    Ok(UqOutput { samples, result, study })
}

/// Mean, median and maximum RMSA per wave height.
pub fn write_rmsa_by_height(path: &Path, by_height: &[(f64, Vec<f64>)]) -> Result<(), CliError> {
    write_with(path, |w| {
        writeln!(w, "wave_height,n,mean_rmsa,median_rmsa,max_rmsa")?;
        for (h, r) in by_height {
            let s = boxplot_stats(r);
            let mean = r.iter().sum::<f64>() / r.len() as f64;
            writeln!(w, "{h},{},{mean},{},{}", r.len(), s.q2, s.max)?;
        }
        Ok(())
    })
}
