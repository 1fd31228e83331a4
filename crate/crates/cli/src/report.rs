use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::Args;
use flume_core::flume::{read_traces_csv, FlumeScenario};
use flume_core::forces::read_force_csv;
use flume_core::uq::boxplot_stats;
use flume_core::{ETA0, T0};
use serde::Deserialize;

use crate::config::read_toml;
use crate::error::CliError;
use crate::forces::COMPARISON;
use crate::manifest::{sha256_hex, RunManifest, StageRecord};
use crate::simulate::{write_with, SCENARIO, SPH_FORCE, TRACES};
use crate::uq::{write_rmsa_by_height, EDP, STUDY_RMSA};

pub const REPORT_DIR: &str = "report";

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Output directory of an earlier stage.
    pub run: PathBuf,
}

#[derive(Deserialize)]
struct EdpCols {
    wave_height: f64,
    rmsa: f64,
}

#[derive(Deserialize)]
struct StudyCols {
    distribution: String,
    wave_height: f64,
    rmsa: f64,
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path).map(BufReader::new).map_err(CliError::io(path))
}

fn malformed(path: &Path) -> impl Fn(csv::Error) -> CliError + '_ {
    move |e| CliError::MissingInput(format!("{}: {e}", path.display()))
}

/// Rows grouped by key in ascending key order.
fn group<K: Ord>(rows: impl IntoIterator<Item = (K, f64)>) -> BTreeMap<K, Vec<f64>> {
    let mut g: BTreeMap<K, Vec<f64>> = BTreeMap::new();
    for (k, v) in rows {
        g.entry(k).or_default().push(v);
    }
    g
}

/// Height keys as integer millimetres so they order and compare exactly.
fn mm(h: f64) -> i64 {
    (h * 1000.0).round() as i64
}

/// Aggregate the run directory into `report/`. Returns the files written.
pub fn report(args: &ReportArgs) -> Result<Vec<PathBuf>, CliError> {
    let dir = &args.run;
    let manifest =
        RunManifest::load(dir)?.ok_or_else(|| CliError::MissingInput(format!("{}: no manifest", dir.display())))?;
    let out = dir.join(REPORT_DIR);
    let mut written = Vec::new();
    let mut inputs = Vec::new();

    if dir.join(TRACES).is_file() {
        let depth = read_toml::<FlumeScenario>(&dir.join(SCENARIO)).map_or(0.75, |s| s.still_water_depth);
        let traces = read_traces_csv(open(&dir.join(TRACES))?, depth)?;
        let path = out.join("wg_normalized.csv");
        write_with(&path, |w| {
            writeln!(w, "gauge,x,t,eta,T0,eta0,t_over_T0,eta_over_eta0")?;
            for tr in &traces {
                for i in (0..tr.len()).filter(|&i| !tr.is_dry(i)) {
                    let (t, e) = (tr.times[i], tr.eta[i]);
                    writeln!(
                        w,
                        "{},{},{t},{e},{T0},{ETA0},{},{}",
                        tr.id,
                        tr.x_position,
                        t / T0,
                        e / ETA0
                    )?;
                }
            }
            Ok(())
        })?;
        inputs.push(TRACES);
        written.push(path);
    }

    let force_src = [COMPARISON, SPH_FORCE].into_iter().find(|f| dir.join(f).is_file());
    if let Some(src) = force_src {
        let records = read_force_csv(open(&dir.join(src))?)?;
        let path = out.join("force_normalized.csv");
        write_with(&path, |w| {
            writeln!(w, "estimator,t,F,T0,F0,t_over_T0,F_over_F0")?;
            for r in &records {
                for (t, f) in r.times.iter().zip(&r.force) {
                    writeln!(w, "{},{t},{f},{T0},{},{},{}", r.estimator, r.f0, t / T0, f / r.f0)?;
                }
            }
            Ok(())
        })?;
        inputs.push(src);
        written.push(path);
    }

    if dir.join(EDP).is_file() {
        let src = dir.join(EDP);
        let mut rows = Vec::new();
        for r in csv::Reader::from_reader(open(&src)?).deserialize::<EdpCols>() {
            let r = r.map_err(malformed(&src))?;
            rows.push((mm(r.wave_height), r.rmsa));
        }
        let by_height: Vec<(f64, Vec<f64>)> = group(rows).into_iter().map(|(k, v)| (k as f64 / 1000.0, v)).collect();
        let path = out.join("rmsa_vs_height.csv");
        write_rmsa_by_height(&path, &by_height)?;
        written.push(path);
        let path = out.join("rmsa_boxplot.csv");
        write_with(&path, |w| {
            writeln!(
                w,
                "wave_height,q1,median,q3,lower_whisker,upper_whisker,lowest_inlier,highest_inlier,n_outliers"
            )?;
            for (h, r) in &by_height {
                let s = boxplot_stats(r);
                writeln!(
                    w,
                    "{h},{},{},{},{},{},{},{},{}",
                    s.q1,
                    s.q2,
                    s.q3,
                    s.lower_whisker,
                    s.upper_whisker,
                    s.lowest_inlier,
                    s.highest_inlier,
                    s.outliers.len()
                )?;
            }
            Ok(())
        })?;
        inputs.push(EDP);
        written.push(path);
    }

    if dir.join(STUDY_RMSA).is_file() {
        let src = dir.join(STUDY_RMSA);
        let mut rows = Vec::new();
        for r in csv::Reader::from_reader(open(&src)?).deserialize::<StudyCols>() {
            let r = r.map_err(malformed(&src))?;
            rows.push(((mm(r.wave_height), r.distribution), r.rmsa));
        }
        let path = out.join("distribution_boxplot.csv");
        write_with(&path, |w| {
            writeln!(
                w,
                "wave_height,distribution,q1,median,q3,lowest_inlier,highest_inlier,max"
            )?;
            for ((h, d), r) in group(rows) {
                let s = boxplot_stats(&r);
                writeln!(
                    w,
                    "{},{d},{},{},{},{},{},{}",
                    h as f64 / 1000.0,
                    s.q1,
                    s.q2,
                    s.q3,
                    s.lowest_inlier,
                    s.highest_inlier,
                    s.max
                )?;
            }
            Ok(())
        })?;
        inputs.push(STUDY_RMSA);
        written.push(path);
    }

    if written.is_empty() {
        return Err(CliError::MissingInput(format!("{}: nothing to report", dir.display())));
    }
    let digest: Vec<&str> = inputs
        .iter()
        .map(|f| manifest.files.get(*f).map_or("", String::as_str))
        .collect();
    RunManifest::record(
        dir,
        "report",
        StageRecord {
            config_hash: sha256_hex(digest.join(",").as_bytes()),
            ..Default::default()
        },
    )?;
    for p in &written {
        println!("wrote {}", p.display());
    }
    Ok(written)
}
