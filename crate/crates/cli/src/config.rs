use std::fs;
use std::path::{Path, PathBuf};

use flume_core::flume::{build_scenario, FlumeScenario, ScenarioOverrides};
use flume_core::uq::RandomVariableSpec;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::manifest::sha256_hex;

pub fn read_toml<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => CliError::MissingInput(path.display().to_string()),
        _ => CliError::Io {
            path: path.to_path_buf(),
            source: e,
        },
    })?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn load_overrides(path: Option<&Path>) -> Result<ScenarioOverrides, CliError> {
    path.map_or(Ok(ScenarioOverrides::default()), read_toml)
}

pub fn resolve_scenario(o: &ScenarioOverrides) -> Result<FlumeScenario, CliError> {
    Ok(build_scenario(o)?)
}

pub fn scenario_toml(s: &FlumeScenario) -> String {
    toml::to_string(s).expect("scenario serialises")
}

pub fn scenario_hash(s: &FlumeScenario) -> String {
    sha256_hex(scenario_toml(s).as_bytes())
}

/// Cache file for the SPH force history of one resolved scenario. The hash
/// covers every physical input, so a changed setup never matches an old file.
pub fn library_file_name(s: &FlumeScenario) -> String {
    format!(
        "sph_H{:.3}_dp{:.4}_{}.csv",
        s.wave_height,
        s.dp,
        &scenario_hash(s)[..16]
    )
}

/// UQ sweep configuration; every field may also be given as a flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UqConfig {
    /// Directory of cached SPH force histories.
    pub library: Option<PathBuf>,
    /// Scenario overrides the library was simulated with.
    pub scenario: Option<PathBuf>,
    pub heights: Vec<f64>,
    pub dp: f64,
    pub q: usize,
    pub seed: u64,
    pub jobs: Option<usize>,
    pub failure_threshold: f64,
    /// Structural time step [s].
    pub dt: f64,
    /// Response window [s].
    pub duration: f64,
    pub wetted_height: f64,
    pub distribution_study: bool,
    /// Rows per (distribution, height) group in the distribution study.
    pub study_q: usize,
    /// Replaces the default structural marginals when present.
    pub variables: Option<Vec<RandomVariableSpec>>,
}

impl Default for UqConfig {
    fn default() -> Self {
        Self {
            library: None,
            scenario: None,
            heights: vec![0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
            dp: 0.1,
            q: 600,
            seed: 2024,
            jobs: None,
            failure_threshold: 0.01,
            dt: 0.01,
            duration: 12.0,
            wetted_height: 0.5,
            distribution_study: false,
            study_q: 100,
            variables: None,
        }
    }
}

impl UqConfig {
    /// Paths inside a config file are relative to that file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let mut c: Self = read_toml(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut c.library, &mut c.scenario].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(c)
    }

    pub fn hash(&self) -> String {
        sha256_hex(serde_json::to_string(self).expect("config serialises").as_bytes())
    }
}

/// Parallelism for the sweep: the smaller of `--jobs` and the
/// FLUME_UQ_THREADS cap when both are set.
pub fn effective_jobs(jobs: Option<usize>, cap: Option<usize>) -> Option<usize> {
    match (jobs, cap) {
        (Some(j), Some(c)) => Some(j.min(c).max(1)),
        (j, c) => j.or(c).map(|n| n.max(1)),
    }
}
