use rayon::prelude::*;

use super::{boxplot_stats, lhs_sample, BoxplotStats, Distribution, RandomVariableSpec, SampleMatrix, UqError};
use crate::forces::ForceRecord;
use crate::structure::{build_frame, load_fractions, newmark_response, story_loads, FrameGeometry, StructuralParams};

/// Column name selecting the force history.
pub const WAVE_HEIGHT: &str = "wave_height";
/// Column name scaling the force history.
pub const LOAD_FACTOR: &str = "load_factor";

/// Normal marginals of the five structural parameters, in SI units, with a
/// positivity floor.
pub fn structural_specs() -> Vec<RandomVariableSpec> {
    let m = StructuralParams::mean();
    let normal =
        |name: &str, mean: f64| RandomVariableSpec::new(name, Distribution::Normal { mean, sd: 0.2 * mean }).positive();
    let mut specs = vec![
        RandomVariableSpec::new(
            "yield_strength",
            Distribution::Normal {
                mean: m.yield_strength,
                sd: 82e6,
            },
        )
        .positive(),
        RandomVariableSpec::new(
            "col_weight_per_len",
            Distribution::Normal {
                mean: m.col_weight_per_len,
                sd: 34.0,
            },
        )
        .positive(),
        RandomVariableSpec::new(
            "beam_weight_per_len",
            Distribution::Normal {
                mean: m.beam_weight_per_len,
                sd: 26.0,
            },
        )
        .positive(),
        RandomVariableSpec::new(
            "girder_weight_per_len",
            Distribution::Normal {
                mean: m.girder_weight_per_len,
                sd: 26.0,
            },
        )
        .positive(),
    ];
    specs.push(normal("youngs_modulus", m.youngs_modulus));
    specs
}

/// The structural parameters pinned at their means, for studies that vary
/// only the load.
pub fn mean_structural_specs() -> Vec<RandomVariableSpec> {
    structural_specs()
        .into_iter()
        .map(|s| {
            let value = match s.distribution {
                Distribution::Normal { mean, .. } => mean,
                _ => unreachable!("structural marginals are normal"),
            };
            RandomVariableSpec::new(&s.name, Distribution::Constant { value })
        })
        .collect()
}

/// Equal-probability assignment to the given wave heights.
pub fn wave_height_spec(heights: &[f64]) -> RandomVariableSpec {
    RandomVariableSpec::new(
        WAVE_HEIGHT,
        Distribution::Discrete {
            values: heights.to_vec(),
        },
    )
}

/// The five load-factor distributions sharing the range [0.4, 1.6].
pub fn load_factor_specs() -> Vec<(String, RandomVariableSpec)> {
    let d = [
        ("constant", Distribution::Constant { value: 1.0 }),
        ("lognormal", Distribution::Lognormal { mean: 1.0, sd: 0.2 }),
        ("normal", Distribution::Normal { mean: 1.0, sd: 0.2 }),
        ("uniform", Distribution::Uniform { min: 0.4, max: 1.6 }),
        (
            "beta",
            Distribution::Beta {
                alpha: 5.0,
                beta: 2.0,
                min: 0.4,
                max: 1.6,
            },
        ),
    ];
    d.into_iter()
        .map(|(label, dist)| (label.to_string(), RandomVariableSpec::new(LOAD_FACTOR, dist)))
        .collect()
}

/// Force histories indexed by wave height.
#[derive(Debug, Clone, Default)]
pub struct LoadLibrary {
    pub entries: Vec<(f64, ForceRecord)>,
}

impl LoadLibrary {
    pub fn insert(&mut self, height: f64, record: ForceRecord) {
        self.entries.retain(|(h, _)| (h - height).abs() > 1e-9);
        self.entries.push((height, record));
        self.entries.sort_by(|a, b| a.0.total_cmp(&b.0));
    }

    pub fn heights(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.0).collect()
    }

    /// The record whose height lies within 1e-6 m of `height`.
    pub fn get(&self, height: f64) -> Option<&ForceRecord> {
        self.entries
            .iter()
            .find(|(h, _)| (h - height).abs() < 1e-6)
            .map(|(_, r)| r)
    }

    pub fn only(&self, height: f64) -> Result<Self, UqError> {
        let r = self.get(height).ok_or(UqError::MissingLoad(height))?;
        Ok(Self {
            entries: vec![(height, r.clone())],
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropagationConfig {
    pub geometry: FrameGeometry,
    /// Structural time step [s]; subdivided for samples with T1 < 20·dt.
    pub dt: f64,
    /// Response window [s].
    pub duration: f64,
    /// Height of the load resultant's wetted band on the frame [m].
    pub wetted_height: f64,
    /// Largest tolerated share of failed rows.
    pub failure_threshold: f64,
    /// Worker threads; the rayon default when absent.
    pub jobs: Option<usize>,
}

impl Default for PropagationConfig {
    fn default() -> Self {
        Self {
            geometry: FrameGeometry::default(),
            dt: 0.01,
            duration: 12.0,
            wetted_height: 0.5,
            failure_threshold: 0.01,
            jobs: None,
        }
    }
}

/// One evaluated sample row.
#[derive(Debug, Clone, PartialEq)]
pub struct EdpRow {
    pub sample_id: usize,
    pub wave_height: f64,
    pub load_factor: f64,
    pub params: StructuralParams,
    pub rmsa: f64,
    pub peak_displacement: f64,
    pub story_rmsa: Vec<f64>,
    pub story_peak_displacement: Vec<f64>,
    pub yielded: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropagationResult {
    pub rows: Vec<EdpRow>,
    /// (sample id, message) for rows that failed.
    pub failures: Vec<(usize, String)>,
}

impl PropagationResult {
    pub fn failure_rate(&self) -> f64 {
        let total = self.rows.len() + self.failures.len();
        self.failures.len() as f64 / total.max(1) as f64
    }

    pub fn rmsa_for_height(&self, height: f64) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| (r.wave_height - height).abs() < 1e-6)
            .map(|r| r.rmsa)
            .collect()
    }
}

fn row_params(m: &SampleMatrix, i: usize) -> StructuralParams {
    let mut p = StructuralParams::mean();
    let pick = |name: &str, default: f64| m.column_index(name).map_or(default, |j| m.get(i, j));
    p.yield_strength = pick("yield_strength", p.yield_strength);
    p.col_weight_per_len = pick("col_weight_per_len", p.col_weight_per_len);
    p.beam_weight_per_len = pick("beam_weight_per_len", p.beam_weight_per_len);
    p.girder_weight_per_len = pick("girder_weight_per_len", p.girder_weight_per_len);
    p.youngs_modulus = pick("youngs_modulus", p.youngs_modulus);
    p
}

fn evaluate(m: &SampleMatrix, i: usize, library: &LoadLibrary, cfg: &PropagationConfig) -> Result<EdpRow, UqError> {
    let height = match m.column_index(WAVE_HEIGHT) {
        Some(j) => m.get(i, j),
        None if library.entries.len() == 1 => library.entries[0].0,
        None => return Err(UqError::MissingLoad(f64::NAN)),
    };
    let record = library.get(height).ok_or(UqError::MissingLoad(height))?;
    let factor = m.column_index(LOAD_FACTOR).map_or(1.0, |j| m.get(i, j));
    let params = row_params(m, i);
    let model = build_frame(&params, &cfg.geometry)?;
    // stiff samples get an integer subdivision of the configured step
    let sub = (cfg.dt / (model.fundamental_period() / 20.0)).ceil().max(1.0);
    let dt = cfg.dt / sub;
    let n_steps = (cfg.duration / dt).round() as usize;
    let loads = story_loads(record, &load_fractions(&model, cfg.wetted_height), dt, n_steps, factor);
    let edp = newmark_response(&model, &loads, dt)?;
    Ok(EdpRow {
        sample_id: i,
        wave_height: height,
        load_factor: factor,
        params,
        rmsa: edp.rmsa_envelope,
        peak_displacement: edp.peak_displacement_envelope,
        story_rmsa: edp.rmsa,
        story_peak_displacement: edp.peak_displacement,
        yielded: edp.yielded,
    })
}

/// Evaluate every sample row through frame building, load scaling and the
/// Newmark response. Rows are independent and evaluated in parallel; results
/// come back in row order. Failed rows are recorded, and the sweep fails only
/// when their share exceeds the configured threshold.
pub fn propagate(
    samples: &SampleMatrix,
    library: &LoadLibrary,
    cfg: &PropagationConfig,
) -> Result<PropagationResult, UqError> {
    let run = || {
        (0..samples.q)
            .into_par_iter()
            .map(|i| evaluate(samples, i, library, cfg))
            .collect::<Vec<_>>()
    };
    let outcomes = match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|_| run()),
        None => run(),
    };
    let mut result = PropagationResult {
        rows: Vec::with_capacity(samples.q),
        failures: Vec::new(),
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Ok(r) => result.rows.push(r),
            Err(e @ UqError::MissingLoad(_)) => return Err(e),
            Err(e) => result.failures.push((i, e.to_string())),
        }
    }
    if result.failure_rate() > cfg.failure_threshold {
        return Err(UqError::TooManyFailures {
            failed: result.failures.len(),
            total: samples.q,
        });
    }
    Ok(result)
}

/// RMSA sample of one (distribution, wave height) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyGroup {
    pub distribution: String,
    pub wave_height: f64,
    pub rmsa: Vec<f64>,
    pub stats: BoxplotStats,
}

/// Load-factor distribution study: for each height in the library and each
/// of the five load-factor distributions, `q` rows over `structural` specs.
///
/// All distributions reuse the same seed, so the structural columns are
/// identical across them and only the load factor differs.
pub fn distribution_study(
    structural: &[RandomVariableSpec],
    library: &LoadLibrary,
    q: usize,
    seed: u64,
    cfg: &PropagationConfig,
) -> Result<Vec<StudyGroup>, UqError> {
    let mut groups = Vec::new();
    for height in library.heights() {
        let lib = library.only(height)?;
        for (label, factor) in load_factor_specs() {
            let mut specs = structural.to_vec();
            specs.push(factor);
            let m = lhs_sample(&specs, q, seed)?;
            let res = propagate(&m, &lib, cfg)?;
            let rmsa = res.rmsa_for_height(height);
            groups.push(StudyGroup {
                stats: boxplot_stats(&rmsa),
                distribution: label,
                wave_height: height,
                rmsa,
            });
        }
    }
    Ok(groups)
}
