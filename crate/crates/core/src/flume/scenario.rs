use serde::{Deserialize, Serialize};

use super::FlumeError;

/// Box structure standing on the terrace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureSpec {
    /// Distance from the top of the slope to the upstream face [m].
    pub offset_from_slope_end: f64,
    /// Streamwise width [m].
    pub width_x: f64,
    /// Height above the terrace [m].
    pub height: f64,
    /// Transverse width used to convert slice forces to newtons [m].
    pub width_y: f64,
}

impl Default for StructureSpec {
    fn default() -> Self {
        Self {
            offset_from_slope_end: 0.79,
            width_x: 0.4,
            height: 0.5,
            width_y: 0.4,
        }
    }
}

/// A virtual wave gauge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeSpec {
    pub id: String,
    /// Streamwise position [m].
    pub x_position: f64,
    /// Sampling interval [s].
    pub sampling_dt: f64,
}

/// Full flume description. Lengths in metres, times in seconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlumeScenario {
    pub flat_bed_length: f64,
    /// Beach rise over run.
    pub slope_ratio: f64,
    pub slope_run: f64,
    pub terrace_height: f64,
    pub terrace_length: f64,
    pub structure: Option<StructureSpec>,
    pub still_water_depth: f64,
    /// Target solitary wave height H.
    pub wave_height: f64,
    /// Initial particle spacing.
    pub dp: f64,
    pub gauges: Vec<GaugeSpec>,
    pub duration: f64,
    /// Output cadence for gauges, forces and snapshots.
    pub output_dt: f64,
    /// Number of boundary particle layers.
    pub wall_layers: usize,
    /// Half-width of the gauge column; 2·dp when absent.
    pub gauge_half_width: Option<f64>,
    /// Paddle generation time T_f; the Rayleigh default when absent.
    pub piston_ramp: Option<f64>,
}

/// Gauge layout used when none is given.
///
/// These positions are estimates read off the flume schematic and are not
/// authoritative: WG1–3 on the flat bed, WG4–5 on the slope, WG6 at the slope
/// crest, WG8 just upstream of the structure face, WG7/9/10 behind it.
pub fn default_gauges(structure_front: f64, sampling_dt: f64) -> Vec<GaugeSpec> {
    let xs = [
        ("WG1", 8.0),
        ("WG2", 11.0),
        ("WG3", 13.5),
        ("WG4", 16.5),
        ("WG5", 19.5),
        ("WG6", 21.8),
        ("WG7", structure_front + 0.9),
        ("WG8", structure_front - 0.3),
        ("WG9", structure_front + 1.4),
        ("WG10", structure_front + 2.2),
    ];
    xs.iter()
        .map(|&(id, x)| GaugeSpec {
            id: id.to_string(),
            x_position: x,
            sampling_dt,
        })
        .collect()
}

impl Default for FlumeScenario {
    fn default() -> Self {
        let mut s = Self {
            flat_bed_length: 14.05,
            slope_ratio: 0.1,
            slope_run: 7.95,
            terrace_height: 0.795,
            terrace_length: 8.0,
            structure: Some(StructureSpec::default()),
            still_water_depth: 0.75,
            wave_height: 0.4,
            dp: 0.1,
            gauges: Vec::new(),
            duration: 12.0,
            output_dt: 0.01,
            wall_layers: 3,
            gauge_half_width: None,
            piston_ramp: None,
        };
        s.gauges = default_gauges(s.structure_x_range().map_or(22.79, |r| r.0), s.output_dt);
        s
    }
}

impl FlumeScenario {
    /// Flat flume of the given length with no beach and no structure.
    pub fn flat(length: f64, wave_height: f64, dp: f64) -> Self {
        Self {
            flat_bed_length: length,
            slope_ratio: 0.0,
            slope_run: 0.0,
            terrace_height: 0.0,
            terrace_length: 0.0,
            structure: None,
            wave_height,
            dp,
            gauges: Vec::new(),
            ..Self::default()
        }
    }

    pub fn total_length(&self) -> f64 {
        self.flat_bed_length + self.slope_run + self.terrace_length
    }

    pub fn slope_end(&self) -> f64 {
        self.flat_bed_length + self.slope_run
    }

    /// Bed elevation z_bed(x); the end values continue beyond the flume.
    pub fn bed_elevation(&self, x: f64) -> f64 {
        if x <= self.flat_bed_length {
            0.0
        } else if x < self.slope_end() {
            self.slope_ratio * (x - self.flat_bed_length)
        } else {
            self.terrace_height
        }
    }

    /// Streamwise extent of the structure.
    pub fn structure_x_range(&self) -> Option<(f64, f64)> {
        self.structure.map(|s| {
            let x0 = self.slope_end() + s.offset_from_slope_end;
            (x0, x0 + s.width_x)
        })
    }

    pub fn gauge_half_width(&self) -> f64 {
        self.gauge_half_width.unwrap_or(2.0 * self.dp)
    }

    /// Top of the paddle: still water plus 1.5·H freeboard.
    pub fn piston_top(&self) -> f64 {
        self.still_water_depth + 1.5 * self.wave_height
    }

    pub fn gauge(&self, id: &str) -> Option<&GaugeSpec> {
        self.gauges.iter().find(|g| g.id == id)
    }

    pub fn validate(&self) -> Result<(), FlumeError> {
        let positive = [
            ("flat_bed_length", self.flat_bed_length),
            ("wave_height", self.wave_height),
            ("dp", self.dp),
            ("duration", self.duration),
            ("output_dt", self.output_dt),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(FlumeError::InvalidGeometry(format!("{name} must be positive, got {v}")));
            }
        }
        let non_negative = [
            ("slope_ratio", self.slope_ratio),
            ("slope_run", self.slope_run),
            ("terrace_height", self.terrace_height),
            ("terrace_length", self.terrace_length),
            ("still_water_depth", self.still_water_depth),
        ];
        for (name, v) in non_negative {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(FlumeError::InvalidGeometry(format!(
                    "{name} must be non-negative, got {v}"
                )));
            }
        }
        let rise = self.slope_ratio * self.slope_run;
        if (rise - self.terrace_height).abs() > 1e-6 {
            return Err(FlumeError::InvalidGeometry(format!(
                "terrace height {} does not match slope rise {rise}",
                self.terrace_height
            )));
        }
        if self.wall_layers < 1 {
            return Err(FlumeError::InvalidGeometry("wall_layers must be at least 1".into()));
        }
        if let Some(s) = &self.structure {
            for (name, v) in [
                ("structure.width_x", s.width_x),
                ("structure.height", s.height),
                ("structure.width_y", s.width_y),
            ] {
                if !(v > 0.0) {
                    return Err(FlumeError::InvalidGeometry(format!("{name} must be positive, got {v}")));
                }
            }
            if s.offset_from_slope_end < 0.0 || s.offset_from_slope_end + s.width_x > self.terrace_length {
                return Err(FlumeError::InvalidGeometry(
                    "structure does not sit on the terrace".into(),
                ));
            }
        }
        for g in &self.gauges {
            if !(0.0..=self.total_length()).contains(&g.x_position) {
                return Err(FlumeError::InvalidGeometry(format!(
                    "gauge {} lies outside the flume",
                    g.id
                )));
            }
            if g.sampling_dt + 1e-12 < self.output_dt {
                return Err(FlumeError::InvalidGeometry(format!(
                    "gauge {} samples faster than the output cadence",
                    g.id
                )));
            }
        }
        let ratio = self.wave_height / self.dp;
        if ratio < 4.0 * (1.0 - 1e-9) {
            return Err(FlumeError::ResolutionTooCoarse { ratio });
        }
        Ok(())
    }
}

/// Partial scenario used to override defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioOverrides {
    pub flat_bed_length: Option<f64>,
    pub slope_ratio: Option<f64>,
    pub slope_run: Option<f64>,
    pub terrace_height: Option<f64>,
    pub terrace_length: Option<f64>,
    pub structure: Option<StructureSpec>,
    pub no_structure: Option<bool>,
    pub still_water_depth: Option<f64>,
    pub wave_height: Option<f64>,
    pub dp: Option<f64>,
    pub gauges: Option<Vec<GaugeSpec>>,
    pub duration: Option<f64>,
    pub output_dt: Option<f64>,
    pub wall_layers: Option<usize>,
    pub gauge_half_width: Option<f64>,
    pub piston_ramp: Option<f64>,
}

/// Fill a scenario from defaults and validate it.
pub fn build_scenario(o: &ScenarioOverrides) -> Result<FlumeScenario, FlumeError> {
    let mut s = FlumeScenario::default();
    macro_rules! take {
        ($($f:ident),*) => { $( if let Some(v) = o.$f.clone() { s.$f = v; } )* };
    }
    take!(
        flat_bed_length,
        slope_ratio,
        slope_run,
        terrace_height,
        terrace_length,
        still_water_depth,
        wave_height,
        dp,
        duration,
        output_dt,
        wall_layers
    );
    if o.structure.is_some() {
        s.structure = o.structure;
    }
    if o.no_structure == Some(true) {
        s.structure = None;
    }
    s.gauge_half_width = o.gauge_half_width.or(s.gauge_half_width);
    s.piston_ramp = o.piston_ramp.or(s.piston_ramp);
    s.gauges = match &o.gauges {
        Some(g) => g.clone(),
        None => default_gauges(
            s.structure_x_range().map_or(s.total_length() - 1.0, |r| r.0),
            s.output_dt,
        )
        .into_iter()
        .filter(|g| (0.0..=s.total_length()).contains(&g.x_position))
        .collect(),
    };
    s.validate()?;
    Ok(s)
}
