use std::io::{self, BufRead, Write};

use super::{FlumeError, GaugeSpec};
use crate::sph::SimState;

/// Free-surface elevation at a gauge: the highest active fluid particle in a
/// vertical column of the given half-width, minus the still-water depth.
/// A dry column reports −still_water_depth.
pub fn sample_gauge(state: &SimState, gauge: &GaugeSpec, still_water_depth: f64, half_width: f64) -> f64 {
    let top = state
        .fluid()
        .filter(|p| (p.position.x - gauge.x_position).abs() <= half_width)
        .map(|p| p.position.y)
        .fold(f64::NEG_INFINITY, f64::max);
    if top.is_finite() {
        top - still_water_depth
    } else {
        -still_water_depth
    }
}

/// Elevation history at one gauge.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeTrace {
    pub id: String,
    pub x_position: f64,
    pub still_water_depth: f64,
    pub times: Vec<f64>,
    /// η above still water [m]; −still_water_depth marks a dry column.
    pub eta: Vec<f64>,
}

impl GaugeTrace {
    pub fn new(spec: &GaugeSpec, still_water_depth: f64) -> Self {
        Self {
            id: spec.id.clone(),
            x_position: spec.x_position,
            still_water_depth,
            times: Vec::new(),
            eta: Vec::new(),
        }
    }

    pub fn push(&mut self, t: f64, eta: f64) {
        self.times.push(t);
        self.eta.push(eta.max(-self.still_water_depth));
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn is_dry(&self, i: usize) -> bool {
        self.eta[i] <= -self.still_water_depth + 1e-12
    }

    /// (time, η) of the largest elevation.
    pub fn peak(&self) -> Option<(f64, f64)> {
        self.times
            .iter()
            .zip(&self.eta)
            .fold(None, |best: Option<(f64, f64)>, (&t, &e)| match best {
                Some((_, b)) if b >= e => best,
                _ => Some((t, e)),
            })
    }

    /// Water-surface elevation above the flat bed, h_b = η + still_water_depth.
    pub fn surface_elevation(&self) -> Vec<f64> {
        self.eta.iter().map(|e| e + self.still_water_depth).collect()
    }

    pub fn normalized_times(&self, t0: f64) -> Vec<f64> {
        self.times.iter().map(|t| t / t0).collect()
    }

    pub fn normalized_eta(&self, eta0: f64) -> Vec<f64> {
        self.eta.iter().map(|e| e / eta0).collect()
    }
}

/// Long-format trace CSV: gauge, x, t, t/T0, eta, eta/eta0. Dry samples are
/// written as `dry` in both elevation columns.
pub fn write_traces_csv<W: Write>(traces: &[GaugeTrace], t0: f64, eta0: f64, mut out: W) -> io::Result<()> {
    writeln!(out, "gauge,x,t,t_over_T0,eta,eta_over_eta0")?;
    for tr in traces {
        for i in 0..tr.len() {
            let t = tr.times[i];
            if tr.is_dry(i) {
                writeln!(out, "{},{},{:.6},{:.6},dry,dry", tr.id, tr.x_position, t, t / t0)?;
            } else {
                let e = tr.eta[i];
                writeln!(
                    out,
                    "{},{},{:.6},{:.6},{:.6},{:.6}",
                    tr.id,
                    tr.x_position,
                    t,
                    t / t0,
                    e,
                    e / eta0
                )?;
            }
        }
    }
    Ok(())
}

/// Read traces written by [`write_traces_csv`].
pub fn read_traces_csv<R: BufRead>(input: R, still_water_depth: f64) -> Result<Vec<GaugeTrace>, FlumeError> {
    let mut traces: Vec<GaugeTrace> = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line.map_err(|e| FlumeError::MalformedTrace(e.to_string()))?;
        if n == 0 || line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 6 {
            return Err(FlumeError::MalformedTrace(format!(
                "line {}: expected 6 columns",
                n + 1
            )));
        }
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| FlumeError::MalformedTrace(format!("line {}: {e}", n + 1)))
        };
        let x = num(cols[1])?;
        let t = num(cols[2])?;
        let eta = if cols[4].trim() == "dry" {
            -still_water_depth
        } else {
            num(cols[4])?
        };
        match traces.last_mut() {
            Some(tr) if tr.id == cols[0] => tr.push(t, eta),
            _ => {
                let spec = GaugeSpec {
                    id: cols[0].to_string(),
                    x_position: x,
                    sampling_dt: 0.0,
                };
                let mut tr = GaugeTrace::new(&spec, still_water_depth);
                tr.push(t, eta);
                traces.push(tr);
            }
        }
    }
    Ok(traces)
}
