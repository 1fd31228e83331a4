use serde::{Deserialize, Serialize};

use super::{Estimator, ForceError, ForceRecord};
use crate::flume::GaugeTrace;

/// Breaking-wave load parameters for vertical walls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsceParams {
    /// Pressure coefficient, 1.6–3.5 by structure category.
    pub cp: f64,
    /// Unit weight of water [N/m³].
    pub gamma_w: f64,
    /// Still-water depth at the structure base [m].
    pub ds: f64,
}

impl AsceParams {
    pub fn validate(&self) -> Result<(), ForceError> {
        if !(1.6..=3.5).contains(&self.cp) {
            return Err(ForceError::CoefficientOutOfRange(self.cp));
        }
        if !(self.gamma_w > 0.0) {
            return Err(ForceError::InvalidParams(format!("gamma_w = {}", self.gamma_w)));
        }
        if !(self.ds >= 0.0) {
            return Err(ForceError::InvalidParams(format!("ds = {}", self.ds)));
        }
        Ok(())
    }
}

/// Maximum combined static and dynamic pressure P = (Cp + 1.2)·γ_w·d_s [Pa].
pub fn asce_pressure(p: &AsceParams) -> Result<f64, ForceError> {
    p.validate()?;
    Ok((p.cp + 1.2) * p.gamma_w * p.ds)
}

/// Net breaking-wave force per unit length F = (1.1·Cp + 2.4)·γ_w·d_s² [N/m].
pub fn asce_force_per_length(p: &AsceParams) -> Result<f64, ForceError> {
    p.validate()?;
    Ok((1.1 * p.cp + 2.4) * p.gamma_w * p.ds * p.ds)
}

/// The formula has no time dependence, so the record is a single row: the
/// force on a wall of `width` placed at `t_peak`.
pub fn asce_envelope_record(p: &AsceParams, width: f64, t_peak: f64) -> Result<ForceRecord, ForceError> {
    let mut r = ForceRecord::new(Estimator::Asce);
    r.push(t_peak, asce_force_per_length(p)? * width);
    Ok(r)
}

/// Force history on a wall of `width` with d_s(t) read as the water depth
/// h_b(t) above the flat bed at the gauge in front of the structure; zero
/// while the gauge is dry.
pub fn asce_force_record(trace: &GaugeTrace, cp: f64, gamma_w: f64, width: f64) -> Result<ForceRecord, ForceError> {
    let mut r = ForceRecord::new(Estimator::Asce);
    for (i, (&t, hb)) in trace.times.iter().zip(trace.surface_elevation()).enumerate() {
        let ds = if trace.is_dry(i) { 0.0 } else { hb.max(0.0) };
        r.push(t, asce_force_per_length(&AsceParams { cp, gamma_w, ds })? * width);
    }
    Ok(r)
}
