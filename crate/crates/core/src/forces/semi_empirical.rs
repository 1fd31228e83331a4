use serde::{Deserialize, Serialize};

use super::{Estimator, ForceError, ForceRecord};
use crate::flume::GaugeTrace;

/// Static plus drag load from the inundation depth and flow speed at the
/// structure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiEmpiricalParams {
    /// Drag coefficient.
    pub cd: f64,
    /// Structure width normal to the flow [m].
    pub width: f64,
    /// Projected area [m²]; the wetted frontal area w·(h_b − base_offset) when absent.
    #[serde(default)]
    pub area: Option<f64>,
    /// Elevation subtracted from h_b; equals the still-water depth [m].
    pub base_offset: f64,
    pub rho: f64,
    pub g: f64,
}

impl Default for SemiEmpiricalParams {
    fn default() -> Self {
        Self {
            cd: 2.0,
            width: 0.4,
            area: None,
            base_offset: 0.75,
            rho: crate::RHO_WATER,
            g: crate::GRAVITY,
        }
    }
}

impl SemiEmpiricalParams {
    pub fn validate(&self) -> Result<(), ForceError> {
        let bad = |name: &str, v: f64| ForceError::InvalidParams(format!("{name} must be positive, got {v}"));
        for (name, v) in [("cd", self.cd), ("width", self.width), ("rho", self.rho), ("g", self.g)] {
            if !(v > 0.0) {
                return Err(bad(name, v));
            }
        }
        if let Some(a) = self.area {
            if !(a > 0.0) {
                return Err(bad("area", a));
            }
        }
        Ok(())
    }

    fn area_at(&self, hb: f64) -> f64 {
        self.area
            .unwrap_or_else(|| self.width * (hb - self.base_offset).max(0.0))
    }
}

/// ½·w·ρ·g·(h_b − offset)², zero at or below the offset.
pub fn static_force(hb: f64, p: &SemiEmpiricalParams) -> f64 {
    let s = (hb - p.base_offset).max(0.0);
    0.5 * p.width * s * (p.rho * p.g * s)
}

/// ½·ρ·Cd·A·V².
pub fn dynamic_force(veff: f64, area: f64, p: &SemiEmpiricalParams) -> f64 {
    0.5 * p.rho * p.cd * area * veff * veff
}

/// Total force history from a water-level trace h_b(t) (measured from the
/// flat bed) and an aligned effective-velocity trace.
pub fn semi_empirical_force(
    hb_trace: &GaugeTrace,
    veff_trace: &[f64],
    p: &SemiEmpiricalParams,
) -> Result<ForceRecord, ForceError> {
    p.validate()?;
    if hb_trace.len() != veff_trace.len() {
        return Err(ForceError::LengthMismatch(hb_trace.len(), veff_trace.len()));
    }
    let mut r = ForceRecord::new(Estimator::SemiEmpirical);
    for ((t, hb), v) in hb_trace.times.iter().zip(hb_trace.surface_elevation()).zip(veff_trace) {
        r.push(*t, static_force(hb, p) + dynamic_force(*v, p.area_at(hb), p));
    }
    Ok(r)
}
