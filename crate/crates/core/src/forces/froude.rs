use super::ForceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowRegime {
    Subcritical,
    Critical,
    Supercritical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Froude {
    pub value: f64,
    pub regime: FlowRegime,
}

/// Fr = V/√(g·d).
pub fn froude_number(veff: f64, depth: f64, g: f64) -> Result<Froude, ForceError> {
    if !(depth > 0.0) {
        return Err(ForceError::NonPositiveDepth(depth));
    }
    let value = veff / (g * depth).sqrt();
    let regime = if value < 1.0 {
        FlowRegime::Subcritical
    } else if value > 1.0 {
        FlowRegime::Supercritical
    } else {
        FlowRegime::Critical
    };
    Ok(Froude { value, regime })
}
