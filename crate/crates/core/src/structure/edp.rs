use super::StructuralError;

/// Demand parameters and the histories they came from. Histories are
/// indexed `[floor][sample]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EdpResult {
    pub rmsa: Vec<f64>,
    pub rmsa_envelope: f64,
    pub peak_displacement: Vec<f64>,
    pub peak_displacement_envelope: f64,
    pub displacement_history: Vec<Vec<f64>>,
    pub velocity_history: Vec<Vec<f64>>,
    pub acceleration_history: Vec<Vec<f64>>,
    pub story_shear_history: Vec<Vec<f64>>,
    pub dt: f64,
    /// Any story spring left its elastic range.
    pub yielded: bool,
}

/// √(mean of x²), computed on x/max|x| so a constant history returns its
/// magnitude exactly.
pub fn rms(x: &[f64]) -> f64 {
    let m = x.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    if m == 0.0 || !m.is_finite() {
        return m;
    }
    m * (x.iter().map(|v| (v / m) * (v / m)).sum::<f64>() / x.len() as f64).sqrt()
}

/// Peak |u| and RMS acceleration per floor, plus envelopes.
pub fn extract_edp(displacement: &[Vec<f64>], acceleration: &[Vec<f64>]) -> Result<EdpResult, StructuralError> {
    if displacement.is_empty()
        || acceleration.is_empty()
        || displacement.iter().chain(acceleration).any(|h| h.is_empty())
    {
        return Err(StructuralError::EmptyHistory);
    }
    let rmsa: Vec<f64> = acceleration.iter().map(|a| rms(a)).collect();
    let peak: Vec<f64> = displacement
        .iter()
        .map(|u| u.iter().fold(0.0, |m: f64, x| m.max(x.abs())))
        .collect();
    Ok(EdpResult {
        rmsa_envelope: rmsa.iter().cloned().fold(0.0, f64::max),
        peak_displacement_envelope: peak.iter().cloned().fold(0.0, f64::max),
        rmsa,
        peak_displacement: peak,
        displacement_history: displacement.to_vec(),
        acceleration_history: acceleration.to_vec(),
        ..Default::default()
    })
}
