use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::StructuralError;
use crate::forces::ForceRecord;

/// The five random structural parameters. SI units throughout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructuralParams {
    /// [Pa]
    pub yield_strength: f64,
    /// [N/m]
    pub col_weight_per_len: f64,
    /// [N/m]
    pub beam_weight_per_len: f64,
    /// [N/m]
    pub girder_weight_per_len: f64,
    /// [Pa]
    pub youngs_modulus: f64,
}

impl StructuralParams {
    /// Mean values of the steel two-storey frame.
    pub fn mean() -> Self {
        Self {
            yield_strength: 413.685e6,
            col_weight_per_len: 173.4,
            beam_weight_per_len: 133.554,
            girder_weight_per_len: 133.554,
            youngs_modulus: 200e9,
        }
    }

    pub fn validate(&self) -> Result<(), StructuralError> {
        let fields = [
            ("yield_strength", self.yield_strength),
            ("col_weight_per_len", self.col_weight_per_len),
            ("beam_weight_per_len", self.beam_weight_per_len),
            ("girder_weight_per_len", self.girder_weight_per_len),
            ("youngs_modulus", self.youngs_modulus),
        ];
        for (name, v) in fields {
            if !(v > 0.0) || !v.is_finite() {
                return Err(StructuralError::InvalidParams(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Frame layout and the constants mapping member weights to story
/// properties. None of these are measured values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FrameGeometry {
    pub n_stories: usize,
    pub n_columns: usize,
    pub story_height: f64,
    pub n_beams: usize,
    pub beam_length: f64,
    pub n_girders: usize,
    pub girder_length: f64,
    /// Extra mass per floor [kg].
    pub dead_load_mass: f64,
    /// I_c = c_I · w_col² [m⁴ per (N/m)²].
    pub c_i: f64,
    /// Section modulus at the reference column weight [m³].
    pub z_cfg: f64,
    /// Column weight at which the section modulus equals `z_cfg` [N/m].
    pub reference_weight: f64,
    pub post_yield_ratio: f64,
    pub damping_ratio: f64,
}

impl Default for FrameGeometry {
    fn default() -> Self {
        Self {
            n_stories: 2,
            n_columns: 4,
            story_height: 3.0,
            n_beams: 2,
            beam_length: 4.0,
            n_girders: 2,
            girder_length: 4.0,
            dead_load_mass: 0.0,
            c_i: 4e-11,
            z_cfg: 7.5e-5,
            reference_weight: 173.4,
            post_yield_ratio: 0.02,
            damping_ratio: 0.02,
        }
    }
}

/// Shear building: floor i sits on story spring i, which connects it to
/// floor i−1 (floor 0 being the ground).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShearFrameModel {
    pub story_masses: Vec<f64>,
    pub story_stiffness: Vec<f64>,
    pub story_yield_shear: Vec<f64>,
    pub post_yield_ratio: f64,
    pub damping_ratio: f64,
    pub story_height: f64,
    pub n_stories: usize,
}

impl ShearFrameModel {
    pub fn validate(&self) -> Result<(), StructuralError> {
        let n = self.n_stories;
        if n == 0
            || self.story_masses.len() != n
            || self.story_stiffness.len() != n
            || self.story_yield_shear.len() != n
        {
            return Err(StructuralError::InvalidParams(format!(
                "story vectors must have length {n} > 0"
            )));
        }
        let all_pos = |v: &[f64]| v.iter().all(|x| *x > 0.0 && x.is_finite());
        if !all_pos(&self.story_masses) || !all_pos(&self.story_stiffness) || !all_pos(&self.story_yield_shear) {
            return Err(StructuralError::InvalidParams(
                "masses, stiffnesses and yield shears must be positive".into(),
            ));
        }
        if !(0.0..1.0).contains(&self.post_yield_ratio) {
            return Err(StructuralError::InvalidParams(format!(
                "post_yield_ratio = {}",
                self.post_yield_ratio
            )));
        }
        if !(0.0..=0.2).contains(&self.damping_ratio) {
            return Err(StructuralError::InvalidParams(format!(
                "damping_ratio = {}",
                self.damping_ratio
            )));
        }
        Ok(())
    }

    pub fn mass_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_column_slice(&self.story_masses))
    }

    /// Initial stiffness matrix.
    pub fn stiffness_matrix(&self) -> DMatrix<f64> {
        assemble(&self.story_stiffness)
    }

    /// Natural circular frequencies in ascending order [rad/s].
    pub fn natural_frequencies(&self) -> Vec<f64> {
        let m_inv_sqrt = DVector::from_iterator(self.n_stories, self.story_masses.iter().map(|m| 1.0 / m.sqrt()));
        let k = self.stiffness_matrix();
        let a = DMatrix::from_fn(self.n_stories, self.n_stories, |i, j| {
            m_inv_sqrt[i] * k[(i, j)] * m_inv_sqrt[j]
        });
        let mut w: Vec<f64> = SymmetricEigen::new(a)
            .eigenvalues
            .iter()
            .map(|l| l.max(0.0).sqrt())
            .collect();
        w.sort_by(f64::total_cmp);
        w
    }

    /// Fundamental period T1 [s].
    pub fn fundamental_period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.natural_frequencies()[0]
    }

    /// Rayleigh coefficients (a0, a1) with C = a0·M + a1·K giving the damping
    /// ratio at the first two modes; a single story splits it evenly.
    pub fn rayleigh_coefficients(&self) -> (f64, f64) {
        let w = self.natural_frequencies();
        let z = self.damping_ratio;
        if w.len() == 1 {
            (z * w[0], z / w[0])
        } else {
            let s = w[0] + w[1];
            (2.0 * z * w[0] * w[1] / s, 2.0 * z / s)
        }
    }

    pub fn damping_matrix(&self) -> DMatrix<f64> {
        let (a0, a1) = self.rayleigh_coefficients();
        self.mass_matrix() * a0 + self.stiffness_matrix() * a1
    }
}

/// Tridiagonal shear-building matrix from story stiffnesses.
pub(crate) fn assemble(k: &[f64]) -> DMatrix<f64> {
    let n = k.len();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] += k[i];
        if i + 1 < n {
            m[(i, i)] += k[i + 1];
            m[(i, i + 1)] -= k[i + 1];
            m[(i + 1, i)] -= k[i + 1];
        }
    }
    m
}

/// Map member properties to story mass, stiffness and yield shear.
///
/// m = (n_col·h·w_col + n_beam·L_b·w_beam + n_girder·L_g·w_girder)/g + dead load,
/// k = n_col·12·E·I_c/h³ with I_c = c_I·w_col²,
/// V_y = f_y·z_cfg·w_col/reference_weight.
pub fn build_frame(p: &StructuralParams, geom: &FrameGeometry) -> Result<ShearFrameModel, StructuralError> {
    p.validate()?;
    let g = crate::GRAVITY;
    let weight = geom.n_columns as f64 * geom.story_height * p.col_weight_per_len
        + geom.n_beams as f64 * geom.beam_length * p.beam_weight_per_len
        + geom.n_girders as f64 * geom.girder_length * p.girder_weight_per_len;
    let mass = weight / g + geom.dead_load_mass;
    let i_c = geom.c_i * p.col_weight_per_len * p.col_weight_per_len;
    let k = geom.n_columns as f64 * 12.0 * p.youngs_modulus * i_c / geom.story_height.powi(3);
    let vy = p.yield_strength * geom.z_cfg * p.col_weight_per_len / geom.reference_weight;
    let n = geom.n_stories;
    let model = ShearFrameModel {
        story_masses: vec![mass; n],
        story_stiffness: vec![k; n],
        story_yield_shear: vec![vy; n],
        post_yield_ratio: geom.post_yield_ratio,
        damping_ratio: geom.damping_ratio,
        story_height: geom.story_height,
        n_stories: n,
    };
    model.validate()?;
    Ok(model)
}

/// Share of the load taken by each floor: the overlap of the wetted height
/// with each story span, normalised. A dry or zero height puts everything on
/// the first floor.
pub fn load_fractions(model: &ShearFrameModel, wetted_height: f64) -> Vec<f64> {
    let h = model.story_height;
    let mut f: Vec<f64> = (0..model.n_stories)
        .map(|i| (wetted_height.min((i + 1) as f64 * h) - i as f64 * h).max(0.0))
        .collect();
    let total: f64 = f.iter().sum();
    if total > 0.0 {
        f.iter_mut().for_each(|x| *x /= total);
    } else {
        f.iter_mut().for_each(|x| *x = 0.0);
        f[0] = 1.0;
    }
    f
}

/// Resample a force history on a uniform grid of `n_steps + 1` points and
/// split it between floors; `scale` multiplies the whole history.
pub fn story_loads(force: &ForceRecord, fractions: &[f64], dt: f64, n_steps: usize, scale: f64) -> Vec<Vec<f64>> {
    let base: Vec<f64> = (0..=n_steps).map(|i| scale * force.value_at(i as f64 * dt)).collect();
    fractions
        .iter()
        .map(|&fr| base.iter().map(|v| v * fr).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_frame_period_is_plausible() {
        let m = build_frame(&StructuralParams::mean(), &FrameGeometry::default()).unwrap();
        let t1 = m.fundamental_period();
        assert!((0.1..=1.0).contains(&t1), "T1 = {t1}");
        // independent 2×2 oracle for equal floors: ω² = (3 ∓ √5)/2 · k/m
        let (k, mass) = (m.story_stiffness[0], m.story_masses[0]);
        let w1 = ((3.0 - 5f64.sqrt()) / 2.0 * k / mass).sqrt();
        assert!((m.natural_frequencies()[0] - w1).abs() < 1e-9 * w1);
    }

    #[test]
    fn stiffness_is_linear_in_e() {
        let p = StructuralParams::mean();
        let g = FrameGeometry::default();
        let a = build_frame(&p, &g).unwrap();
        let b = build_frame(
            &StructuralParams {
                youngs_modulus: 2.0 * p.youngs_modulus,
                ..p
            },
            &g,
        )
        .unwrap();
        for (ka, kb) in a.story_stiffness.iter().zip(&b.story_stiffness) {
            assert!((kb - 2.0 * ka).abs() < 1e-9 * kb);
        }
    }

    #[test]
    fn zero_girder_weight_rejected() {
        let p = StructuralParams {
            girder_weight_per_len: 0.0,
            ..StructuralParams::mean()
        };
        assert!(matches!(
            build_frame(&p, &FrameGeometry::default()),
            Err(StructuralError::InvalidParams(_))
        ));
    }

    #[test]
    fn rayleigh_damping_hits_both_modes() {
        let m = build_frame(&StructuralParams::mean(), &FrameGeometry::default()).unwrap();
        let (a0, a1) = m.rayleigh_coefficients();
        for w in m.natural_frequencies() {
            assert!((a0 / (2.0 * w) + a1 * w / 2.0 - 0.02).abs() < 1e-12);
        }
    }

    #[test]
    fn low_structure_loads_first_floor() {
        let m = build_frame(&StructuralParams::mean(), &FrameGeometry::default()).unwrap();
        assert_eq!(load_fractions(&m, 0.5), vec![1.0, 0.0]);
        assert_eq!(load_fractions(&m, 4.5), vec![2.0 / 3.0, 1.0 / 3.0]);
    }
}
