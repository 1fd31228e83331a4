use std::f64::consts::PI;

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

/// Wendland C² kernel parameters for 2-D.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelConfig {
    /// Smoothing length h [m].
    pub h: f64,
    /// Normalisation 7/(4πh²) [1/m²].
    pub alpha_d: f64,
}

impl KernelConfig {
    pub fn new(h: f64) -> Self {
        Self {
            h,
            alpha_d: 7.0 / (4.0 * PI * h * h),
        }
    }

    /// Default coupling h = 2·dp.
    pub fn from_spacing(dp: f64) -> Self {
        Self::new(2.0 * dp)
    }

    /// Compact support radius κh with κ = 2.
    #[inline]
    pub fn support_radius(&self) -> f64 {
        2.0 * self.h
    }
}

/// Kernel weight W(r, h) [1/m²]; zero outside q = r/h ∈ [0, 2].
#[inline]
pub fn wendland_w(r: f64, cfg: &KernelConfig) -> f64 {
    let q = r / cfg.h;
    if q >= 2.0 {
        return 0.0;
    }
    let t = 1.0 - 0.5 * q;
    let t2 = t * t;
    cfg.alpha_d * t2 * t2 * (1.0 + 2.0 * q)
}

/// Scalar F with ∇_a W_ab = F · r_ab, i.e. (dW/dr)/r.
///
/// dW/dq = -5qα(1 - q/2)³, so F = -5α(1 - q/2)³ / h². Finite at r = 0.
#[inline]
pub fn wendland_grad_factor(r: f64, cfg: &KernelConfig) -> f64 {
    let q = r / cfg.h;
    if q >= 2.0 {
        return 0.0;
    }
    let t = 1.0 - 0.5 * q;
    -5.0 * cfg.alpha_d * t * t * t / (cfg.h * cfg.h)
}

/// Kernel gradient with respect to the first particle, evaluated at r_vec = r_a - r_b.
#[inline]
pub fn wendland_grad_w(r_vec: &Vector2<f64>, cfg: &KernelConfig) -> Vector2<f64> {
    let r = r_vec.norm();
    if r == 0.0 {
        return Vector2::zeros();
    }
    r_vec * wendland_grad_factor(r, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> KernelConfig {
        KernelConfig::new(0.1)
    }

    #[test]
    fn support_boundary_is_zero() {
        let c = cfg();
        assert_eq!(wendland_w(2.0 * c.h, &c), 0.0);
        assert_eq!(wendland_w(3.0 * c.h, &c), 0.0);
        let g = wendland_grad_w(&Vector2::new(2.0 * c.h, 0.0), &c);
        assert_eq!(g, Vector2::zeros());
    }

    #[test]
    fn origin_value_is_normalisation() {
        let c = cfg();
        assert_eq!(wendland_w(0.0, &c), c.alpha_d);
        assert_eq!(wendland_grad_w(&Vector2::zeros(), &c), Vector2::zeros());
    }

    #[test]
    fn monotone_non_increasing() {
        let c = cfg();
        let mut prev = f64::INFINITY;
        for i in 0..=400 {
            let r = i as f64 * 0.25 * c.h / 50.0;
            let w = wendland_w(r, &c);
            assert!(w <= prev);
            assert!(w >= 0.0);
            prev = w;
        }
    }

    #[test]
    fn gradient_points_toward_neighbour() {
        let c = cfg();
        let r = Vector2::new(0.03, -0.04);
        let g = wendland_grad_w(&r, &c);
        // radial and opposite to r_vec inside the support
        assert!(g.dot(&r) < 0.0);
        assert!((g.x * r.y - g.y * r.x).abs() < 1e-12);
    }

    #[test]
    fn gradient_antisymmetric() {
        let c = cfg();
        for &(x, y) in &[(0.01, 0.0), (0.05, 0.12), (-0.07, 0.02)] {
            let r = Vector2::new(x, y);
            let s = wendland_grad_w(&r, &c) + wendland_grad_w(&-r, &c);
            assert_eq!(s, Vector2::zeros());
        }
    }
}
