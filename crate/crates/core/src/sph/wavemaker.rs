use serde::{Deserialize, Serialize};

/// Rayleigh solitary wave on still water of depth `depth`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolitaryWave {
    /// Target wave height H [m].
    pub height: f64,
    /// Still-water depth h [m].
    pub depth: f64,
    /// Gravity [m/s²].
    pub g: f64,
}

impl SolitaryWave {
    pub fn new(height: f64, depth: f64) -> Self {
        Self {
            height,
            depth,
            g: crate::GRAVITY,
        }
    }

    /// Celerity c = √(g(H + h)).
    pub fn celerity(&self) -> f64 {
        (self.g * (self.height + self.depth)).sqrt()
    }

    /// Outskirt coefficient k = √(3H / (4h²(H + h))).
    pub fn outskirt(&self) -> f64 {
        let h = self.depth;
        (3.0 * self.height / (4.0 * h * h * (self.height + h))).sqrt()
    }

    /// Nominal wavelength 2π/k.
    pub fn wavelength(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.outskirt()
    }

    /// Half of the piston stroke, 2√(H(H + h)/3).
    pub fn half_stroke(&self) -> f64 {
        2.0 * (self.height * (self.height + self.depth) / 3.0).sqrt()
    }

    pub fn stroke(&self) -> f64 {
        2.0 * self.half_stroke()
    }

    /// Generation time T_f that starts the motion 3.8/k ahead of the crest,
    /// which leaves the initial displacement below 0.1% of the stroke.
    pub fn default_ramp(&self) -> f64 {
        2.0 * (self.half_stroke() + 3.8 / self.outskirt()) / self.celerity()
    }

    /// Surface elevation η(x_s, t) seen by the paddle.
    pub fn eta_at_paddle(&self, x_s: f64, t: f64, ramp: f64) -> f64 {
        let arg = self.outskirt() * (self.celerity() * (t - 0.5 * ramp) + self.half_stroke() - x_s);
        let s = 1.0 / arg.cosh();
        self.height * s * s
    }

    /// Paddle velocity dx_s/dt = c·η/(h + η).
    pub fn paddle_velocity(&self, x_s: f64, t: f64, ramp: f64) -> f64 {
        let eta = self.eta_at_paddle(x_s, t, ramp);
        self.celerity() * eta / (self.depth + eta)
    }
}

/// Piston displacement and velocity tabulated on a uniform time grid by
/// classical RK4 integration of the paddle equation.
#[derive(Debug, Clone, PartialEq)]
pub struct PistonTrajectory {
    dt: f64,
    x: Vec<f64>,
    v: Vec<f64>,
}

impl PistonTrajectory {
    pub fn rayleigh(wave: &SolitaryWave, ramp: f64, t_end: f64, dt: f64) -> Self {
        let n = (t_end / dt).ceil().max(1.0) as usize;
        let mut x = Vec::with_capacity(n + 1);
        let mut v = Vec::with_capacity(n + 1);
        let f = |t: f64, xs: f64| wave.paddle_velocity(xs, t, ramp);
        let mut xs = 0.0;
        x.push(xs);
        v.push(f(0.0, xs));
        for i in 0..n {
            let t = i as f64 * dt;
            let k1 = f(t, xs);
            let k2 = f(t + 0.5 * dt, xs + 0.5 * dt * k1);
            let k3 = f(t + 0.5 * dt, xs + 0.5 * dt * k2);
            let k4 = f(t + dt, xs + dt * k3);
            xs += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            x.push(xs);
            v.push(f(t + dt, xs));
        }
        Self { dt, x, v }
    }

    /// A paddle that never moves.
    pub fn stationary() -> Self {
        Self {
            dt: 1.0,
            x: vec![0.0, 0.0],
            v: vec![0.0, 0.0],
        }
    }

    pub fn duration(&self) -> f64 {
        (self.x.len() - 1) as f64 * self.dt
    }

    fn locate(&self, t: f64) -> Option<(usize, f64)> {
        if t <= 0.0 {
            return Some((0, 0.0));
        }
        let s = t / self.dt;
        let i = s.floor() as usize;
        if i + 1 >= self.x.len() {
            return None;
        }
        Some((i, s - i as f64))
    }

    /// Displacement x_s(t) by cubic Hermite interpolation; held at the final
    /// value beyond the table.
    pub fn displacement(&self, t: f64) -> f64 {
        match self.locate(t) {
            Some((i, s)) => {
                let (x0, x1) = (self.x[i], self.x[i + 1]);
                let (m0, m1) = (self.v[i] * self.dt, self.v[i + 1] * self.dt);
                let s2 = s * s;
                let s3 = s2 * s;
                (2.0 * s3 - 3.0 * s2 + 1.0) * x0
                    + (s3 - 2.0 * s2 + s) * m0
                    + (-2.0 * s3 + 3.0 * s2) * x1
                    + (s3 - s2) * m1
            }
            None => *self.x.last().unwrap(),
        }
    }

    pub fn velocity(&self, t: f64) -> f64 {
        match self.locate(t) {
            Some((i, s)) => self.v[i] + s * (self.v[i + 1] - self.v[i]),
            None => 0.0,
        }
    }
}

/// Piston displacement at time `t` for the Rayleigh solitary-wave paddle.
pub fn wavemaker_trajectory(t: f64, wave: &SolitaryWave, ramp: f64) -> f64 {
    let steps = (t / 1e-3).ceil().max(1.0);
    PistonTrajectory::rayleigh(wave, ramp, t, t.max(1e-12) / steps).displacement(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn validation_wave() -> SolitaryWave {
        SolitaryWave::new(0.4, 0.75)
    }

    /// Closed-form paddle path: x = (S/2)(tanh θ − tanh θ0) with
    /// θ = k(c(t − T_f/2) + S/2 − x), solved by bisection.
    fn implicit_paddle(w: &SolitaryWave, t: f64, ramp: f64) -> f64 {
        let (k, c, s2) = (w.outskirt(), w.celerity(), w.half_stroke());
        let th0 = (k * (-c * 0.5 * ramp + s2)).tanh();
        let g = |x: f64| s2 * ((k * (c * (t - 0.5 * ramp) + s2 - x)).tanh() - th0) - x;
        let (mut lo, mut hi) = (0.0, 3.0 * s2);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn stroke_of_validation_wave() {
        let w = validation_wave();
        let expected = 2.0 * 2.0 * (0.4f64 * 1.15 / 3.0).sqrt();
        assert!((w.stroke() - expected).abs() < 1e-12);
        assert!((w.stroke() - 1.566).abs() < 1e-3);
    }

    #[test]
    fn starts_at_rest_and_reaches_full_stroke() {
        let w = validation_wave();
        let ramp = w.default_ramp();
        let traj = PistonTrajectory::rayleigh(&w, ramp, 3.0 * ramp, 1e-3);
        assert!(traj.displacement(0.0).abs() < 0.01 * w.stroke());
        let end = traj.displacement(3.0 * ramp);
        assert!((end - w.stroke()).abs() < 0.01 * w.stroke(), "end = {end}");
    }

    #[test]
    fn monotone_non_decreasing() {
        let w = SolitaryWave::new(0.9, 0.75);
        let ramp = w.default_ramp();
        let traj = PistonTrajectory::rayleigh(&w, ramp, 2.0 * ramp, 1e-3);
        let mut prev = traj.displacement(0.0);
        for i in 1..=2000 {
            let x = traj.displacement(i as f64 * ramp / 1000.0);
            assert!(x >= prev - 1e-12);
            prev = x;
        }
    }

    #[test]
    fn rk4_matches_implicit_closed_form() {
        let w = validation_wave();
        let ramp = w.default_ramp();
        let traj = PistonTrajectory::rayleigh(&w, ramp, 2.0 * ramp, 1e-3);
        for i in 0..=40 {
            let t = i as f64 * ramp / 20.0;
            let exact = implicit_paddle(&w, t, ramp);
            assert!((traj.displacement(t) - exact).abs() < 1e-7, "t = {t}");
        }
        assert!((wavemaker_trajectory(ramp, &w, ramp) - implicit_paddle(&w, ramp, ramp)).abs() < 1e-7);
    }
}
