use nalgebra::{DMatrix, DVector};

use super::{extract_edp, EdpResult, ShearFrameModel, StructuralError};

const BETA: f64 = 0.25;
const GAMMA: f64 = 0.5;
const MAX_ITER: usize = 50;

/// Bilinear story spring with kinematic hardening. The force is confined
/// to a band of half-width (1 − α)·V_y around the hardening line α·k·δ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilinearSpring {
    pub k: f64,
    pub yield_force: f64,
    pub alpha: f64,
    /// Committed deformation and force.
    pub drift: f64,
    pub force: f64,
}

impl BilinearSpring {
    pub fn new(k: f64, yield_force: f64, alpha: f64) -> Self {
        Self {
            k,
            yield_force,
            alpha,
            drift: 0.0,
            force: 0.0,
        }
    }

    /// Force and tangent at a trial drift, measured from the committed state.
    pub fn trial(&self, drift: f64) -> (f64, f64) {
        let f_el = self.force + self.k * (drift - self.drift);
        let back = self.alpha * self.k * drift;
        let band = (1.0 - self.alpha) * self.yield_force;
        if f_el > back + band {
            (back + band, self.alpha * self.k)
        } else if f_el < back - band {
            (back - band, self.alpha * self.k)
        } else {
            (f_el, self.k)
        }
    }

    pub fn commit(&mut self, drift: f64) -> bool {
        let (f, kt) = self.trial(drift);
        self.drift = drift;
        self.force = f;
        kt < self.k
    }
}

fn drifts(u: &DVector<f64>) -> Vec<f64> {
    (0..u.len())
        .map(|i| u[i] - if i == 0 { 0.0 } else { u[i - 1] })
        .collect()
}

/// Restoring force vector and tangent matrix at trial floor displacements.
fn restoring(springs: &[BilinearSpring], u: &DVector<f64>) -> (DVector<f64>, DMatrix<f64>, Vec<f64>) {
    let n = springs.len();
    let mut fs = DVector::zeros(n);
    let mut kt = Vec::with_capacity(n);
    let mut shear = Vec::with_capacity(n);
    for (i, (s, d)) in springs.iter().zip(drifts(u)).enumerate() {
        let (f, k) = s.trial(d);
        fs[i] += f;
        if i > 0 {
            fs[i - 1] -= f;
        }
        kt.push(k);
        shear.push(f);
    }
    (fs, super::frame::assemble(&kt), shear)
}

/// Response from rest. `load[i][n]` is the force on floor i at t = n·dt.
pub fn newmark_response(model: &ShearFrameModel, load: &[Vec<f64>], dt: f64) -> Result<EdpResult, StructuralError> {
    let zero = vec![0.0; model.n_stories];
    newmark_response_from(model, load, dt, &zero, &zero)
}

/// Average-acceleration Newmark with Newton iteration on the story springs,
/// starting from floor displacements `u0` and velocities `v0`.
pub fn newmark_response_from(
    model: &ShearFrameModel,
    load: &[Vec<f64>],
    dt: f64,
    u0: &[f64],
    v0: &[f64],
) -> Result<EdpResult, StructuralError> {
    model.validate()?;
    let n = model.n_stories;
    if load.len() != n || u0.len() != n || v0.len() != n {
        return Err(StructuralError::InvalidParams(format!(
            "expected {n} load histories and initial values"
        )));
    }
    let steps = load[0].len();
    if steps == 0 {
        return Err(StructuralError::EmptyHistory);
    }
    if load.iter().any(|l| l.len() != steps) {
        return Err(StructuralError::InvalidParams("load histories differ in length".into()));
    }
    let limit = model.fundamental_period() / 20.0;
    if !(dt > 0.0) || dt > limit {
        return Err(StructuralError::TimestepTooCoarse { dt, limit });
    }

    let m = model.mass_matrix();
    let c = model.damping_matrix();
    let mut springs: Vec<BilinearSpring> = (0..n)
        .map(|i| {
            BilinearSpring::new(
                model.story_stiffness[i],
                model.story_yield_shear[i],
                model.post_yield_ratio,
            )
        })
        .collect();

    let p_at = |k: usize| DVector::from_iterator(n, load.iter().map(|l| l[k]));
    let mut u = DVector::from_column_slice(u0);
    let mut v = DVector::from_column_slice(v0);
    let mut yielded = false;
    for (s, d) in springs.iter_mut().zip(drifts(&u)) {
        yielded |= s.commit(d);
    }
    let (fs0, _, shear0) = restoring(&springs, &u);
    let m_inv = DMatrix::from_diagonal(&DVector::from_iterator(n, model.story_masses.iter().map(|x| 1.0 / x)));
    let mut a = &m_inv * (p_at(0) - &c * &v - fs0);

    let a1 = &m / (BETA * dt * dt) + &c * (GAMMA / (BETA * dt));
    let a2 = &m / (BETA * dt) + &c * (GAMMA / BETA - 1.0);
    let a3 = &m * (0.5 / BETA - 1.0) + &c * (dt * (GAMMA / (2.0 * BETA) - 1.0));

    let mut disp = vec![Vec::with_capacity(steps); n];
    let mut vel = vec![Vec::with_capacity(steps); n];
    let mut acc = vec![Vec::with_capacity(steps); n];
    let mut shear = vec![Vec::with_capacity(steps); n];
    let record = |disp: &mut Vec<Vec<f64>>,
                  vel: &mut Vec<Vec<f64>>,
                  acc: &mut Vec<Vec<f64>>,
                  shear: &mut Vec<Vec<f64>>,
                  u: &DVector<f64>,
                  v: &DVector<f64>,
                  a: &DVector<f64>,
                  sh: &[f64]| {
        for i in 0..n {
            disp[i].push(u[i]);
            vel[i].push(v[i]);
            acc[i].push(a[i]);
            shear[i].push(sh[i]);
        }
    };
    record(&mut disp, &mut vel, &mut acc, &mut shear, &u, &v, &a, &shear0);

    for step in 1..steps {
        let p_hat = p_at(step) + &a1 * &u + &a2 * &v + &a3 * &a;
        let scale = p_hat
            .amax()
            .max(model.story_yield_shear.iter().cloned().fold(0.0, f64::max));
        let mut u_new = u.clone();
        let mut converged = false;
        for _ in 0..MAX_ITER {
            let (fs, kt, _) = restoring(&springs, &u_new);
            let r = &p_hat - &fs - &a1 * &u_new;
            if r.amax() <= 1e-12 * scale {
                converged = true;
                break;
            }
            let k_hat = kt + &a1;
            let du = k_hat.lu().solve(&r).ok_or(StructuralError::NonConvergence { step })?;
            u_new += du;
        }
        if !converged {
            return Err(StructuralError::NonConvergence { step });
        }
        let v_new = (&u_new - &u) * (GAMMA / (BETA * dt))
            + &v * (1.0 - GAMMA / BETA)
            + &a * (dt * (1.0 - GAMMA / (2.0 * BETA)));
        let a_new = (&u_new - &u) / (BETA * dt * dt) - &v / (BETA * dt) - &a * (0.5 / BETA - 1.0);
        let (_, _, sh) = restoring(&springs, &u_new);
        for (s, d) in springs.iter_mut().zip(drifts(&u_new)) {
            yielded |= s.commit(d);
        }
        u = u_new;
        v = v_new;
        a = a_new;
        record(&mut disp, &mut vel, &mut acc, &mut shear, &u, &v, &a, &sh);
    }

    let mut edp = extract_edp(&disp, &acc)?;
    edp.dt = dt;
    edp.velocity_history = vel;
    edp.story_shear_history = shear;
    edp.yielded = yielded;
    Ok(edp)
}
