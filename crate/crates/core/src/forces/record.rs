use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ForceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Estimator {
    #[serde(rename = "SPH")]
    Sph,
    #[serde(rename = "ASCE")]
    Asce,
    SemiEmpirical,
}

impl Estimator {
    pub const ALL: [Estimator; 3] = [Estimator::Sph, Estimator::Asce, Estimator::SemiEmpirical];

    pub fn label(self) -> &'static str {
        match self {
            Estimator::Sph => "SPH",
            Estimator::Asce => "ASCE",
            Estimator::SemiEmpirical => "SemiEmpirical",
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Estimator {
    type Err = ForceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sph" => Ok(Estimator::Sph),
            "asce" => Ok(Estimator::Asce),
            "semiempirical" | "semi-empirical" | "semi_empirical" | "semi" => Ok(Estimator::SemiEmpirical),
            other => Err(ForceError::Malformed(format!("unknown estimator '{other}'"))),
        }
    }
}

/// Horizontal force history on the structure [N].
#[derive(Debug, Clone, PartialEq)]
pub struct ForceRecord {
    pub times: Vec<f64>,
    pub force: Vec<f64>,
    pub estimator: Estimator,
    /// Normalising force F0 [N].
    pub f0: f64,
}

impl ForceRecord {
    pub fn new(estimator: Estimator) -> Self {
        Self {
            times: Vec::new(),
            force: Vec::new(),
            estimator,
            f0: crate::F0,
        }
    }

    pub fn push(&mut self, t: f64, f: f64) {
        self.times.push(t);
        self.force.push(f);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Discrete maximum: (time, force).
    pub fn peak(&self) -> Option<(f64, f64)> {
        self.times
            .iter()
            .zip(&self.force)
            .fold(None, |best: Option<(f64, f64)>, (&t, &f)| match best {
                Some((_, b)) if b >= f => best,
                _ => Some((t, f)),
            })
    }

    pub fn normalized(&self) -> Vec<f64> {
        self.force.iter().map(|f| f / self.f0).collect()
    }

    /// Linear interpolation, zero outside the record.
    pub fn value_at(&self, t: f64) -> f64 {
        if self.times.is_empty() || t < self.times[0] || t > *self.times.last().unwrap() {
            return 0.0;
        }
        if self.times.len() == 1 {
            return self.force[0];
        }
        let k = self.times.partition_point(|&x| x <= t).clamp(1, self.times.len() - 1);
        let (t0, t1) = (self.times[k - 1], self.times[k]);
        let (f0, f1) = (self.force[k - 1], self.force[k]);
        if t1 == t0 {
            return f1;
        }
        f0 + (f1 - f0) * (t - t0) / (t1 - t0)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            force: self.force.iter().map(|f| f * factor).collect(),
            ..self.clone()
        }
    }
}

/// CSV with columns t, t/T0, F, F/F0, estimator.
pub fn write_force_csv<W: Write>(records: &[&ForceRecord], t0: f64, mut out: W) -> io::Result<()> {
    writeln!(out, "t,t_over_T0,F,F_over_F0,estimator")?;
    for r in records {
        for (t, f) in r.times.iter().zip(&r.force) {
            writeln!(out, "{},{},{},{},{}", t, t / t0, f, f / r.f0, r.estimator)?;
        }
    }
    Ok(())
}

/// Read records written by [`write_force_csv`]; F0 is recovered from the
/// F and F/F0 columns of the first row with non-zero force.
pub fn read_force_csv<R: BufRead>(input: R) -> Result<Vec<ForceRecord>, ForceError> {
    let mut out: Vec<ForceRecord> = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line.map_err(|e| ForceError::Malformed(e.to_string()))?;
        if n == 0 || line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 5 {
            return Err(ForceError::Malformed(format!("line {}: expected 5 columns", n + 1)));
        }
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| ForceError::Malformed(format!("line {}: {e}", n + 1)))
        };
        let est: Estimator = cols[4].trim().parse()?;
        let (t, f, fn_) = (num(cols[0])?, num(cols[2])?, num(cols[3])?);
        let rec = match out.last_mut() {
            Some(r) if r.estimator == est => r,
            _ => {
                out.push(ForceRecord::new(est));
                out.last_mut().unwrap()
            }
        };
        if rec.force.iter().all(|&x| x == 0.0) && f != 0.0 && fn_ != 0.0 {
            rec.f0 = f / fn_;
        }
        rec.push(t, f);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn peak_is_discrete_maximum() {
        let mut r = ForceRecord::new(Estimator::Sph);
        for (t, f) in [(0.0, 1.0), (0.1, 5.0), (0.2, 3.0)] {
            r.push(t, f);
        }
        assert_eq!(r.peak(), Some((0.1, 5.0)));
        assert_eq!(r.value_at(0.05), 3.0);
        assert_eq!(r.value_at(0.3), 0.0);
    }

    proptest! {
        #[test]
        fn rescaling_f0_rescales_export(f in 1.0..5000.0f64, c in 0.1..10.0f64) {
            let mut r = ForceRecord::new(Estimator::Sph);
            r.push(0.0, f);
            let base = r.normalized()[0];
            r.f0 *= c;
            prop_assert!((r.normalized()[0] - base / c).abs() <= 1e-12 * base.abs());
        }
    }

    #[test]
    fn csv_round_trip() {
        let mut a = ForceRecord::new(Estimator::Sph);
        let mut b = ForceRecord::new(Estimator::Asce);
        for i in 0..4 {
            a.push(i as f64 * 0.01, 100.0 * i as f64);
        }
        b.push(1.0, 2500.0);
        let mut buf = Vec::new();
        write_force_csv(&[&a, &b], crate::T0, &mut buf).unwrap();
        let back = read_force_csv(io::Cursor::new(buf)).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].estimator, Estimator::Sph);
        assert_eq!(back[1].force, vec![2500.0]);
        assert!((back[0].f0 - crate::F0).abs() < 1e-9);
        assert_eq!(back[0].force, a.force);
    }
}
