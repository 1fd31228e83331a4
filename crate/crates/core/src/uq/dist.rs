use serde::{Deserialize, Serialize};
use statrs::function::{beta::beta_reg, erf::erfc};

use super::UqError;

/// Marginal distribution of one random variable. Normal and lognormal take
/// the arithmetic mean and standard deviation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "distribution", rename_all = "lowercase")]
pub enum Distribution {
    Constant {
        value: f64,
    },
    Normal {
        mean: f64,
        sd: f64,
    },
    Lognormal {
        mean: f64,
        sd: f64,
    },
    Uniform {
        min: f64,
        max: f64,
    },
    Beta {
        alpha: f64,
        beta: f64,
        min: f64,
        max: f64,
    },
    /// Equal probability on each listed value, in the order given.
    Discrete {
        values: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomVariableSpec {
    pub name: String,
    #[serde(flatten)]
    pub distribution: Distribution,
    /// Values below this floor are redrawn inside their stratum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<f64>,
}

impl RandomVariableSpec {
    pub fn new(name: &str, distribution: Distribution) -> Self {
        Self {
            name: name.to_string(),
            distribution,
            truncation: None,
        }
    }

    pub fn positive(mut self) -> Self {
        self.truncation = Some(0.0);
        self
    }

    pub fn validate(&self) -> Result<(), UqError> {
        let fail = |reason: String| {
            Err(UqError::InvalidSpec {
                name: self.name.clone(),
                reason,
            })
        };
        let finite = |xs: &[f64]| xs.iter().all(|x| x.is_finite());
        match &self.distribution {
            Distribution::Constant { value } if !value.is_finite() => fail("value must be finite".into()),
            Distribution::Normal { mean, sd } | Distribution::Lognormal { mean, sd }
                if !finite(&[*mean, *sd]) || *sd <= 0.0 =>
            {
                fail(format!("sd must be positive, got {sd}"))
            }
            Distribution::Lognormal { mean, .. } if *mean <= 0.0 => fail(format!("mean must be positive, got {mean}")),
            Distribution::Uniform { min, max } if !finite(&[*min, *max]) || max <= min => {
                fail(format!("need max > min, got [{min}, {max}]"))
            }
            Distribution::Beta { alpha, beta, min, max }
                if !finite(&[*alpha, *beta, *min, *max]) || max <= min || *alpha <= 0.0 || *beta <= 0.0 =>
            {
                fail("need alpha, beta > 0 and max > min".into())
            }
            Distribution::Discrete { values } if values.is_empty() || !finite(values) => {
                fail("need at least one finite value".into())
            }
            _ => Ok(()),
        }
    }

    /// Value range for bounded distributions.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        match self.distribution {
            Distribution::Uniform { min, max } | Distribution::Beta { min, max, .. } => Some((min, max)),
            Distribution::Constant { value } => Some((value, value)),
            _ => None,
        }
    }
}

fn lognormal_params(mean: f64, sd: f64) -> (f64, f64) {
    let s2 = (1.0 + (sd / mean).powi(2)).ln();
    (mean.ln() - 0.5 * s2, s2.sqrt())
}

fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// Standard normal quantile: rational approximation refined by one Halley
/// step against the complementary error function.
pub fn normal_quantile(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;
    let x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    let e = std_normal_cdf(x) - p;
    let u = e * (2.0 * std::f64::consts::PI).sqrt() * (0.5 * x * x).exp();
    x - u / (1.0 + 0.5 * x * u)
}

fn beta_quantile(a: f64, b: f64, p: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if beta_reg(a, b, mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Quantile function F⁻¹(u) for u ∈ (0, 1).
pub fn inverse_cdf(spec: &RandomVariableSpec, u: f64) -> Result<f64, UqError> {
    if !(u > 0.0 && u < 1.0) {
        return Err(UqError::DomainError(u));
    }
    spec.validate()?;
    Ok(match &spec.distribution {
        Distribution::Constant { value } => *value,
        Distribution::Normal { mean, sd } => mean + sd * normal_quantile(u),
        Distribution::Lognormal { mean, sd } => {
            let (mu, s) = lognormal_params(*mean, *sd);
            (mu + s * normal_quantile(u)).exp()
        }
        Distribution::Uniform { min, max } => min + u * (max - min),
        Distribution::Beta { alpha, beta, min, max } => min + (max - min) * beta_quantile(*alpha, *beta, u),
        Distribution::Discrete { values } => values[((u * values.len() as f64) as usize).min(values.len() - 1)],
    })
}

/// Cumulative distribution function.
pub fn cdf(spec: &RandomVariableSpec, x: f64) -> f64 {
    match &spec.distribution {
        Distribution::Constant { value } => {
            if x >= *value {
                1.0
            } else {
                0.0
            }
        }
        Distribution::Normal { mean, sd } => std_normal_cdf((x - mean) / sd),
        Distribution::Lognormal { mean, sd } => {
            if x <= 0.0 {
                0.0
            } else {
                let (mu, s) = lognormal_params(*mean, *sd);
                std_normal_cdf((x.ln() - mu) / s)
            }
        }
        Distribution::Uniform { min, max } => ((x - min) / (max - min)).clamp(0.0, 1.0),
        Distribution::Beta { alpha, beta, min, max } => {
            let t = (x - min) / (max - min);
            if t <= 0.0 {
                0.0
            } else if t >= 1.0 {
                1.0
            } else {
                beta_reg(*alpha, *beta, t)
            }
        }
        Distribution::Discrete { values } => values.iter().filter(|v| **v <= x).count() as f64 / values.len() as f64,
    }
}
