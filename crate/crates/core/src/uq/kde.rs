use super::{boxplot_stats, quantile, BoxplotStats, UqError};

/// Estimated response density and summary statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseDistribution {
    pub samples: Vec<f64>,
    pub kde_bandwidth: f64,
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
    pub stats: BoxplotStats,
}

impl ResponseDistribution {
    /// Trapezoid integral of the density over the grid.
    pub fn integral(&self) -> f64 {
        self.grid
            .windows(2)
            .zip(self.density.windows(2))
            .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
            .sum()
    }
}

/// 0.9·min(σ, IQR/1.34)·n^(−1/5), falling back to σ when the IQR vanishes.
pub fn silverman_bandwidth(samples: &[f64]) -> f64 {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let sd = (samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let iqr = quantile(&s, 0.75) - quantile(&s, 0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    0.9 * spread * n.powf(-0.2)
}

/// Gaussian kernel density estimate on a uniform grid over
/// [min − 4h, max + 4h] with at least 20 points per bandwidth.
///
/// Without an explicit bandwidth Silverman's rule is used, which needs two
/// samples; a sample with no spread gets h = 1e-3·max(|x|, 1).
pub fn kde_estimate(samples: &[f64], bandwidth: Option<f64>) -> Result<ResponseDistribution, UqError> {
    let needed = if bandwidth.is_some() { 1 } else { 2 };
    if samples.len() < needed {
        return Err(UqError::TooFewSamples {
            needed,
            got: samples.len(),
        });
    }
    let h = match bandwidth {
        Some(h) if h > 0.0 && h.is_finite() => h,
        Some(h) => {
            return Err(UqError::InvalidSpec {
                name: "bandwidth".into(),
                reason: format!("must be positive, got {h}"),
            })
        }
        None => {
            let h = silverman_bandwidth(samples);
            if h > 0.0 {
                h
            } else {
                1e-3 * samples[0].abs().max(1.0)
            }
        }
    };
    let lo = samples.iter().cloned().fold(f64::INFINITY, f64::min) - 4.0 * h;
    let hi = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 4.0 * h;
    let points = (((hi - lo) / h * 20.0).ceil() as usize + 1).clamp(512, 200_000);
    let step = (hi - lo) / (points - 1) as f64;
    let norm = 1.0 / (samples.len() as f64 * h * (2.0 * std::f64::consts::PI).sqrt());
    let grid: Vec<f64> = (0..points).map(|i| lo + i as f64 * step).collect();
    let density = grid
        .iter()
        .map(|&x| {
            norm * samples
                .iter()
                .map(|&xi| {
                    let z = (x - xi) / h;
                    if z.abs() > 40.0 {
                        0.0
                    } else {
                        (-0.5 * z * z).exp()
                    }
                })
                .sum::<f64>()
        })
        .collect();
    Ok(ResponseDistribution {
        samples: samples.to_vec(),
        kde_bandwidth: h,
        grid,
        density,
        stats: boxplot_stats(samples),
    })
}
