/// Tukey boxplot summary.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxplotStats {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub iqr: f64,
    /// Q1 − 1.5·IQR.
    pub lower_whisker: f64,
    /// Q3 + 1.5·IQR.
    pub upper_whisker: f64,
    /// Most extreme samples inside the whiskers.
    pub lowest_inlier: f64,
    pub highest_inlier: f64,
    /// Samples outside the whiskers, ascending.
    pub outliers: Vec<f64>,
    pub min: f64,
    pub max: f64,
}

/// Linear interpolation between order statistics: position p·(n − 1) in the
/// sorted sample.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    if i + 1 >= sorted.len() {
        sorted[sorted.len() - 1]
    } else {
        sorted[i] + frac * (sorted[i + 1] - sorted[i])
    }
}

/// Quartiles, whiskers and outliers of a non-empty sample.
pub fn boxplot_stats(samples: &[f64]) -> BoxplotStats {
    assert!(!samples.is_empty(), "boxplot of an empty sample");
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let (q1, q2, q3) = (quantile(&s, 0.25), quantile(&s, 0.5), quantile(&s, 0.75));
    let iqr = q3 - q1;
    let lower = q1 - 1.5 * iqr;
    let upper = q3 + 1.5 * iqr;
    let inside = |x: &&f64| **x >= lower && **x <= upper;
    BoxplotStats {
        q1,
        q2,
        q3,
        iqr,
        lower_whisker: lower,
        upper_whisker: upper,
        lowest_inlier: *s.iter().find(inside).unwrap_or(&q1),
        highest_inlier: *s.iter().rev().find(inside).unwrap_or(&q3),
        outliers: s.iter().copied().filter(|x| *x < lower || *x > upper).collect(),
        min: s[0],
        max: s[s.len() - 1],
    }
}
