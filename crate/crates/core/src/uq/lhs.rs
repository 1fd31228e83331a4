use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{cdf, inverse_cdf, RandomVariableSpec, UqError};

/// Keeps jittered probabilities strictly inside their stratum.
const EDGE: f64 = 1e-6;

/// q × n Latin Hypercube sample, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    pub values: Vec<f64>,
    pub specs: Vec<RandomVariableSpec>,
    pub seed: u64,
    pub q: usize,
}

impl SampleMatrix {
    pub fn n(&self) -> usize {
        self.specs.len()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.n() + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let n = self.n();
        &self.values[row * n..(row + 1) * n]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.q).map(|i| self.get(i, col)).collect()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.specs.iter().position(|s| s.name == name)
    }

    /// Width of one equi-probable stratum in value space, for bounded columns.
    pub fn interval_width(&self, col: usize) -> Option<f64> {
        self.specs[col].bounds().map(|(lo, hi)| (hi - lo) / self.q as f64)
    }

    /// Stratum index of each entry of a column, from the spec's CDF.
    pub fn strata(&self, col: usize) -> Vec<usize> {
        let q = self.q as f64;
        self.column(col)
            .iter()
            .map(|&x| ((cdf(&self.specs[col], x) * q).floor() as usize).min(self.q - 1))
            .collect()
    }
}

/// In-place Fisher–Yates shuffle.
fn fisher_yates<T>(xs: &mut [T], rng: &mut impl Rng) {
    for i in (1..xs.len()).rev() {
        let j = rng.random_range(0..=i);
        xs.swap(i, j);
    }
}

/// Latin Hypercube sample of `q` rows over `specs`.
///
/// Each column takes an independent random permutation of the strata
/// 1..=q; row i draws a uniform point inside stratum b = perm[i], i.e. in
/// [(b−1)/q, b/q), and maps it through the inverse CDF. A truncation floor
/// narrows the stratum to probabilities above F(floor).
pub fn lhs_sample(specs: &[RandomVariableSpec], q: usize, seed: u64) -> Result<SampleMatrix, UqError> {
    if q == 0 || specs.is_empty() {
        return Err(UqError::TooFewSamples {
            needed: 1,
            got: q.min(specs.len()),
        });
    }
    for s in specs {
        s.validate()?;
    }
    let n = specs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![0.0; q * n];
    let qf = q as f64;
    for (j, spec) in specs.iter().enumerate() {
        let mut perm: Vec<usize> = (1..=q).collect();
        fisher_yates(&mut perm, &mut rng);
        let floor_u = spec.truncation.map_or(0.0, |f| cdf(spec, f));
        for (i, &b) in perm.iter().enumerate() {
            let lo = (b - 1) as f64 / qf;
            let hi = b as f64 / qf;
            let lo_eff = lo.max(floor_u);
            if lo_eff >= hi {
                return Err(UqError::InvalidSpec {
                    name: spec.name.clone(),
                    reason: format!("truncation removes stratum {b} of {q}"),
                });
            }
            let r: f64 = rng.random();
            let u = lo_eff + (hi - lo_eff) * (EDGE + (1.0 - 2.0 * EDGE) * r);
            values[i * n + j] = inverse_cdf(spec, u)?;
        }
    }
    Ok(SampleMatrix {
        values,
        specs: specs.to_vec(),
        seed,
        q,
    })
}
