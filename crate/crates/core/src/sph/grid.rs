use nalgebra::Vector2;

use super::Particle;

/// Axis-aligned simulation box; fluid leaving it is excluded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub min: Vector2<f64>,
    pub max: Vector2<f64>,
}

impl Domain {
    pub fn new(min: Vector2<f64>, max: Vector2<f64>) -> Self {
        Self { min, max }
    }

    /// Bounding box of the particles grown by `margin` on every side.
    pub fn around(particles: &[Particle], margin: f64) -> Self {
        let mut min = Vector2::repeat(f64::INFINITY);
        let mut max = Vector2::repeat(f64::NEG_INFINITY);
        for p in particles {
            min = min.inf(&p.position);
            max = max.sup(&p.position);
        }
        if particles.is_empty() {
            min = Vector2::zeros();
            max = Vector2::zeros();
        }
        Self {
            min: min - Vector2::repeat(margin),
            max: max + Vector2::repeat(margin),
        }
    }

    #[inline]
    pub fn contains(&self, p: &Vector2<f64>) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }
}

/// Uniform cell list with cell size equal to the kernel support radius, so
/// every neighbour of a particle lies in the 3×3 block around its cell.
///
/// Built by counting sort: `cell_start[c]..cell_start[c+1]` indexes `sorted`.
#[derive(Debug, Clone, Default)]
pub struct CellGrid {
    cell_size: f64,
    origin: Vector2<f64>,
    nx: usize,
    nz: usize,
    cell_start: Vec<u32>,
    sorted: Vec<u32>,
    cell_of: Vec<u32>,
}

const NO_CELL: u32 = u32::MAX;

impl CellGrid {
    pub fn new(domain: &Domain, cell_size: f64) -> Self {
        let extent = domain.max - domain.min;
        let nx = ((extent.x / cell_size).floor() as usize + 1).max(1);
        let nz = ((extent.y / cell_size).floor() as usize + 1).max(1);
        Self {
            cell_size,
            origin: domain.min,
            nx,
            nz,
            cell_start: vec![0; nx * nz + 1],
            sorted: Vec::new(),
            cell_of: Vec::new(),
        }
    }

    #[inline]
    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    #[inline]
    fn coords(&self, p: &Vector2<f64>) -> (usize, usize) {
        let i = ((p.x - self.origin.x) / self.cell_size).floor().max(0.0) as usize;
        let j = ((p.y - self.origin.y) / self.cell_size).floor().max(0.0) as usize;
        (i.min(self.nx - 1), j.min(self.nz - 1))
    }

    /// Rebuild from current positions; excluded particles are left out.
    pub fn rebuild(&mut self, particles: &[Particle]) {
        let ncell = self.nx * self.nz;
        self.cell_of.clear();
        self.cell_of.reserve(particles.len());
        self.cell_start.iter_mut().for_each(|c| *c = 0);
        for p in particles {
            if p.excluded {
                self.cell_of.push(NO_CELL);
                continue;
            }
            let (i, j) = self.coords(&p.position);
            let c = j * self.nx + i;
            self.cell_of.push(c as u32);
            self.cell_start[c + 1] += 1;
        }
        for c in 0..ncell {
            self.cell_start[c + 1] += self.cell_start[c];
        }
        let active = self.cell_start[ncell] as usize;
        self.sorted.clear();
        self.sorted.resize(active, 0);
        let mut fill: Vec<u32> = self.cell_start[..ncell].to_vec();
        for (idx, &c) in self.cell_of.iter().enumerate() {
            if c == NO_CELL {
                continue;
            }
            let slot = &mut fill[c as usize];
            self.sorted[*slot as usize] = idx as u32;
            *slot += 1;
        }
    }

    /// Visit every particle index in the 3×3 block around `p`, in a fixed order.
    #[inline]
    pub fn for_each_candidate(&self, p: &Vector2<f64>, mut f: impl FnMut(usize)) {
        let (ci, cj) = self.coords(p);
        let j0 = cj.saturating_sub(1);
        let j1 = (cj + 1).min(self.nz - 1);
        let i0 = ci.saturating_sub(1);
        let i1 = (ci + 1).min(self.nx - 1);
        for j in j0..=j1 {
            // cells i0..=i1 of row j are contiguous in `sorted`
            let start = self.cell_start[j * self.nx + i0] as usize;
            let end = self.cell_start[j * self.nx + i1 + 1] as usize;
            for &b in &self.sorted[start..end] {
                f(b as usize);
            }
        }
    }

    /// Indices of particles within `radius` of `p` (radius ≤ cell size).
    pub fn neighbours_within(&self, particles: &[Particle], p: &Vector2<f64>, radius: f64) -> Vec<usize> {
        let r2 = radius * radius;
        let mut out = Vec::new();
        self.for_each_candidate(p, |b| {
            if (particles[b].position - p).norm_squared() < r2 {
                out.push(b);
            }
        });
        out
    }
}
