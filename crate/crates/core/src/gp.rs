//! Root-series sampling from Gaussian-process priors.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::cholesky::llt::factor::{
    cholesky_in_place, cholesky_in_place_scratch, LltRegularization,
};
use faer::{Mat, Par};

use crate::error::{Error, Result};
use crate::kernel::{gram_matrix, unit_grid, KernelExpr, SymMatrix};
use crate::mean::{eval_mean, MeanSpec};
use crate::rng::SampleStream;

/// Jitter multipliers tried in order, relative to the mean diagonal.
pub const JITTER_LADDER: [f64; 5] = [0.0, 1e-10, 1e-8, 1e-6, 1e-4];

/// Lower-triangular factor `F` with `F Fᵀ = G + jitter·I`.
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    n: usize,
    /// Column-major, upper triangle zeroed.
    cols: Vec<f64>,
    jitter: f64,
}

impl CholeskyFactor {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Absolute diagonal jitter that was added before factorising.
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cols[j * self.n + i]
    }

    /// Computes `F z`.
    pub fn mul_vec(&self, z: &[f64]) -> Vec<f64> {
        assert_eq!(z.len(), self.n);
        let n = self.n;
        let mut out = vec![0.0; n];
        for (j, &zj) in z.iter().enumerate() {
            let col = &self.cols[j * n + j..(j + 1) * n];
            for (o, &l) in out[j..].iter_mut().zip(col) {
                *o += l * zj;
            }
        }
        out
    }

    /// Dense `F Fᵀ`, row-major.
    pub fn reconstruct(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v: f64 = (0..=j).map(|k| self.get(i, k) * self.get(j, k)).sum();
                out[i * n + j] = v;
                out[j * n + i] = v;
            }
        }
        out
    }
}

fn try_factor(g: &SymMatrix, jitter: f64, mem: &mut MemBuffer) -> Option<Vec<f64>> {
    let n = g.n();
    // symmetric, so row-major data read as column-major is the same matrix
    let mut a = Mat::<f64>::from_fn(n, n, |i, j| {
        let v = g.get(i, j);
        if i == j {
            v + jitter
        } else {
            v
        }
    });
    cholesky_in_place(
        a.as_mut(),
        LltRegularization::default(),
        Par::Seq,
        MemStack::new(mem),
        Default::default(),
    )
    .ok()?;
    let mut cols = vec![0.0; n * n];
    for j in 0..n {
        for i in j..n {
            let v = a[(i, j)];
            if !v.is_finite() {
                return None;
            }
            cols[j * n + i] = v;
        }
    }
    Some(cols)
}

/// Factorises `G + εI`, walking `ε` up [`JITTER_LADDER`] (scaled by the mean
/// diagonal) until the factorisation succeeds.
pub fn cholesky_with_jitter(g: &SymMatrix) -> Result<CholeskyFactor> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidLength("empty matrix".into()));
    }
    if g.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(
            "matrix has non-finite entries".into(),
        ));
    }
    let scale = g.trace() / n as f64;
    let mut mem = MemBuffer::new(cholesky_in_place_scratch::<f64>(
        n,
        Par::Seq,
        Default::default(),
    ));
    let mut max_jitter = 0.0;
    for rel in JITTER_LADDER {
        let jitter = rel * scale;
        if rel > 0.0 && !(jitter > 0.0) {
            break;
        }
        max_jitter = jitter;
        if let Some(cols) = try_factor(g, jitter, &mut mem) {
            return Ok(CholeskyFactor { n, cols, jitter });
        }
    }
    Err(Error::NotPositiveDefinite { max_jitter })
}

/// A mean function plus a composed kernel on an evenly spaced grid of
/// `grid_length` points over `[0, 1]`.
#[derive(Debug, Clone)]
pub struct GpPrior {
    pub mean: MeanSpec,
    pub kernel: KernelExpr,
    pub grid_length: usize,
}

impl GpPrior {
    pub fn new(mean: MeanSpec, kernel: KernelExpr, grid_length: usize) -> Result<Self> {
        if grid_length < 2 {
            return Err(Error::InvalidLength(format!(
                "GP grid needs at least 2 points, got {grid_length}"
            )));
        }
        Ok(GpPrior {
            mean,
            kernel,
            grid_length,
        })
    }

    pub fn grid(&self) -> Vec<f64> {
        unit_grid(self.grid_length)
    }
}

/// Draws `μ(grid) + F z` with `z` a vector of `grid_length` standard normals
/// taken from `s` in index order.
pub fn sample_gp(s: &mut SampleStream, p: &GpPrior) -> Result<Vec<f64>> {
    let grid = p.grid();
    let gram = gram_matrix(&p.kernel, &grid)?;
    let factor = cholesky_with_jitter(&gram)?;
    let z: Vec<f64> = (0..grid.len()).map(|_| s.standard_normal()).collect();
    let mut out = factor.mul_vec(&z);
    let mu = eval_mean(&p.mean, &grid)?;
    for (o, m) in out.iter_mut().zip(&mu) {
        *o += m;
    }
    if let Some(i) = out.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteOutput(format!("GP sample at index {i}")));
    }
    Ok(out)
}
