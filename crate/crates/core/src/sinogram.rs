//! Sampled circular-mean data g(s_i, r_j) on an observation arc.

use crate::error::{Error, Result};
use crate::geometry::AcquisitionCurve;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct Sinogram<T> {
    /// Row-major n_a x n_r values; row i is the radial profile at s_i.
    pub values: Vec<T>,
    pub s_grid: Vec<T>,
    pub r_grid: Vec<T>,
    pub curve: AcquisitionCurve<T>,
}

impl<T: Scalar> Sinogram<T> {
    pub fn new(
        values: Vec<T>,
        s_grid: Vec<T>,
        r_grid: Vec<T>,
        curve: AcquisitionCurve<T>,
    ) -> Result<Self> {
        if values.len() != s_grid.len() * r_grid.len() {
            return Err(Error::validation(
                "sinogram",
                "value count must equal n_a * n_r",
            ));
        }
        check_uniform(&s_grid, "s grid")?;
        check_uniform(&r_grid, "r grid")?;
        Ok(Self {
            values,
            s_grid,
            r_grid,
            curve,
        })
    }

    pub fn n_a(&self) -> usize {
        self.s_grid.len()
    }

    pub fn n_r(&self) -> usize {
        self.r_grid.len()
    }

    pub fn r_max(&self) -> T {
        *self.r_grid.last().unwrap()
    }

    pub fn row(&self, i: usize) -> &[T] {
        let n_r = self.n_r();
        &self.values[i * n_r..(i + 1) * n_r]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        let n_r = self.n_r();
        &mut self.values[i * n_r..(i + 1) * n_r]
    }
}

/// Reject grids that are not uniform and strictly increasing.
pub fn check_uniform<T: Scalar>(grid: &[T], what: &'static str) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::validation("grid", format!("{what} needs >= 2 nodes")));
    }
    let step = grid[1] - grid[0];
    if step <= T::zero() {
        return Err(Error::validation(
            "grid",
            format!("{what} must be increasing"),
        ));
    }
    let tol = T::of(1e-9);
    let mut worst = T::zero();
    for i in 1..grid.len() {
        let expected = grid[0] + step * T::of(i as f64);
        let dev = (grid[i] - expected).abs();
        if dev > worst {
            worst = dev;
        }
    }
    if worst > tol {
        return Err(Error::NonUniformGrid {
            deviation: worst.as_f64(),
            tolerance: tol.as_f64(),
        });
    }
    Ok(())
}

/// Uniform grid over [lo, hi] with both endpoints included.
pub fn uniform_grid<T: Scalar>(lo: T, hi: T, n: usize) -> Vec<T> {
    let step = (hi - lo) / T::of((n - 1) as f64);
    (0..n).map(|i| lo + step * T::of(i as f64)).collect()
}
