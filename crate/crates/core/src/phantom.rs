//! Disc-sum phantoms with exact circular means.
//!
//! Forward data is generated analytically: the arc length of the
//! intersection of a circle with a disc has a closed form, so no numerical
//! forward transform is needed and the sinogram is exact up to roundoff.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{AcquisitionCurve, Arc};
use crate::scalar::Scalar;
use crate::sinogram::{uniform_grid, Sinogram};
use crate::vec2::Vec2;

/// A single weighted disc.
#[derive(Debug, Clone, Copy)]
pub struct DiscPhantom<T> {
    pub center: Vec2<T>,
    pub radius: T,
    pub amplitude: T,
}

/// A sum of discs, supported strictly inside the acquisition curve.
#[derive(Debug, Clone)]
pub struct Phantom<T> {
    discs: Vec<DiscPhantom<T>>,
}

impl<T: Scalar> Phantom<T> {
    pub fn new(discs: Vec<DiscPhantom<T>>) -> Result<Self> {
        if discs.is_empty() {
            return Err(Error::validation("phantom", "needs at least one disc"));
        }
        for d in &discs {
            if d.radius <= T::zero() {
                return Err(Error::validation("phantom", "disc radius must be positive"));
            }
        }
        Ok(Self { discs })
    }

    /// Single disc of radius 0.3 at the origin, the configuration used by
    /// all experiment presets.
    pub fn centered_disc() -> Self {
        Self {
            discs: vec![DiscPhantom {
                center: Vec2::new(T::zero(), T::zero()),
                radius: T::of(0.3),
                amplitude: T::one(),
            }],
        }
    }

    pub fn discs(&self) -> &[DiscPhantom<T>] {
        &self.discs
    }

    /// Discs must sit strictly inside the curve; a disc touching the
    /// boundary is rejected rather than silently clipped.
    pub fn validate_inside(&self, curve: &AcquisitionCurve<T>) -> Result<()> {
        let n = 256;
        for d in &self.discs {
            for i in 0..n {
                let a = T::of(2.0) * T::PI() * T::of(i as f64) / T::of(n as f64);
                let p = d.center + Vec2::new(a.cos(), a.sin()) * d.radius;
                if !curve.contains(p) {
                    return Err(Error::validation(
                        "phantom",
                        "disc support must be strictly inside the acquisition curve",
                    ));
                }
            }
        }
        Ok(())
    }

    /// Value of f at a point (indicator sum).
    pub fn value_at(&self, p: Vec2<T>) -> T {
        let mut v = T::zero();
        for d in &self.discs {
            if (p - d.center).norm() < d.radius {
                v = v + d.amplitude;
            }
        }
        v
    }
}

/// N x N scalar field on [-extent, extent]^2, pixel centers at
/// x = -extent + (j + 1/2) * (2 extent / n).
#[derive(Debug, Clone)]
pub struct RasterImage<T> {
    pub n: usize,
    pub extent: T,
    /// Row-major, rows indexed by y.
    pub values: Vec<T>,
}

impl<T: Scalar> RasterImage<T> {
    pub fn zeros(n: usize, extent: T) -> Self {
        Self {
            n,
            extent,
            values: vec![T::zero(); n * n],
        }
    }

    pub fn pixel_size(&self) -> T {
        T::of(2.0) * self.extent / T::of(self.n as f64)
    }

    pub fn coord(&self, idx: usize) -> T {
        -self.extent + (T::of(idx as f64) + T::of(0.5)) * self.pixel_size()
    }

    #[inline]
    pub fn get(&self, ix: usize, iy: usize) -> T {
        self.values[iy * self.n + ix]
    }

    /// Bilinear sample at a physical point; `None` outside the grid.
    pub fn sample(&self, x: T, y: T) -> Option<T> {
        let half = T::of(0.5);
        let fx = (x + self.extent) / self.pixel_size() - half;
        let fy = (y + self.extent) / self.pixel_size() - half;
        if fx < T::zero() || fy < T::zero() {
            return None;
        }
        let ix = fx.floor().as_f64() as usize;
        let iy = fy.floor().as_f64() as usize;
        if ix + 1 >= self.n || iy + 1 >= self.n {
            return None;
        }
        let ax = fx - T::of(ix as f64);
        let ay = fy - T::of(iy as f64);
        let one = T::one();
        Some(
            self.get(ix, iy) * (one - ax) * (one - ay)
                + self.get(ix + 1, iy) * ax * (one - ay)
                + self.get(ix, iy + 1) * (one - ax) * ay
                + self.get(ix + 1, iy + 1) * ax * ay,
        )
    }
}

/// Indicator sampling at pixel centers; no anti-aliasing.
pub fn rasterize<T: Scalar>(phantom: &Phantom<T>, n: usize, extent: T) -> RasterImage<T> {
    let mut img = RasterImage::zeros(n, extent);
    for iy in 0..n {
        let y = img.coord(iy);
        for ix in 0..n {
            let x = img.coord(ix);
            img.values[iy * n + ix] = phantom.value_at(Vec2::new(x, y));
        }
    }
    img
}

/// Arc length of the circle of radius r about z inside the phantom
/// (the unnormalized circular mean, i.e. the spherical Radon transform
/// with surface measure).
pub fn circular_mean<T: Scalar>(phantom: &Phantom<T>, z: Vec2<T>, r: T) -> T {
    let mut total = T::zero();
    if r <= T::zero() {
        return total;
    }
    let two = T::of(2.0);
    for d in phantom.discs() {
        let dist = (z - d.center).norm();
        if r <= d.radius - dist {
            // circle entirely inside the disc
            total = total + d.amplitude * two * T::PI() * r;
        } else if r >= dist + d.radius || r <= dist - d.radius {
            // disjoint
        } else {
            let arg = (dist * dist + r * r - d.radius * d.radius) / (two * dist * r);
            let arg = arg.max(-T::one()).min(T::one());
            total = total + d.amplitude * two * r * arg.acos();
        }
    }
    total
}

/// Exact sinogram of the phantom over an arc.
pub fn sample_sinogram<T: Scalar>(
    phantom: &Phantom<T>,
    arc: &Arc<T>,
    n_a: usize,
    n_r: usize,
    r_max: T,
) -> Result<Sinogram<T>> {
    if n_a < 2 || n_r < 2 {
        return Err(Error::validation("sinogram", "need n_a >= 2 and n_r >= 2"));
    }
    if r_max <= T::zero() {
        return Err(Error::validation("sinogram", "r_max must be positive"));
    }
    let s_grid = arc.sample_params(n_a);
    let r_grid = uniform_grid(T::zero(), r_max, n_r);
    let mut values = vec![T::zero(); n_a * n_r];
    values
        .par_chunks_mut(n_r)
        .zip(s_grid.par_iter())
        .for_each(|(row, &s)| {
            let z = arc.curve.point(s);
            for (j, out) in row.iter_mut().enumerate() {
                *out = circular_mean(phantom, z, r_grid[j]);
            }
        });
    Sinogram::new(values, s_grid, r_grid, arc.curve.clone())
}
