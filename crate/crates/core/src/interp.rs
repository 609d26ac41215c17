//! Monotone cubic (PCHIP) interpolation used for the r <-> r^2 regridding.
//!
//! Fritsch-Carlson slopes with three-point end conditions, matching the
//! conventional shape-preserving interpolant. The r -> t map concentrates
//! nodes near r = 0, where an overshooting interpolant would paint radial
//! bands into the filtered sinogram.

use crate::scalar::Scalar;

pub struct Pchip<T> {
    xs: Vec<T>,
    ys: Vec<T>,
    slopes: Vec<T>,
}

impl<T: Scalar> Pchip<T> {
    /// Build the interpolant. `xs` must be strictly increasing, len >= 2.
    pub fn new(xs: &[T], ys: &[T]) -> Self {
        assert_eq!(xs.len(), ys.len());
        assert!(xs.len() >= 2);
        let n = xs.len();
        let mut h = Vec::with_capacity(n - 1);
        let mut d = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            let hi = xs[i + 1] - xs[i];
            debug_assert!(hi > T::zero());
            h.push(hi);
            d.push((ys[i + 1] - ys[i]) / hi);
        }

        let mut m = vec![T::zero(); n];
        if n == 2 {
            m[0] = d[0];
            m[1] = d[0];
        } else {
            for i in 1..n - 1 {
                if d[i - 1] * d[i] <= T::zero() {
                    m[i] = T::zero();
                } else {
                    let two = T::of(2.0);
                    let w1 = two * h[i] + h[i - 1];
                    let w2 = h[i] + two * h[i - 1];
                    m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
                }
            }
            m[0] = edge_slope(h[0], h[1], d[0], d[1]);
            m[n - 1] = edge_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
        }

        Self {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            slopes: m,
        }
    }

    /// Evaluate at `x`, clamping to the end values outside the node range.
    pub fn eval(&self, x: T) -> T {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0] + self.slopes[0] * (x - self.xs[0]);
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        // rightmost interval with xs[i] <= x
        let mut lo = 0usize;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.xs[mid] <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let h = self.xs[lo + 1] - self.xs[lo];
        let t = (x - self.xs[lo]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let two = T::of(2.0);
        let three = T::of(3.0);
        let h00 = two * t3 - three * t2 + T::one();
        let h10 = t3 - two * t2 + t;
        let h01 = -two * t3 + three * t2;
        let h11 = t3 - t2;
        h00 * self.ys[lo]
            + h10 * h * self.slopes[lo]
            + h01 * self.ys[lo + 1]
            + h11 * h * self.slopes[lo + 1]
    }
}

/// Three-point end slope with the usual monotonicity clamps.
fn edge_slope<T: Scalar>(h0: T, h1: T, d0: T, d1: T) -> T {
    let m = ((T::of(2.0) * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= T::zero() {
        T::zero()
    } else if d0 * d1 < T::zero() && m.abs() > T::of(3.0) * d0.abs() {
        T::of(3.0) * d0
    } else {
        m
    }
}
