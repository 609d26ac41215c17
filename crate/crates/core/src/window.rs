//! Smoothing windows on the observation arc: the sharp characteristic
//! cutoff, the rational cutoff h^k, and the plateau cutoff that is exactly
//! one away from its transition regions.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowKind<T> {
    /// Characteristic function of the arc.
    Sharp,
    /// (H(s)/H(b/2))^k with H(s) = s(b-s) / (s(b-s) + epsilon).
    Rational { epsilon: T },
    /// Quadratic ramp of normalized length epsilon at each end, exactly one
    /// in between, raised to the k-th power.
    Plateau { epsilon: T },
}

#[derive(Debug, Clone, Copy)]
pub struct WindowSpec<T> {
    pub kind: WindowKind<T>,
    /// Vanishing order at the arc endpoints (ignored for Sharp).
    pub order_k: u32,
    /// Arc parameter length.
    pub b: T,
}

impl<T: Scalar> WindowSpec<T> {
    pub fn sharp(b: T) -> Self {
        Self {
            kind: WindowKind::Sharp,
            order_k: 0,
            b,
        }
    }

    pub fn rational(epsilon: T, order_k: u32, b: T) -> Result<Self> {
        if epsilon <= T::zero() {
            return Err(Error::validation("window", "rational epsilon must be > 0"));
        }
        if order_k < 1 {
            return Err(Error::validation("window", "order k must be >= 1"));
        }
        Ok(Self {
            kind: WindowKind::Rational { epsilon },
            order_k,
            b,
        })
    }

    pub fn plateau(epsilon: T, order_k: u32, b: T) -> Result<Self> {
        if epsilon <= T::zero() || epsilon >= T::of(0.5) {
            return Err(Error::validation(
                "window",
                "plateau epsilon must lie in (0, 0.5)",
            ));
        }
        if order_k < 1 {
            return Err(Error::validation("window", "order k must be >= 1"));
        }
        Ok(Self {
            kind: WindowKind::Plateau { epsilon },
            order_k,
            b,
        })
    }

    /// chi at arc offset s in [0, b].
    pub fn eval(&self, s: T) -> Result<T> {
        if s < T::zero() || s > self.b {
            return Err(Error::OutOfRange {
                s: s.as_f64(),
                b: self.b.as_f64(),
            });
        }
        Ok(match self.kind {
            WindowKind::Sharp => T::one(),
            WindowKind::Rational { epsilon } => {
                let h = |x: T| -> T {
                    let q = x * (self.b - x);
                    q / (q + epsilon)
                };
                let base = h(s) / h(self.b * T::of(0.5));
                powi(base, self.order_k)
            }
            WindowKind::Plateau { epsilon } => {
                let sigma = s / self.b;
                let ramp = |x: T| -> T { x * (T::of(2.0) * epsilon - x) / (epsilon * epsilon) };
                let base = if sigma <= epsilon {
                    ramp(sigma)
                } else if sigma >= T::one() - epsilon {
                    ramp(T::one() - sigma)
                } else {
                    T::one()
                };
                powi(base, self.order_k)
            }
        })
    }

    /// Window weights at the sinogram's angular sample nodes.
    pub fn sample(&self, s_grid: &[T], s_start: T) -> Result<Vec<T>> {
        s_grid.iter().map(|&s| self.eval(s - s_start)).collect()
    }

    /// Measure the vanishing order at s = 0 by a log-log slope fit over
    /// offsets b * 10^-2 .. b * 10^-5.
    pub fn vanishing_order(&self) -> T {
        let deltas = [1e-2, 1e-3, 1e-4, 1e-5];
        let pts: Vec<(f64, f64)> = deltas
            .iter()
            .map(|&d| {
                let s = self.b * T::of(d);
                let v = self.eval(s).expect("offsets inside [0, b]");
                (s.as_f64().ln(), v.as_f64().ln())
            })
            .collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let den: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        T::of(num / den)
    }
}

fn powi<T: Scalar>(base: T, k: u32) -> T {
    let mut acc = T::one();
    for _ in 0..k {
        acc = acc * base;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rational_center_is_one() {
        let b = PI / 2.0;
        let w = WindowSpec::rational(0.2, 1, b).unwrap();
        assert!((w.eval(b / 2.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rational_vanishes_at_endpoints() {
        for k in 1..=3 {
            for eps in [0.05, 0.2, 1.0] {
                let w = WindowSpec::rational(eps, k, PI / 2.0).unwrap();
                assert_eq!(w.eval(0.0).unwrap(), 0.0);
                assert_eq!(w.eval(PI / 2.0).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn plateau_interior_is_exactly_one() {
        let b = 1.5 * PI;
        let w = WindowSpec::plateau(0.25, 2, b).unwrap();
        assert_eq!(w.eval(0.5 * b).unwrap(), 1.0);
        // exactly one over the whole interior band, not just the middle
        for frac in [0.25, 0.3, 0.5, 0.7, 0.75] {
            assert_eq!(w.eval(frac * b).unwrap(), 1.0);
        }
        // transition meets the plateau with value one at sigma = epsilon
        assert!((w.eval(0.25 * b).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sharp_sample_is_all_ones() {
        let b = PI / 2.0;
        let w = WindowSpec::sharp(b);
        let grid: Vec<f64> = (0..16).map(|i| i as f64 * b / 15.0).collect();
        assert!(w.sample(&grid, 0.0).unwrap().iter().all(|&x| x == 1.0));
    }

    #[test]
    fn rational_sample_endpoints_zero() {
        let b = PI / 2.0;
        let w = WindowSpec::rational(0.2, 2, b).unwrap();
        let grid: Vec<f64> = (0..33).map(|i| 1.0 + i as f64 * b / 32.0).collect();
        let ws = w.sample(&grid, 1.0).unwrap();
        assert_eq!(ws[0], 0.0);
        assert_eq!(ws[32], 0.0);
    }

    #[test]
    fn out_of_range_rejected() {
        let w = WindowSpec::rational(0.2, 1, 1.0).unwrap();
        assert!(w.eval(-0.01).is_err());
        assert!(w.eval(1.01).is_err());
    }

    #[test]
    fn bounded_and_symmetric() {
        let b = 1.5 * PI;
        for spec in [
            WindowSpec::sharp(b),
            WindowSpec::rational(0.2, 2, b).unwrap(),
            WindowSpec::plateau(0.25, 3, b).unwrap(),
        ] {
            for i in 0..=10_000 {
                let s = b * i as f64 / 10_000.0;
                let v = spec.eval(s).unwrap();
                assert!((0.0..=1.0 + 1e-15).contains(&v), "out of bounds at {s}");
                let mirror = spec.eval(b - s).unwrap();
                assert!((v - mirror).abs() < 1e-12, "asymmetric at {s}");
            }
        }
    }

    #[test]
    fn rational_monotone_in_epsilon() {
        let b = PI / 2.0;
        let s = 0.2 * b;
        let mut prev = f64::INFINITY;
        for eps in [0.05, 0.2, 0.5, 1.0] {
            let v = WindowSpec::rational(eps, 1, b).unwrap().eval(s).unwrap();
            assert!(v < prev, "larger epsilon must lower the off-center window");
            prev = v;
        }
    }

    #[test]
    fn vanishing_orders() {
        let b = PI / 2.0;
        for k in 1..=3u32 {
            let w = WindowSpec::rational(0.5, k, b).unwrap();
            let measured = w.vanishing_order();
            assert!(
                (measured - k as f64).abs() < 0.05,
                "rational k={k}: measured {measured}"
            );
            let w = WindowSpec::plateau(0.25, k, 1.5 * PI).unwrap();
            let measured = w.vanishing_order();
            assert!(
                (measured - k as f64).abs() < 0.05,
                "plateau k={k}: measured {measured}"
            );
        }
    }
}
