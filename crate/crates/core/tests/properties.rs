//! Randomized property checks for the window and phantom primitives.

use std::f64::consts::PI;

use proptest::prelude::*;

use arcmeans::{circular_mean, DiscPhantom, Phantom64, Vec2_64, WindowSpec64};

proptest! {
    /// Every window stays in [0, 1] and is symmetric about the arc midpoint.
    #[test]
    fn window_bounded_and_symmetric(
        s_frac in 0.0..=1.0f64,
        eps in 0.01..1.0f64,
        k in 1u32..4,
        b in 0.5..(2.0 * PI),
    ) {
        for w in [
            WindowSpec64::sharp(b),
            WindowSpec64::rational(eps, k, b).unwrap(),
            WindowSpec64::plateau(0.49 * eps, k, b).unwrap(),
        ] {
            let s = s_frac * b;
            let v = w.eval(s).unwrap();
            prop_assert!((0.0..=1.0).contains(&v));
            let mirrored = w.eval(b - s).unwrap();
            prop_assert!((v - mirrored).abs() < 1e-12);
        }
    }

    /// Circular means of a disc depend only on the center distance, so they
    /// are invariant under rotating the observation point about the center.
    #[test]
    fn circular_mean_is_rotation_invariant(
        dist in 0.0..2.0f64,
        angle in 0.0..(2.0 * PI),
        r in 0.1..1.5f64,
        rho in 0.05..0.4f64,
    ) {
        let center = Vec2_64::new(0.2, -0.1);
        let phantom = Phantom64::new(vec![DiscPhantom {
            center,
            radius: rho,
            amplitude: 1.0,
        }])
        .unwrap();
        let base = center + Vec2_64::new(dist, 0.0);
        let rotated = center + Vec2_64::new(dist * angle.cos(), dist * angle.sin());
        let a = circular_mean(&phantom, base, r);
        let b = circular_mean(&phantom, rotated, r);
        prop_assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }
}
