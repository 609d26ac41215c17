//! Quantitative checks on reconstructed images: predicted artifact circles,
//! principal-symbol values, edge-jump estimates, and artifact amplitudes.

use crate::error::{Error, Result};
use crate::geometry::{classify_covector, Arc, Covector, Visibility};
use crate::phantom::{Phantom, RasterImage};
use crate::scalar::Scalar;
use crate::vec2::Vec2;
use crate::window::WindowSpec;

/// A circle along which limited-view artifacts are expected: centered at an
/// arc endpoint and tangent to one phantom disc boundary.
#[derive(Debug, Clone, Copy)]
pub struct ArtifactCircle<T> {
    pub center: Vec2<T>,
    pub radius: T,
    /// Index of the disc the circle is tangent to.
    pub source_disc: usize,
}

/// A short segment crossing a phantom disc boundary along its normal,
/// used to estimate the reconstructed jump.
#[derive(Debug, Clone, Copy)]
pub struct EdgeProbe<T> {
    /// Point on the disc boundary.
    pub location: Vec2<T>,
    /// Unit outward radial direction.
    pub normal: Vec2<T>,
    /// Probe length on each side of the boundary.
    pub half_width: T,
}

impl<T: Scalar> EdgeProbe<T> {
    /// Probe crossing the boundary of a centered disc of radius `rho` at
    /// polar angle `angle`.
    pub fn radial(rho: T, angle: T, half_width: T) -> Self {
        let dir = Vec2::new(angle.cos(), angle.sin());
        Self {
            location: dir * rho,
            normal: dir,
            half_width,
        }
    }
}

/// One tangency circle per (arc endpoint, disc, inner/outer) combination.
/// A full arc has no endpoints and yields no circles; radii that would be
/// non-positive (endpoint inside the disc) are dropped.
pub fn predicted_artifact_circles<T: Scalar>(
    phantom: &Phantom<T>,
    arc: &Arc<T>,
) -> Vec<ArtifactCircle<T>> {
    let mut out = Vec::new();
    if arc.is_full() {
        return out;
    }
    for endpoint in [arc.start_point(), arc.end_point()] {
        for (idx, d) in phantom.discs().iter().enumerate() {
            let dist = (endpoint - d.center).norm();
            for radius in [dist - d.radius, dist + d.radius] {
                if radius > T::zero() {
                    out.push(ArtifactCircle {
                        center: endpoint,
                        radius,
                        source_disc: idx,
                    });
                }
            }
        }
    }
    out
}

/// Principal-symbol value sigma_0(x, xi) = (chi(z+) + chi(z-)) / 2, with the
/// window extended by zero off the arc. Boundary covectors are rejected.
pub fn sigma0<T: Scalar>(arc: &Arc<T>, window: &WindowSpec<T>, cov: &Covector<T>) -> Result<T> {
    if classify_covector(arc, cov)? == Visibility::Boundary {
        return Err(Error::validation(
            "sigma0",
            "covector hits an arc endpoint; the symbol is not defined there",
        ));
    }
    let (plus, minus) = arc.curve.ray_intersections(cov.x, cov.xi)?;
    let len = arc.length_param();
    let chi = |s: T| -> Result<T> {
        let off = arc.offset(s);
        if off <= len {
            window.eval(off)
        } else {
            Ok(T::zero())
        }
    };
    Ok((chi(plus.s)? + chi(minus.s)?) * T::of(0.5))
}

const PROBE_SAMPLES_PER_SIDE: usize = 32;

/// Estimated jump across the probe: mean over the inner third of the inside
/// samples minus mean over the inner third of the outside samples. The
/// inner thirds sit midway between the edge and the probe tips, away from
/// both the smoothed transition and unrelated structure.
pub fn measure_jump<T: Scalar>(image: &RasterImage<T>, probe: &EdgeProbe<T>) -> Result<T> {
    let m = PROBE_SAMPLES_PER_SIDE;
    let side = |sign: T| -> Result<T> {
        let mut vals = Vec::with_capacity(m);
        for i in 0..m {
            let t = probe.half_width * T::of((i as f64 + 0.5) / m as f64);
            let p = probe.location + probe.normal * (sign * t);
            let v = image.sample(p.x, p.y).ok_or(Error::ProbeOutsideGrid)?;
            vals.push(v);
        }
        let lo = m / 3;
        let hi = 2 * m / 3;
        let inner = &vals[lo..hi];
        Ok(inner.iter().copied().sum::<T>() / T::of(inner.len() as f64))
    };
    let inside = side(-T::one())?;
    let outside = side(T::one())?;
    Ok(inside - outside)
}

const CIRCLE_SAMPLES: usize = 2048;

/// 95th percentile of |image| along the circle, after discarding samples
/// outside the grid or within `exclusion` of any phantom disc boundary.
pub fn artifact_amplitude<T: Scalar>(
    image: &RasterImage<T>,
    circle: &ArtifactCircle<T>,
    phantom: &Phantom<T>,
    exclusion: T,
) -> Result<T> {
    let mut vals: Vec<f64> = Vec::new();
    for i in 0..CIRCLE_SAMPLES {
        let a = T::TAU() * T::of(i as f64 / CIRCLE_SAMPLES as f64);
        let p = circle.center + Vec2::new(a.cos(), a.sin()) * circle.radius;
        let near_edge = phantom
            .discs()
            .iter()
            .any(|d| ((p - d.center).norm() - d.radius).abs() <= exclusion);
        if near_edge {
            continue;
        }
        if let Some(v) = image.sample(p.x, p.y) {
            vals.push(v.abs().as_f64());
        }
    }
    if vals.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // linear-interpolated 95th percentile
    let pos = 0.95 * (vals.len() - 1) as f64;
    let j = pos.floor() as usize;
    let frac = pos - j as f64;
    let p95 = if j + 1 < vals.len() {
        vals[j] * (1.0 - frac) + vals[j + 1] * frac
    } else {
        vals[j]
    };
    Ok(T::of(p95))
}

/// Bilinear samples along the horizontal line y = `row`, one per pixel
/// column; columns whose sample falls off the grid report zero.
pub fn line_profile<T: Scalar>(image: &RasterImage<T>, row: T) -> Vec<(T, T)> {
    (0..image.n)
        .map(|j| {
            let x = image.coord(j);
            (x, image.sample(x, row).unwrap_or(T::zero()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::AcquisitionCurve;
    use crate::phantom::rasterize;
    use std::f64::consts::PI;

    fn quarter_arc() -> Arc<f64> {
        Arc::new(AcquisitionCurve::unit_circle(), 0.0, PI / 2.0).unwrap()
    }

    #[test]
    fn tangency_radii_for_centered_disc() {
        let arc = quarter_arc();
        let circles = predicted_artifact_circles(&Phantom::centered_disc(), &arc);
        assert_eq!(circles.len(), 4);
        for c in &circles {
            assert!((c.radius - 0.7).abs() < 1e-12 || (c.radius - 1.3).abs() < 1e-12);
            // tangency: min distance from circle to the disc boundary is 0
            let d = c.center.norm();
            let gap = ((d - c.radius).abs() - 0.3).abs();
            assert!(gap < 1e-12, "not tangent: gap {gap}");
        }
        let at_10 = circles
            .iter()
            .filter(|c| (c.center - Vec2::new(1.0, 0.0)).norm() < 1e-12)
            .count();
        assert_eq!(at_10, 2);
    }

    #[test]
    fn three_quarter_arc_endpoints() {
        let arc = Arc::new(AcquisitionCurve::unit_circle(), 0.0, 1.5 * PI).unwrap();
        let circles = predicted_artifact_circles(&Phantom::centered_disc(), &arc);
        assert!(circles
            .iter()
            .any(|c| (c.center - Vec2::new(0.0, -1.0)).norm() < 1e-12));
        assert!(circles
            .iter()
            .all(|c| (c.radius - 0.7).abs() < 1e-12 || (c.radius - 1.3).abs() < 1e-12));
    }

    #[test]
    fn full_arc_has_no_artifact_circles() {
        let arc = Arc::<f64>::full(AcquisitionCurve::unit_circle());
        assert!(predicted_artifact_circles(&Phantom::centered_disc(), &arc).is_empty());
    }

    #[test]
    fn sigma0_sharp_matches_visibility() {
        let full = Arc::full(AcquisitionCurve::unit_circle());
        let w = WindowSpec::sharp(full.length_param());
        let cov = Covector {
            x: Vec2::new(0.2, 0.1),
            xi: Vec2::new(0.3, -0.8),
        };
        assert_eq!(sigma0(&full, &w, &cov).unwrap(), 1.0);

        let quarter = quarter_arc();
        let w = WindowSpec::sharp(quarter.length_param());
        let a = PI / 4.0;
        let singly = Covector {
            x: Vec2::new(0.3 * a.cos(), 0.3 * a.sin()),
            xi: Vec2::new(a.cos(), a.sin()),
        };
        assert_eq!(sigma0(&quarter, &w, &singly).unwrap(), 0.5);
        let invisible = Covector {
            x: Vec2::new(-0.2, 0.2),
            xi: Vec2::new(-1.0, 1.0),
        };
        assert_eq!(sigma0(&quarter, &w, &invisible).unwrap(), 0.0);

        let three_quarters = Arc::new(AcquisitionCurve::unit_circle(), 0.0, 1.5 * PI).unwrap();
        let w = WindowSpec::sharp(three_quarters.length_param());
        assert_eq!(sigma0(&three_quarters, &w, &singly).unwrap(), 1.0);
    }

    #[test]
    fn sigma0_direction_flip_invariant() {
        let arc = quarter_arc();
        let w = WindowSpec::rational(0.2, 2, arc.length_param()).unwrap();
        for (x, xi) in [
            (Vec2::new(0.2, 0.1), Vec2::new(0.9, 0.5)),
            (Vec2::new(-0.1, 0.25), Vec2::new(0.2, 1.0)),
        ] {
            let a = sigma0(&arc, &w, &Covector { x, xi }).unwrap();
            let b = sigma0(&arc, &w, &Covector { x, xi: -xi }).unwrap();
            assert!((a - b).abs() < 1e-12);
            assert!((0.0..=1.0).contains(&a));
        }
    }

    #[test]
    fn sigma0_boundary_covector_rejected() {
        let arc = quarter_arc();
        let w = WindowSpec::sharp(arc.length_param());
        let boundary = Covector {
            x: Vec2::new(0.3, 0.0),
            xi: Vec2::new(1.0, 0.0),
        };
        assert!(sigma0(&arc, &w, &boundary).is_err());
    }

    #[test]
    fn jump_across_rasterized_phantom_is_one() {
        let img = rasterize(&Phantom::centered_disc(), 512, 1.0);
        let probe = EdgeProbe::radial(0.3, PI / 4.0, 0.08);
        let j = measure_jump(&img, &probe).unwrap();
        assert!((j - 1.0).abs() < 0.05, "jump {j}");
    }

    #[test]
    fn jump_across_constant_image_is_zero() {
        let mut img = RasterImage::zeros(64, 1.0);
        img.values.iter_mut().for_each(|v| *v = 0.7);
        let probe = EdgeProbe::radial(0.3, 1.0, 0.08);
        assert_eq!(measure_jump(&img, &probe).unwrap(), 0.0);
    }

    #[test]
    fn probe_leaving_grid_errors() {
        let img = RasterImage::zeros(64, 1.0);
        let probe = EdgeProbe::radial(0.95, 0.0, 0.2);
        assert!(matches!(
            measure_jump(&img, &probe),
            Err(Error::ProbeOutsideGrid)
        ));
    }

    #[test]
    fn amplitude_on_zero_region_is_zero() {
        let img = RasterImage::<f64>::zeros(256, 1.0);
        let circle = ArtifactCircle {
            center: Vec2::new(1.0, 0.0),
            radius: 0.7,
            source_disc: 0,
        };
        let amp = artifact_amplitude(&img, &circle, &Phantom::centered_disc(), 4.0 * 2.0 / 256.0)
            .unwrap();
        assert_eq!(amp, 0.0);
    }

    #[test]
    fn amplitude_empty_sample_set_errors() {
        let img = RasterImage::zeros(64, 1.0);
        // circle entirely off the grid
        let circle = ArtifactCircle {
            center: Vec2::<f64>::new(10.0, 0.0),
            radius: 0.5,
            source_disc: 0,
        };
        assert!(matches!(
            artifact_amplitude(&img, &circle, &Phantom::centered_disc(), 0.03),
            Err(Error::EmptySampleSet)
        ));
    }

    #[test]
    fn amplitude_sees_a_painted_ring() {
        let mut img = RasterImage::<f64>::zeros(256, 1.0);
        let center = Vec2::new(1.0, 0.0);
        for iy in 0..256 {
            for ix in 0..256 {
                let p = Vec2::new(img.coord(ix), img.coord(iy));
                if ((p - center).norm() - 0.7).abs() < 0.02 {
                    img.values[iy * 256 + ix] = -0.5;
                }
            }
        }
        let circle = ArtifactCircle {
            center,
            radius: 0.7,
            source_disc: 0,
        };
        let amp = artifact_amplitude(&img, &circle, &Phantom::centered_disc(), 4.0 * 2.0 / 256.0)
            .unwrap();
        assert!((amp - 0.5).abs() < 0.05, "amp {amp}");
    }

    #[test]
    fn profile_of_phantom_is_top_hat() {
        let img = rasterize(&Phantom::<f64>::centered_disc(), 512, 1.0);
        let profile = line_profile(&img, 0.0);
        assert_eq!(profile.len(), 512);
        for (x, v) in &profile {
            if x.abs() < 0.29 {
                assert_eq!(*v, 1.0, "inside at x={x}");
            } else if x.abs() > 0.31 && x.abs() < 0.99 {
                assert_eq!(*v, 0.0, "outside at x={x}");
            }
        }
    }

    #[test]
    fn profile_of_zero_image_is_zero() {
        let img = RasterImage::zeros(32, 1.0);
        assert!(line_profile(&img, 0.1).iter().all(|(_, v)| *v == 0.0));
    }
}
