//! Acquisition curve geometry: closed convex boundary curves, observation
//! arcs, outward frames, and ray-curve intersections.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vec2::Vec2;

/// Supported boundary curve shapes.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveKind<T> {
    /// Unit circle, arc-length parametrized by angle.
    UnitCircle,
    /// Axis-aligned ellipse (a*cos s, b*sin s).
    Ellipse { a_axis: T, b_axis: T },
    /// The cardioid-like polar curve
    /// x = ((2 + cos t) cos t - 1) / 2, y = (2 + cos t) sin t / 2,
    /// a genuine polar curve of radius (2 + cos t)/2 about (-1/2, 0).
    Polar,
    /// Closed convex polyline given as (parameter, point) samples.
    TabulatedConvex(Vec<(T, Vec2<T>)>),
}

/// A closed convex acquisition curve S.
#[derive(Debug, Clone, PartialEq)]
pub struct AcquisitionCurve<T> {
    kind: CurveKind<T>,
    period: T,
}

/// One intersection of a ray with the curve.
#[derive(Debug, Clone, Copy)]
pub struct RayHit<T> {
    pub point: Vec2<T>,
    /// Curve parameter of the intersection, normalized into [0, period).
    pub s: T,
    /// Signed ray parameter: point = x + t * xi.
    pub t: T,
}

/// Local curve frame at a parameter value.
#[derive(Debug, Clone, Copy)]
pub struct Frame<T> {
    pub tangent: Vec2<T>,
    pub outward_normal: Vec2<T>,
    /// |z'(s)|, the arc-length quadrature weight.
    pub speed: T,
}

const CONVEXITY_SAMPLES: usize = 4096;

impl<T: Scalar> AcquisitionCurve<T> {
    pub fn unit_circle() -> Self {
        Self {
            kind: CurveKind::UnitCircle,
            period: T::of(2.0) * T::PI(),
        }
    }

    pub fn ellipse(a_axis: T, b_axis: T) -> Result<Self> {
        if a_axis <= T::zero() || b_axis <= T::zero() {
            return Err(Error::validation("ellipse", "axes must be positive"));
        }
        Ok(Self {
            kind: CurveKind::Ellipse { a_axis, b_axis },
            period: T::of(2.0) * T::PI(),
        })
    }

    pub fn polar() -> Self {
        Self {
            kind: CurveKind::Polar,
            period: T::of(2.0) * T::PI(),
        }
    }

    /// Build from (s, point) samples. The samples must trace a closed convex
    /// loop; the first sample must carry s = 0 and the stated `period` closes
    /// the loop back to the first point.
    pub fn tabulated(samples: Vec<(T, Vec2<T>)>, period: T) -> Result<Self> {
        if samples.len() < 3 {
            return Err(Error::validation("tabulated curve", "need >= 3 samples"));
        }
        for w in samples.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::validation(
                    "tabulated curve",
                    "parameters must be strictly increasing",
                ));
            }
        }
        if samples.last().unwrap().0 >= period {
            return Err(Error::validation(
                "tabulated curve",
                "last parameter must be below the period",
            ));
        }
        let curve = Self {
            kind: CurveKind::TabulatedConvex(samples),
            period,
        };
        curve.check_convex()?;
        Ok(curve)
    }

    pub fn period(&self) -> T {
        self.period
    }

    pub fn kind(&self) -> &CurveKind<T> {
        &self.kind
    }

    /// An interior anchor point, used to orient normals and for the
    /// star-shaped containment test.
    pub fn anchor(&self) -> Vec2<T> {
        match &self.kind {
            CurveKind::UnitCircle | CurveKind::Ellipse { .. } => Vec2::new(T::zero(), T::zero()),
            CurveKind::Polar => Vec2::new(T::of(-0.5), T::zero()),
            CurveKind::TabulatedConvex(samples) => {
                let n = T::of(samples.len() as f64);
                let mut c = Vec2::new(T::zero(), T::zero());
                for (_, p) in samples {
                    c = c + *p;
                }
                Vec2::new(c.x / n, c.y / n)
            }
        }
    }

    /// z(s); the parameter wraps modulo the period.
    pub fn point(&self, s: T) -> Vec2<T> {
        let s = self.wrap(s);
        match &self.kind {
            CurveKind::UnitCircle => Vec2::new(s.cos(), s.sin()),
            CurveKind::Ellipse { a_axis, b_axis } => Vec2::new(*a_axis * s.cos(), *b_axis * s.sin()),
            CurveKind::Polar => {
                let half = T::of(0.5);
                let rho = half * (T::of(2.0) + s.cos());
                self.anchor() + Vec2::new(rho * s.cos(), rho * s.sin())
            }
            CurveKind::TabulatedConvex(samples) => {
                let (i, j, alpha) = self.bracket(samples, s);
                samples[i].1 * (T::one() - alpha) + samples[j].1 * alpha
            }
        }
    }

    /// Tangent, outward normal and speed at s.
    pub fn frame(&self, s: T) -> Result<Frame<T>> {
        let deriv = match &self.kind {
            CurveKind::UnitCircle => Vec2::new(-s.sin(), s.cos()),
            CurveKind::Ellipse { a_axis, b_axis } => {
                Vec2::new(-*a_axis * s.sin(), *b_axis * s.cos())
            }
            CurveKind::Polar => {
                let half = T::of(0.5);
                let rho = half * (T::of(2.0) + s.cos());
                let drho = -half * s.sin();
                Vec2::new(
                    drho * s.cos() - rho * s.sin(),
                    drho * s.sin() + rho * s.cos(),
                )
            }
            CurveKind::TabulatedConvex(_) => {
                // centered differences; h well below the sample spacing is not
                // needed since point() is piecewise linear between samples
                let h = self.period * T::of(1e-5);
                let p1 = self.point(s - h);
                let p2 = self.point(s + h);
                (p2 - p1) * (T::one() / (T::of(2.0) * h))
            }
        };
        let speed = deriv.norm();
        if speed < T::of(1e-10) {
            return Err(Error::DegenerateTangent {
                s: s.as_f64(),
                speed: speed.as_f64(),
            });
        }
        let tangent = deriv * (T::one() / speed);
        let mut outward_normal = tangent.rot_cw();
        // orient away from the interior
        if outward_normal.dot(self.point(s) - self.anchor()) < T::zero() {
            outward_normal = -outward_normal;
        }
        Ok(Frame {
            tangent,
            outward_normal,
            speed,
        })
    }

    /// Strict containment test for an interior point.
    pub fn contains(&self, p: Vec2<T>) -> bool {
        match &self.kind {
            CurveKind::UnitCircle => p.norm() < T::one(),
            CurveKind::Ellipse { a_axis, b_axis } => {
                let u = p.x / *a_axis;
                let v = p.y / *b_axis;
                u * u + v * v < T::one()
            }
            CurveKind::Polar => {
                let rel = p - self.anchor();
                let theta = rel.y.atan2(rel.x);
                let rho = T::of(0.5) * (T::of(2.0) + theta.cos());
                rel.norm() < rho
            }
            CurveKind::TabulatedConvex(samples) => {
                // ray casting against the sample polygon
                let mut inside = false;
                let n = samples.len();
                for i in 0..n {
                    let a = samples[i].1;
                    let b = samples[(i + 1) % n].1;
                    if (a.y > p.y) != (b.y > p.y) {
                        let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                        if p.x < x_cross {
                            inside = !inside;
                        }
                    }
                }
                inside
            }
        }
    }

    /// Intersections z+ and z- of S with the rays {x + t xi, t >= 0} and
    /// {x + t xi, t <= 0}. Convexity makes each intersection unique.
    pub fn ray_intersections(&self, x: Vec2<T>, xi: Vec2<T>) -> Result<(RayHit<T>, RayHit<T>)> {
        if xi.norm() <= T::zero() {
            return Err(Error::validation("covector", "direction must be nonzero"));
        }
        if !self.contains(x) {
            return Err(Error::NotInside {
                x: x.as_f64_x(),
                y: x.as_f64_y(),
            });
        }
        let dir = xi.normalized();
        let plus = self.forward_hit(x, dir)?;
        let minus = self.forward_hit(x, -dir)?;
        Ok((
            plus,
            RayHit {
                point: minus.point,
                s: minus.s,
                t: -minus.t,
            },
        ))
    }

    /// Classify an interior covector against the observation arc.
    pub fn wrap(&self, s: T) -> T {
        let p = self.period;
        let mut w = s % p;
        if w < T::zero() {
            w = w + p;
        }
        w
    }

    fn forward_hit(&self, x: Vec2<T>, dir: Vec2<T>) -> Result<RayHit<T>> {
        match &self.kind {
            CurveKind::UnitCircle => {
                // |x + t d|^2 = 1
                let b = x.dot(dir);
                let c = x.dot(x) - T::one();
                let t = -b + (b * b - c).sqrt();
                let p = x + dir * t;
                Ok(RayHit {
                    point: p,
                    s: self.wrap(p.y.atan2(p.x)),
                    t,
                })
            }
            CurveKind::Ellipse { a_axis, b_axis } => {
                let sx = Vec2::new(x.x / *a_axis, x.y / *b_axis);
                let sd = Vec2::new(dir.x / *a_axis, dir.y / *b_axis);
                let a = sd.dot(sd);
                let b = sx.dot(sd);
                let c = sx.dot(sx) - T::one();
                let t = (-b + (b * b - a * c).sqrt()) / a;
                let p = x + dir * t;
                Ok(RayHit {
                    point: p,
                    s: self.wrap((p.y / *b_axis).atan2(p.x / *a_axis)),
                    t,
                })
            }
            CurveKind::Polar => {
                // bisection on the star-shaped signed distance about the anchor
                let anchor = self.anchor();
                let g = |t: T| {
                    let rel = x + dir * t - anchor;
                    let theta = rel.y.atan2(rel.x);
                    let rho = T::of(0.5) * (T::of(2.0) + theta.cos());
                    rel.norm() - rho
                };
                let mut lo = T::zero();
                let mut hi = (x - anchor).norm() + T::of(3.0);
                debug_assert!(g(lo) < T::zero() && g(hi) > T::zero());
                for _ in 0..100 {
                    let mid = (lo + hi) * T::of(0.5);
                    if g(mid) < T::zero() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo < T::of(1e-14) {
                        break;
                    }
                }
                let t = (lo + hi) * T::of(0.5);
                let rel = x + dir * t - anchor;
                Ok(RayHit {
                    point: x + dir * t,
                    s: self.wrap(rel.y.atan2(rel.x)),
                    t,
                })
            }
            CurveKind::TabulatedConvex(samples) => {
                let n = samples.len();
                let mut best: Option<RayHit<T>> = None;
                for i in 0..n {
                    let (sa, a) = samples[i];
                    let (sb, b) = if i + 1 < n {
                        samples[i + 1]
                    } else {
                        (self.period, samples[0].1)
                    };
                    // solve x + t dir = a + u (b - a), u in [0, 1]
                    let e = b - a;
                    let denom = dir.cross(e);
                    if denom.abs() < T::of(1e-15) {
                        continue;
                    }
                    let diff = a - x;
                    let t = diff.cross(e) / denom;
                    let u = diff.cross(dir) / denom;
                    if t > T::of(1e-12) && u >= -T::of(1e-12) && u <= T::one() + T::of(1e-12) {
                        if best.map_or(true, |h| t < h.t) {
                            best = Some(RayHit {
                                point: a + e * u,
                                s: self.wrap(sa + (sb - sa) * u),
                                t,
                            });
                        }
                    }
                }
                best.ok_or_else(|| Error::validation("ray", "no polygon intersection found"))
            }
        }
    }

    fn bracket<'a>(&self, samples: &'a [(T, Vec2<T>)], s: T) -> (usize, usize, T) {
        let n = samples.len();
        // rightmost sample with parameter <= s (s already wrapped)
        let mut lo = 0usize;
        let mut hi = n; // sentinel: wraps to sample 0 at the period
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let sm = if mid < n { samples[mid].0 } else { self.period };
            if sm <= s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let s_lo = samples[lo].0;
        let s_hi = if lo + 1 < n {
            samples[lo + 1].0
        } else {
            self.period
        };
        let alpha = (s - s_lo) / (s_hi - s_lo);
        (lo, (lo + 1) % n, alpha)
    }

    /// Closure error and convexity check on a dense sample.
    pub fn check_convex(&self) -> Result<()> {
        let closure = (self.point(T::zero()) - self.point(self.period)).norm();
        if closure > T::of(1e-12) {
            return Err(Error::validation(
                "curve",
                format!("not closed: |z(0) - z(period)| = {}", closure.as_f64()),
            ));
        }
        let n = CONVEXITY_SAMPLES;
        let step = self.period / T::of(n as f64);
        let mut prev_sign = T::zero();
        for i in 0..n {
            let s0 = step * T::of(i as f64);
            let a = self.point(s0);
            let b = self.point(s0 + step);
            let c = self.point(s0 + step + step);
            let cr = (b - a).cross(c - b);
            // zero-curvature stretches (e.g. the flat point of the polar
            // curve) are allowed; only a genuine sign flip is a violation
            if cr.abs() > T::of(1e-12) {
                if prev_sign != T::zero() && cr * prev_sign < T::zero() {
                    return Err(Error::validation("curve", "not convex"));
                }
                prev_sign = cr.signum();
            }
        }
        Ok(())
    }
}

// small helpers to report coordinates in errors without T: Display bounds fuss
impl<T: Scalar> Vec2<T> {
    fn as_f64_x(self) -> f64 {
        self.x.as_f64()
    }
    fn as_f64_y(self) -> f64 {
        self.y.as_f64()
    }
}

/// The observation arc, a closed proper subset of the curve.
#[derive(Debug, Clone)]
pub struct Arc<T> {
    pub curve: AcquisitionCurve<T>,
    pub s_start: T,
    pub s_end: T,
}

impl<T: Scalar> Arc<T> {
    pub fn new(curve: AcquisitionCurve<T>, s_start: T, s_end: T) -> Result<Self> {
        if !(s_start < s_end && s_end <= s_start + curve.period()) {
            return Err(Error::validation(
                "arc",
                "require s_start < s_end <= s_start + period",
            ));
        }
        Ok(Self {
            curve,
            s_start,
            s_end,
        })
    }

    pub fn full(curve: AcquisitionCurve<T>) -> Self {
        let period = curve.period();
        Self {
            curve,
            s_start: T::zero(),
            s_end: period,
        }
    }

    pub fn length_param(&self) -> T {
        self.s_end - self.s_start
    }

    pub fn is_full(&self) -> bool {
        self.length_param() >= self.curve.period() - T::of(1e-12)
    }

    /// Offset of a (wrapped) curve parameter from the arc start, in
    /// [0, period).
    pub fn offset(&self, s: T) -> T {
        self.curve.wrap(s - self.s_start)
    }

    pub fn start_point(&self) -> Vec2<T> {
        self.curve.point(self.s_start)
    }

    pub fn end_point(&self) -> Vec2<T> {
        self.curve.point(self.s_end)
    }

    /// Uniform parameter grid over the arc, endpoints included.
    pub fn sample_params(&self, n_a: usize) -> Vec<T> {
        let step = self.length_param() / T::of((n_a - 1) as f64);
        (0..n_a)
            .map(|i| self.s_start + step * T::of(i as f64))
            .collect()
    }
}

/// An interior covector (x, xi).
#[derive(Debug, Clone, Copy)]
pub struct Covector<T> {
    pub x: Vec2<T>,
    pub xi: Vec2<T>,
}

/// How an interior covector relates to the observation arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Visibility {
    DoublyVisible,
    SinglyVisible,
    Invisible,
    Boundary,
}

/// Tolerance in parameter units for landing on an arc endpoint.
pub const BOUNDARY_TOL_S: f64 = 1e-9;

pub fn classify_covector<T: Scalar>(arc: &Arc<T>, cov: &Covector<T>) -> Result<Visibility> {
    let (plus, minus) = arc.curve.ray_intersections(cov.x, cov.xi)?;
    if arc.is_full() {
        return Ok(Visibility::DoublyVisible);
    }
    let tol = T::of(BOUNDARY_TOL_S);
    let len = arc.length_param();
    let period = arc.curve.period();
    let near_endpoint = |off: T| -> bool {
        off < tol || (off - len).abs() < tol || off > period - tol
    };
    let in_interior = |off: T| -> bool { off > tol && off < len - tol };

    let off_p = arc.offset(plus.s);
    let off_m = arc.offset(minus.s);
    if near_endpoint(off_p) || near_endpoint(off_m) {
        return Ok(Visibility::Boundary);
    }
    match (in_interior(off_p), in_interior(off_m)) {
        (true, true) => Ok(Visibility::DoublyVisible),
        (true, false) | (false, true) => Ok(Visibility::SinglyVisible),
        (false, false) => Ok(Visibility::Invisible),
    }
}
