//! Limited-view reconstruction from circular means.
//!
//! Data are arc-length integrals of a 2D phantom over circles centered on a
//! closed convex acquisition curve; only an arc of the curve is observed.
//! Reconstruction is filtered backprojection: a one-dimensional Fourier
//! multiplier in the squared-radius variable, a smoothing window that
//! vanishes to a chosen order at the arc endpoints (controlling the strength
//! of the limited-view artifacts), and a weighted backprojection.
//!
//! The crate is generic over the scalar type (`f32` or `f64`) through the
//! [`Scalar`] trait; the `*64` aliases below are the types most callers want.

pub mod analysis;
pub mod backprojection;
pub mod error;
pub mod filter;
pub mod geometry;
pub mod interp;
pub mod io;
pub mod phantom;
pub mod scalar;
pub mod sinogram;
pub mod vec2;
pub mod window;

pub use analysis::{
    artifact_amplitude, line_profile, measure_jump, predicted_artifact_circles, sigma0,
    ArtifactCircle, EdgeProbe,
};
pub use backprojection::{backproject, reconstruct, ReconGrid};
pub use error::{Error, Result};
pub use filter::{filter_row, filter_row_oracle, filter_sinogram, FilterPlan};
pub use geometry::{
    classify_covector, AcquisitionCurve, Arc, Covector, CurveKind, Frame, RayHit, Visibility,
};
pub use interp::Pchip;
pub use phantom::{
    circular_mean, rasterize, sample_sinogram, DiscPhantom, Phantom, RasterImage,
};
pub use scalar::Scalar;
pub use sinogram::{uniform_grid, Sinogram};
pub use vec2::Vec2;
pub use window::{WindowKind, WindowSpec};

/// Double-precision aliases, the default working types.
pub type Vec2_64 = Vec2<f64>;
pub type AcquisitionCurve64 = AcquisitionCurve<f64>;
pub type Arc64 = Arc<f64>;
pub type Sinogram64 = Sinogram<f64>;
pub type Phantom64 = Phantom<f64>;
pub type RasterImage64 = RasterImage<f64>;
pub type FilterPlan64 = FilterPlan<f64>;
pub type WindowSpec64 = WindowSpec<f64>;
pub type ReconGrid64 = ReconGrid<f64>;

/// Single-precision aliases.
pub type Vec2_32 = Vec2<f32>;
pub type Sinogram32 = Sinogram<f32>;
pub type RasterImage32 = RasterImage<f32>;
pub type FilterPlan32 = FilterPlan<f32>;
pub type WindowSpec32 = WindowSpec<f32>;
