//! Scalar abstraction so the whole pipeline runs in f32 or f64.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rustfft::FftNum;

/// Floating point scalar usable throughout the reconstruction pipeline.
///
/// Implemented for `f32` and `f64` via the blanket impl below.
pub trait Scalar:
    Float + FloatConst + FftNum + FromPrimitive + ToPrimitive + Sum + Display + Debug
{
    /// Lossy conversion from an `f64` literal or intermediate.
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 converts to any float scalar")
    }

    /// Widen to `f64` for I/O and reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).expect("float scalar widens to f64")
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FftNum + FromPrimitive + ToPrimitive + Sum + Display + Debug
{
}
