//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the physics and quadrature code is written against.
///
/// Implemented for `f32` and `f64`. Everything that needs to meet the
/// published tolerances is exercised in `f64`; `f32` is supported for
/// coarse, memory-light evaluations.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        // f32 and f64 both accept every finite f64 (possibly rounding)
        Self::from_f64(x).expect("literal representable in target float type")
    }

    /// Converts a count into `Self`.
    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in target float type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Relative difference `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff<T: Real>(a: T, b: T) -> T {
    let scale = a.abs().max(b.abs());
    if scale == T::zero() {
        T::zero()
    } else {
        (a - b).abs() / scale
    }
}
