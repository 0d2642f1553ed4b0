//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar (`f32` or `f64`).
///
/// All tolerances in the crate are written as `f64` literals and converted
/// through [`Real::tolerance`], which widens them to a small multiple of the
/// machine epsilon when the literal is below what the type can resolve.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// `base`, floored at `64 * epsilon`.
    #[inline]
    fn tolerance(base: f64) -> Self {
        let eps = Self::epsilon() * Self::lit(64.0);
        Self::lit(base).max(eps)
    }

    /// Lossy conversion used for diagnostics and for the `f64` oracle paths.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `-x ln x`, with `0 ln 0 = 0`.
    #[inline]
    fn xlogx_neg(self) -> Self {
        if self <= Self::zero() {
            Self::zero()
        } else {
            -self * self.ln()
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}
