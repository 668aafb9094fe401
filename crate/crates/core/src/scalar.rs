//! Floating-point scalar abstraction shared by every numeric routine.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, NumCast};

/// floating point: f32 or f64
pub trait Scalar:
    Float
    + FromPrimitive
    + NumCast
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal, rounding to the nearest representable value.
    fn lit(value: f64) -> Self {
        <Self as NumCast>::from(value).expect("finite f64 converts to every Scalar")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `value` if `spin` is +1, `-value` if it is -1.
    #[inline(always)]
    fn signed(self, spin: i8) -> Self {
        if spin > 0 {
            self
        } else {
            -self
        }
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
