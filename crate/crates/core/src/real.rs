//! Scalar abstraction shared by the grid, quadrature and special-function code.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rustfft::FftNum;

/// Floating point scalar usable by every numerical kernel in the crate.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + FftNum + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Converts a literal. Every `f64` fits (possibly rounded) in the supported types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    #[inline]
    fn from_usize_lossy(k: usize) -> Self {
        Self::from_usize(k).expect("index representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Machine epsilon scaled for tolerances that should track the type.
    #[inline]
    fn tol(scale: f64) -> Self {
        Self::epsilon() * Self::lit(scale)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Japanese bracket ⟨r²⟩ = √(1 + r⁴) written in terms of r².
#[inline]
pub fn bracket<T: Real>(r_sq: T) -> T {
    (T::one() + r_sq * r_sq).sqrt()
}
