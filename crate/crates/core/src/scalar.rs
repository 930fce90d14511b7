use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

use crate::dd::DoubleDouble;

/// Real scalar used by the numerical routines: f32, f64 or [`DoubleDouble`].
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Significant decimal digits carried.
    const DIGITS: u32;

    /// Unit roundoff.
    fn eps() -> Self;

    /// Euler-Mascheroni constant.
    fn euler_gamma() -> Self;

    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite literal")
    }

    fn from_usize_lossy(n: usize) -> Self {
        <Self as FromPrimitive>::from_u64(n as u64).expect("representable integer")
    }

    fn from_i64_lossy(n: i64) -> Self {
        <Self as FromPrimitive>::from_i64(n).expect("representable integer")
    }

    /// `num / den` evaluated in the scalar's own precision.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64_lossy(num) / Self::from_i64_lossy(den)
    }

    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    const DIGITS: u32 = 6;
    fn eps() -> Self {
        f32::EPSILON
    }
    fn euler_gamma() -> Self {
        0.577_215_7
    }
}

impl Scalar for f64 {
    const DIGITS: u32 = 15;
    fn eps() -> Self {
        f64::EPSILON
    }
    fn euler_gamma() -> Self {
        0.577_215_664_901_532_9
    }
}

impl Scalar for DoubleDouble {
    const DIGITS: u32 = 31;
    fn eps() -> Self {
        DoubleDouble::EPSILON
    }
    fn euler_gamma() -> Self {
        DoubleDouble::EULER
    }
    fn from_i64_lossy(n: i64) -> Self {
        DoubleDouble::from_i64_exact(n)
    }
}
