//! Schlömilch, Bell and Bessel series and the exact constants of the
//! Rosenthal moment inequality for sums of independent random variables.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod dd;
pub mod error;
pub mod exact;
pub mod extremal;
pub mod logreal;
pub mod montecarlo;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod special;
pub mod tables;

pub use dd::DoubleDouble;
pub use error::{Error, Result};
pub use logreal::{LogReal, LogSum};
pub use scalar::Scalar;

pub type ExactInt = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
pub type Real = f64;
pub type ExtReal = DoubleDouble;
