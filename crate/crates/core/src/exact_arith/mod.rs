//! Exact scalars: arbitrary-precision rationals and the field ℚ(√2, √3).
//!
//! Every coefficient that shows up in the tetrahedral tables (1/√2, 1/√3,
//! 1/√6, √3/2, plain rationals) lives in ℚ(√2, √3), so the whole engine runs
//! without floating point.

mod rational;
mod scalar;

pub use rational::{denominator_lcm, Rational};
pub use scalar::FieldScalar;
