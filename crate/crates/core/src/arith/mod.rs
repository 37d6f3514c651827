//! Exact rationals, working-precision reals and recognition of rationals
//! from high-precision decimals.

mod decimal;
mod precision;
mod rational;
mod recognize;

pub use decimal::{format_decimal, parse_decimal};
pub use precision::{BigComplex, BigReal, Precision};
pub use rational::BigRat;
pub use recognize::{
    default_max_den, default_tolerance, recognize_quarter_integer, recognize_rational,
};
