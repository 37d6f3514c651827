//! Twisted Heegner points and real periods of differentials of the third kind
//! on rational elliptic curves.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: exact rationals, working-precision floats and rational recognition.
//! - [`curves`]: Weierstrass models, group law, quadratic twists and `a_p` by point counting.
//! - [`periods`]: period lattices, the Weierstrass `℘` function, the complex
//!   uniformization and real-locus periods of third-kind differentials.
//! - [`quadforms`]: Heegner forms of level `N`, genus characters and twisted Heegner divisors.
//! - [`heegner`]: the modular parameterization evaluated at Heegner points.
//! - [`thirdkind`]: differentials of the third kind on short and minimal models,
//!   and the coefficient/period differences built from them.

pub mod arith;
pub mod curves;
mod error;
pub mod heegner;
pub mod periods;
pub mod quadforms;
pub mod thirdkind;

pub use arith::{BigComplex, BigRat, BigReal, Precision};
pub use error::{Error, Result};
