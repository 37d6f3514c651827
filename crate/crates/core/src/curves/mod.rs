//! Elliptic curve models over ℚ, exact point arithmetic, quadratic twists,
//! minimal models of twists and Fourier coefficients by point counting.

mod config;
mod counting;
mod map;
mod model;
mod twist;

pub use config::{CurveConfig, MinimalModelOverride};
pub use counting::{an_sequence, ap, ApResult, Reduction};
pub use map::{Model, ModelMap};
pub use model::{Curve, CurvePoint, LongModel, ShortModel, Weierstrass};
pub use twist::{minimal_twist_model, twist, TwistMap};
