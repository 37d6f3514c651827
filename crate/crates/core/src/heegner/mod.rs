//! The modular parameterization `φ: X0(N) → E` evaluated at Heegner points,
//! and recognition of the rational twisted Heegner point `P_{Δ,r}(f)`.

mod param;
mod point;

pub use param::{divisor_log, phi_log, terms_needed, ModularParam};
pub use point::{heegner_divisors, heegner_point, recognize_on_twist, HeegnerPoint, PrincipalTerm};
