//! Positive definite binary quadratic forms `[A, B, C]` with `N | A`, their
//! `Γ0(N)`-classes, genus characters and twisted Heegner divisors.
//!
//! Coefficients are machine integers: the discriminants reached by the
//! Heegner computations stay far below the `i64` range.

mod classes;
mod divisor;
mod form;
mod genus;

pub use classes::{gamma0_equivalent, heegner_classes, hurwitz_h, stabilizer_order};
pub use divisor::{is_fundamental_discriminant, twisted_divisor, HeegnerDivisor};
pub use form::{compose, heegner_tau, Mat2, QForm};
pub use genus::{genus_char, genus_char_for_splitting, kronecker};
