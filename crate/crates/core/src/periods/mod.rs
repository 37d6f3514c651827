//! Complex-analytic layer: period lattices, the Weierstrass `℘` function,
//! the complex uniformization `ℂ/L ≅ E(ℂ)` and real-locus periods of
//! differentials of the third kind.

mod lattice;
pub mod quadrature;
mod third_kind;
mod uniformization;
mod weierstrass;

pub use lattice::{period_lattice, PeriodLattice};
pub use third_kind::{choose_path, third_kind_period, third_kind_period_at_height, ThirdKindPath};
pub use uniformization::{elliptic_exp, elliptic_log, elliptic_log_rational, reduce_mod_lattice, ComplexPoint};
pub use weierstrass::{wp, wp_and_prime, wp_prime};
