//! Differentials of the third kind on short and minimal models, their real
//! periods, the coefficient/period differences, and the q-expansion of the
//! canonical differential attached to a twisted Heegner divisor.

mod diff;
mod difference;
mod eta;

pub use diff::{beta, delta_t, find_t, wm_differential, DiffModel, FindT, ThirdKindDiff};
pub use difference::{
    coefficient_tolerance, difference_raw, difference_wm, difference_wm_on, period_wm, period_wm_with_t, Difference, PeriodWm,
    PlusCoefficient,
};
pub use eta::eta_qexp;
