use rug::float::Round;
use rug::ops::PowAssignRound;
use rug::{Complex, Float};

/// Arbitrary-precision real; carries its own binary precision.
pub type BigReal = Float;
/// Arbitrary-precision complex; carries its own binary precision.
pub type BigComplex = Complex;

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;
/// Extra bits carried beyond the requested decimal digits.
const GUARD_BITS: u32 = 16;

/// Working precision in decimal digits.
///
/// Every numeric routine takes one explicitly; there is no global default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const fn digits(d: u32) -> Self {
        Precision(d)
    }

    pub const fn decimal_digits(self) -> u32 {
        self.0
    }

    /// Binary precision used for values at this working precision.
    pub fn bits(self) -> u32 {
        (f64::from(self.0) * BITS_PER_DIGIT).ceil() as u32 + GUARD_BITS
    }

    pub const fn plus(self, extra: u32) -> Self {
        Precision(self.0 + extra)
    }

    pub fn minus(self, fewer: u32) -> Self {
        Precision(self.0.saturating_sub(fewer).max(1))
    }

    pub fn real(self, v: impl Into<f64>) -> BigReal {
        Float::with_val(self.bits(), v.into())
    }

    pub fn zero(self) -> BigReal {
        Float::new(self.bits())
    }

    pub fn complex_zero(self) -> BigComplex {
        Complex::new(self.bits())
    }

    pub fn pi(self) -> BigReal {
        Float::with_val(self.bits(), rug::float::Constant::Pi)
    }

    /// `10^(-k)` at this precision.
    pub fn ten_pow_neg(self, k: i64) -> BigReal {
        let mut t = Float::with_val(self.bits(), 10);
        t.pow_assign_round(-k, Round::Nearest);
        t
    }
}

impl std::fmt::Display for Precision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} digits", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits_cover_digits() {
        let p = Precision::digits(100);
        assert!(p.bits() >= 333);
        assert!(p.ten_pow_neg(50) > 0);
        let t = p.ten_pow_neg(3);
        assert!((t - 0.001f64).abs() < 1e-18);
    }
}
