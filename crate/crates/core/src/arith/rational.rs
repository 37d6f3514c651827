use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::precision::{BigReal, Precision};
use crate::error::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigRat(Rational);

impl BigRat {
    pub fn new(num: impl Into<Integer>, den: impl Into<Integer>) -> Result<Self> {
        let den = den.into();
        if den == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(BigRat(Rational::from((num.into(), den))))
    }

    pub fn from_int(n: impl Into<Integer>) -> Self {
        BigRat(Rational::from(n.into()))
    }

    pub fn zero() -> Self {
        BigRat(Rational::new())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.cmp0().is_eq()
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denom() == 1
    }

    pub fn signum(&self) -> i32 {
        match self.0.cmp0() {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Self {
        BigRat(self.0.clone().abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidInput("reciprocal of zero".into()));
        }
        Ok(BigRat(self.0.clone().recip()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let num = self.numer().clone().pow(e);
        let den = self.denom().clone().pow(e);
        BigRat(Rational::from((num, den)))
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.signum() < 0 {
            return None;
        }
        let (n, d) = (self.numer(), self.denom());
        if !n.is_perfect_square() || !d.is_perfect_square() {
            return None;
        }
        Some(BigRat(Rational::from((
            Integer::from(n.sqrt_ref()),
            Integer::from(d.sqrt_ref()),
        ))))
    }

    pub fn to_real(&self, prec: Precision) -> BigReal {
        Float::with_val(prec.bits(), &self.0)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    /// Total decimal digits of numerator and denominator.
    pub fn digit_size(&self) -> u32 {
        let dn = self.numer().to_string().trim_start_matches('-').len() as u32;
        let dd = self.denom().to_string().len() as u32;
        dn + dd
    }
}

impl From<Rational> for BigRat {
    fn from(r: Rational) -> Self {
        BigRat(r)
    }
}

impl From<i64> for BigRat {
    fn from(n: i64) -> Self {
        BigRat::from_int(n)
    }
}

impl From<Integer> for BigRat {
    fn from(n: Integer) -> Self {
        BigRat(Rational::from(n))
    }
}

impl fmt::Display for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for BigRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BigRat {
    type Err = Error;

    /// Parses `p`, `p/q` or `-p/q` with integer `p`, `q`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: Integer = n.parse().map_err(|_| bad())?;
        let den: Integer = d.parse().map_err(|_| bad())?;
        BigRat::new(num, den)
    }
}

impl Serialize for BigRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BigRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(BigRat::from_int(n)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&BigRat> for &BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &BigRat) -> BigRat {
                BigRat(Rational::from((&self.0).$method(&rhs.0)))
            }
        }
        impl $trait<BigRat> for BigRat {
            type Output = BigRat;
            fn $method(self, rhs: BigRat) -> BigRat {
                BigRat(self.0.$method(rhs.0))
            }
        }
        impl $trait<&BigRat> for BigRat {
            type Output = BigRat;
            fn $method(self, rhs: &BigRat) -> BigRat {
                BigRat(self.0.$method(&rhs.0))
            }
        }
        impl $trait<BigRat> for &BigRat {
            type Output = BigRat;
            fn $method(self, rhs: BigRat) -> BigRat {
                BigRat(Rational::from((&self.0).$method(&rhs.0)))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div<&BigRat> for &BigRat {
    type Output = BigRat;
    /// Panics on division by zero, like the integer types.
    fn div(self, rhs: &BigRat) -> BigRat {
        assert!(!rhs.is_zero(), "BigRat division by zero");
        BigRat(Rational::from(&self.0 / &rhs.0))
    }
}

impl Div<BigRat> for BigRat {
    type Output = BigRat;
    fn div(self, rhs: BigRat) -> BigRat {
        &self / &rhs
    }
}

impl Neg for BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(-self.0)
    }
}

impl Neg for &BigRat {
    type Output = BigRat;
    fn neg(self) -> BigRat {
        BigRat(Rational::from(-&self.0))
    }
}

impl AddAssign<&BigRat> for BigRat {
    fn add_assign(&mut self, rhs: &BigRat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&BigRat> for BigRat {
    fn sub_assign(&mut self, rhs: &BigRat) {
        self.0 -= &rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let r = BigRat::new(6, -4).unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(*r.denom(), 2);
        assert!(BigRat::new(1, 0).is_err());
    }

    #[test]
    fn parse_and_print() {
        let r: BigRat = "-26273369/938454".parse().unwrap();
        assert_eq!(r.to_string(), "-26273369/938454");
        assert_eq!("7".parse::<BigRat>().unwrap(), BigRat::from_int(7));
        assert!("1/x".parse::<BigRat>().is_err());
    }

    #[test]
    fn exact_square_roots() {
        let r: BigRat = "1156/9".parse().unwrap();
        assert_eq!(r.sqrt_exact().unwrap().to_string(), "34/3");
        assert!(BigRat::from_int(2).sqrt_exact().is_none());
        assert!(BigRat::from_int(-4).sqrt_exact().is_none());
    }

    fn arb_rat() -> impl Strategy<Value = BigRat> {
        (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| BigRat::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn add_sub_roundtrip(a in arb_rat(), b in arb_rat()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn mul_div_roundtrip(a in arb_rat(), b in arb_rat()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(&(&a * &b) / &b, a);
        }
    }
}
