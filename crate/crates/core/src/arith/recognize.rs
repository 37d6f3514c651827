use rug::{Float, Integer, Rational};

use super::precision::{BigReal, Precision};
use super::rational::BigRat;

/// Default recognition tolerance `10^(-P/2)` at working precision `P`.
pub fn default_tolerance(prec: Precision) -> BigReal {
    prec.ten_pow_neg(i64::from(prec.decimal_digits() / 2))
}

/// Default denominator bound `10^12`.
pub fn default_max_den() -> Integer {
    Integer::from(10u64.pow(12))
}

/// Recognizes `x` as a rational `p/q` with `q <= max_den` and `|x - p/q| < tol`.
///
/// Walks the continued-fraction convergents of `x` (taken as the exact binary
/// rational it stores) and returns the first one within `tol`. `None` means no
/// convergent with an admissible denominator gets close enough; callers should
/// raise the precision and retry.
pub fn recognize_rational(x: &BigReal, max_den: &Integer, tol: &BigReal) -> Option<BigRat> {
    assert!(*tol > 0, "recognition tolerance must be positive");
    assert!(*max_den >= 1, "max_den must be at least 1");
    let exact = x.to_rational()?;
    let bits = x.prec().max(tol.prec());

    let within = |p: &Integer, q: &Integer| -> bool {
        let diff = Rational::from((p.clone(), q.clone())) - &exact;
        Float::with_val(bits, diff.abs()) < *tol
    };

    // Convergent recurrences p_k = a_k p_{k-1} + p_{k-2}, likewise for q.
    let (mut p_prev, mut q_prev) = (Integer::from(1), Integer::from(0));
    let mut rest = exact.clone();
    let a0 = rest.clone().floor().into_numer_denom().0;
    let (mut p, mut q) = (a0.clone(), Integer::from(1));
    rest -= &a0;
    loop {
        if q > *max_den {
            return None;
        }
        if within(&p, &q) {
            return Some(BigRat::from(Rational::from((p, q))));
        }
        if rest.cmp0().is_eq() {
            return None;
        }
        rest.recip_mut();
        let a = rest.clone().floor().into_numer_denom().0;
        rest -= &a;
        let p_next = Integer::from(&a * &p) + &p_prev;
        let q_next = Integer::from(&a * &q) + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}

/// Recognizes `x` as `k/4` for an integer `k` with `|x - k/4| < tol`.
pub fn recognize_quarter_integer(x: &BigReal, tol: &BigReal) -> Option<BigRat> {
    assert!(*tol > 0, "recognition tolerance must be positive");
    let four_x = Float::with_val(x.prec(), x * 4u32);
    let k = four_x.round().to_integer()?;
    let candidate = BigRat::from(Rational::from((k, 4)));
    let err = Float::with_val(x.prec(), x - candidate.as_rational());
    (err.abs() < *tol).then_some(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_decimal;
    use proptest::prelude::*;

    fn p(d: u32) -> Precision {
        Precision::digits(d)
    }

    #[test]
    fn integer_difference() {
        let x = parse_decimal("-5.000000000000000000", p(40)).unwrap();
        let got = recognize_rational(&x, &default_max_den(), &p(40).ten_pow_neg(15)).unwrap();
        assert_eq!(got.to_string(), "-5");
    }

    #[test]
    fn zero() {
        let x = p(40).zero();
        let got = recognize_rational(&x, &default_max_den(), &p(40).ten_pow_neg(20)).unwrap();
        assert!(got.is_zero());
    }

    #[test]
    fn thirteen_sixths() {
        let r: BigRat = "-13/6".parse().unwrap();
        let x = r.to_real(p(40));
        let got = recognize_rational(&x, &default_max_den(), &default_tolerance(p(40))).unwrap();
        assert_eq!(got, r);
    }

    #[test]
    fn large_denominator_within_bound() {
        let r: BigRat = "-26273369/938454".parse().unwrap();
        let x = r.to_real(p(60));
        let got = recognize_rational(&x, &default_max_den(), &default_tolerance(p(60))).unwrap();
        assert_eq!(got, r);
        // A denominator bound below q forces a miss.
        assert!(recognize_rational(&x, &Integer::from(1000), &default_tolerance(p(60))).is_none());
    }

    #[test]
    fn irrational_is_rejected() {
        let x = Float::with_val(p(100).bits(), 2).sqrt();
        assert!(recognize_rational(&x, &default_max_den(), &default_tolerance(p(100))).is_none());
    }

    #[test]
    fn quarter_integers() {
        let x = parse_decimal("18.5000000000000000000001", p(40)).unwrap();
        let tol = p(40).ten_pow_neg(15);
        assert_eq!(recognize_quarter_integer(&x, &tol).unwrap().to_string(), "37/2");
        let x = parse_decimal("0.25", p(40)).unwrap();
        assert_eq!(recognize_quarter_integer(&x, &tol).unwrap().to_string(), "1/4");
        let x = parse_decimal("-39.75", p(40)).unwrap();
        assert_eq!(recognize_quarter_integer(&x, &tol).unwrap().to_string(), "-159/4");
        let x = parse_decimal("0.3", p(40)).unwrap();
        assert!(recognize_quarter_integer(&x, &tol).is_none());
    }

    fn digits_of(r: &BigRat) -> u32 {
        r.digit_size()
    }

    proptest! {
        #[test]
        fn rationals_roundtrip(n in -1_000_000_000i64..1_000_000_000, d in 1i64..1_000_000) {
            let r = BigRat::new(n, d).unwrap();
            let prec = p(2 * digits_of(&r) + 10);
            let x = r.to_real(prec);
            let tol = prec.ten_pow_neg(i64::from(prec.decimal_digits()) - 10);
            let got = recognize_rational(&x, &Integer::from(d), &tol);
            prop_assert_eq!(got, Some(r));
        }

        #[test]
        fn quarter_agrees_with_general(k in -100_000i64..100_000, noise in -1000i64..1000) {
            let prec = p(50);
            let mut x = BigRat::new(k, 4).unwrap().to_real(prec);
            x += Float::with_val(prec.bits(), noise) * prec.ten_pow_neg(30);
            let tol = prec.ten_pow_neg(20);
            let a = recognize_quarter_integer(&x, &tol);
            let b = recognize_rational(&x, &Integer::from(4), &tol);
            prop_assert_eq!(a, b);
        }
    }
}
