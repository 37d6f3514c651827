use rug::Float;

use crate::arith::{BigReal, Precision};
use crate::error::{Error, Result};
use crate::quadforms::kronecker;

/// First `n_max` Fourier coefficients (of `e(nz)`, `n = 1..=n_max`) of the
/// canonical differential attached to the twisted divisor:
///
/// `−sgn(Δ)·√|Δ|·Σ_{d|n} (n/d)·(Δ/d)·c⁺(|Δ|n²/d², rn/d)`.
///
/// `provider(m, h)` returns `c⁺(m, h)`; `h` is passed unreduced.
pub fn eta_qexp<F>(delta: i64, r: i64, provider: F, n_max: usize, prec: Precision) -> Result<Vec<BigReal>>
where
    F: Fn(i64, i64) -> Option<BigReal>,
{
    if delta == 1 {
        return Err(Error::InvalidInput("Δ = 1 needs the Weyl vector term".into()));
    }
    if delta == 0 {
        return Err(Error::InvalidInput("Δ = 0".into()));
    }
    let bits = prec.bits();
    let root = Float::with_val(bits, delta.unsigned_abs()).sqrt();
    let sign = -delta.signum();
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max as i64 {
        let mut acc = Float::new(bits);
        for d in (1..=n).filter(|d| n % d == 0) {
            let chi = kronecker(delta, d);
            if chi == 0 {
                continue;
            }
            let m = delta.abs() * (n / d) * (n / d);
            let h = r * (n / d);
            let c = provider(m, h).ok_or(Error::MissingCoefficient { n: m, h })?;
            acc += Float::with_val(bits, &c * (chi as i64 * (n / d)));
        }
        out.push(Float::with_val(bits, &acc * &root) * sign);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn p() -> Precision {
        Precision::digits(30)
    }

    #[test]
    fn first_coefficient() {
        let c = p().real(0.75);
        let got = eta_qexp(12, 2, |m, h| (m == 12 && h == 2).then(|| c.clone()), 1, p()).unwrap();
        let want = Float::with_val(p().bits(), 12).sqrt() * -0.75f64;
        assert!(Float::with_val(p().bits(), &got[0] - want).abs() < 1e-25);
    }

    #[test]
    fn second_coefficient_for_split_two() {
        // 17 ≡ 1 mod 8, so (17/2) = 1
        let mut table = HashMap::new();
        table.insert((17, 3), p().real(0.5));
        table.insert((68, 6), p().real(-1.25));
        let got = eta_qexp(17, 3, |m, h| table.get(&(m, h)).cloned(), 2, p()).unwrap();
        let want = -Float::with_val(p().bits(), 17).sqrt() * (2.0 * -1.25 + 0.5);
        assert!(Float::with_val(p().bits(), &got[1] - want).abs() < 1e-25);
    }

    #[test]
    fn zero_provider_and_sign() {
        let got = eta_qexp(21, 1, |_, _| Some(p().zero()), 6, p()).unwrap();
        assert!(got.iter().all(|x| x.is_zero()));
        let pos = eta_qexp(5, 1, |_, _| Some(p().real(1)), 3, p()).unwrap();
        let neg = eta_qexp(-3, 1, |_, _| Some(p().real(1)), 3, p()).unwrap();
        assert!(pos[0] < 0 && neg[0] > 0);
    }

    #[test]
    fn missing_and_trivial_discriminant() {
        let err = eta_qexp(12, 2, |m, _| (m == 12).then(|| p().real(1)), 2, p()).unwrap_err();
        assert!(matches!(err, Error::MissingCoefficient { n: 48, h: 4 }));
        assert!(eta_qexp(1, 1, |_, _| Some(p().real(1)), 1, p()).is_err());
    }
}
