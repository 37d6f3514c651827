use rug::float::Constant;
use rug::{Complex, Float};

use super::lattice::PeriodLattice;
use crate::arith::BigComplex;
use crate::error::{Error, Result};

/// `z/μ` reduced to `Re ∈ [−1/2, 1/2)`, `|Im| ≤ Im τ / 2`.
pub(crate) fn reduce_unit(z: &BigComplex, l: &PeriodLattice) -> BigComplex {
    let bits = l.bits();
    let mut w = Complex::with_val(bits, z / l.mu());
    let tau_im = Float::with_val(bits, l.nu_im() / l.mu());
    let k = Float::with_val(bits, w.imag() / &tau_im).round();
    *w.mut_imag() -= Float::with_val(bits, &k * &tau_im);
    let j = Float::with_val(bits, w.real()).round();
    *w.mut_real() -= j;
    w
}

struct Sums {
    /// `℘` bracket: `1/12 + Σ ...` before the `(2πi/μ)²` factor.
    value: BigComplex,
    /// `℘′` bracket before the `(2πi/μ)³` factor.
    derivative: Option<BigComplex>,
}

fn kernel(x: &BigComplex, bits: u32) -> (BigComplex, BigComplex) {
    // x/(1−x)² and x(1+x)/(1−x)³
    let one_minus = Complex::with_val(bits, 1 - x);
    let sq = Complex::with_val(bits, one_minus.square_ref());
    let v = Complex::with_val(bits, x / &sq);
    let one_plus = Complex::with_val(bits, 1 + x);
    let d = Complex::with_val(bits, &v * &one_plus) / one_minus;
    (v, d)
}

fn q_sums(z: &BigComplex, l: &PeriodLattice, want_derivative: bool) -> Result<Sums> {
    let bits = l.bits();
    let w = reduce_unit(z, l);
    let pole_radius = l.precision().ten_pow_neg(i64::from(l.precision().decimal_digits() / 2));
    if Float::with_val(bits, w.abs_ref()) < pole_radius {
        return Err(Error::Pole { distance: format!("{:.3e}", Float::with_val(bits, w.abs_ref()).to_f64()) });
    }
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    let u = Complex::with_val(bits, &w * Complex::with_val(bits, (0, &two_pi))).exp();
    let u_inv = Complex::with_val(bits, u.recip_ref());

    let (mut value, mut deriv) = kernel(&u, bits);
    for qn in &l.nome_powers {
        let plus = Complex::with_val(bits, &u * qn);
        let minus = Complex::with_val(bits, &u_inv * qn);
        let (vp, dp) = kernel(&plus, bits);
        let (vm, dm) = kernel(&minus, bits);
        value += vp;
        value += vm;
        if want_derivative {
            deriv += dp;
            deriv -= dm;
        }
    }
    value -= &l.eisenstein_shift;
    value += Float::with_val(bits, 12).recip();
    Ok(Sums { value, derivative: want_derivative.then_some(deriv) })
}

fn two_pi_i_over_mu(l: &PeriodLattice) -> BigComplex {
    let bits = l.bits();
    let c = Float::with_val(bits, Constant::Pi) * 2u32 / l.mu();
    Complex::with_val(bits, (0, c))
}

/// Weierstrass `℘(z)` for the lattice `L`.
pub fn wp(z: &BigComplex, l: &PeriodLattice) -> Result<BigComplex> {
    let s = q_sums(z, l, false)?;
    let f = two_pi_i_over_mu(l);
    Ok(Complex::with_val(l.bits(), f.square() * s.value))
}

/// Derivative `℘′(z)`.
pub fn wp_prime(z: &BigComplex, l: &PeriodLattice) -> Result<BigComplex> {
    Ok(wp_and_prime(z, l)?.1)
}

/// `(℘(z), ℘′(z))` sharing one pass over the q-series.
pub fn wp_and_prime(z: &BigComplex, l: &PeriodLattice) -> Result<(BigComplex, BigComplex)> {
    let bits = l.bits();
    let s = q_sums(z, l, true)?;
    let f = two_pi_i_over_mu(l);
    let f2 = Complex::with_val(bits, f.square_ref());
    let f3 = Complex::with_val(bits, &f2 * &f);
    let p = Complex::with_val(bits, &f2 * s.value);
    let dp = Complex::with_val(bits, &f3 * s.derivative.expect("derivative requested"));
    Ok((p, dp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Precision;
    use crate::curves::ShortModel;
    use crate::periods::period_lattice;
    use proptest::prelude::*;

    fn lattice(digits: u32) -> PeriodLattice {
        let e = ShortModel::new(4.into(), (-1).into()).unwrap();
        period_lattice(&e, Precision::digits(digits)).unwrap()
    }

    fn cplx(l: &PeriodLattice, re: f64, im: f64) -> BigComplex {
        Complex::with_val(l.bits(), (re, im))
    }

    fn close(a: &BigComplex, b: &BigComplex, eps: &Float) -> bool {
        Float::with_val(a.prec().0, Complex::with_val(a.prec().0, a - b).abs_ref()) < *eps
    }

    #[test]
    fn half_periods_give_roots() {
        let l = lattice(60);
        let bits = l.bits();
        let eps = l.precision().ten_pow_neg(55);
        let half_mu = Complex::with_val(bits, (Float::with_val(bits, l.mu() / 2u32), 0));
        let half_nu = Complex::with_val(bits, (0, Float::with_val(bits, l.nu_im() / 2u32)));
        let half_both = Complex::with_val(bits, &half_mu + &half_nu);
        let [e1, e2, e3] = l.roots();
        for (z, e) in [(&half_mu, e1), (&half_nu, e3), (&half_both, e2)] {
            let (p, dp) = wp_and_prime(z, &l).unwrap();
            assert!(close(&p, &Complex::with_val(bits, e), &eps), "{p} vs {e}");
            assert!(Float::with_val(bits, dp.abs_ref()) < eps);
        }
    }

    #[test]
    fn laurent_leading_term() {
        let l = lattice(40);
        let bits = l.bits();
        let mut prev = Float::with_val(bits, 1);
        for k in 1..6 {
            let z = cplx(&l, 10f64.powi(-k) * 0.6, 10f64.powi(-k) * 0.3);
            let p = wp(&z, &l).unwrap();
            let dev = Float::with_val(bits, (Complex::with_val(bits, z.square_ref()) * &p - 1u32).abs_ref());
            assert!(dev < prev, "z²℘(z) not approaching 1 at step {k}");
            prev = dev;
        }
        assert!(prev < 1e-18);
    }

    #[test]
    fn lattice_point_is_a_pole() {
        let l = lattice(30);
        let z = Complex::with_val(l.bits(), (l.mu(), l.nu_im()));
        assert!(matches!(wp(&z, &l), Err(Error::Pole { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn differential_equation_residual(re in -3.0f64..3.0, im in -3.0f64..3.0) {
            prop_assume!(re.hypot(im) > 1e-3);
            let l = lattice(60);
            let bits = l.bits();
            let z = cplx(&l, re, im);
            let (p, dp) = wp_and_prime(&z, &l).unwrap();
            let cubic = Complex::with_val(bits, p.square_ref()) * &p * 4u32
                - Complex::with_val(bits, &p * 4u32) + 1u32;
            let resid = Complex::with_val(bits, dp.square_ref()) - cubic;
            let scale = Float::with_val(bits, dp.abs_ref()).square() + 1u32;
            let rel = Float::with_val(bits, resid.abs_ref()) / scale;
            prop_assert!(rel < l.precision().ten_pow_neg(45), "residual {}", rel);
        }

        #[test]
        fn even_and_periodic(re in -3.0f64..3.0, im in -3.0f64..3.0, m in -3i32..3, n in -3i32..3) {
            prop_assume!(re.hypot(im) > 1e-3);
            let l = lattice(40);
            let bits = l.bits();
            let z = cplx(&l, re, im);
            let eps = l.precision().ten_pow_neg(28);
            let p = wp(&z, &l).unwrap();
            let neg = Complex::with_val(bits, -&z);
            let scale = Float::with_val(bits, p.abs_ref()) + 1u32;
            let eps = Float::with_val(bits, &eps * &scale);
            prop_assert!(close(&wp(&neg, &l).unwrap(), &p, &eps));
            let shift = Complex::with_val(bits, (Float::with_val(bits, l.mu() * m), Float::with_val(bits, l.nu_im() * n)));
            let moved = Complex::with_val(bits, &z + shift);
            prop_assert!(close(&wp(&moved, &l).unwrap(), &p, &eps));
        }
    }
}
