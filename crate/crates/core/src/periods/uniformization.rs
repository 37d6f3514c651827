use rug::{Complex, Float};

use super::lattice::{period_lattice, PeriodLattice};
use super::weierstrass::{reduce_unit, wp, wp_and_prime};
use crate::arith::{BigComplex, BigReal, Precision};
use crate::curves::CurvePoint;
use crate::error::{Error, Result};

/// Point of `E(ℂ)` on the short model of the lattice.
#[derive(Debug, Clone)]
pub enum ComplexPoint {
    Infinity,
    Affine { x: BigComplex, y: BigComplex },
}

const SEED_DIGITS: u32 = 30;

/// `z ↦ (℘(z), ℘′(z))`, sending lattice points to infinity.
pub fn elliptic_exp(z: &BigComplex, l: &PeriodLattice) -> Result<ComplexPoint> {
    match wp_and_prime(z, l) {
        Ok((x, y)) => Ok(ComplexPoint::Affine { x, y }),
        Err(Error::Pole { .. }) => Ok(ComplexPoint::Infinity),
        Err(e) => Err(e),
    }
}

/// Representative of `z mod L` in `[0, μ) × [0, Im ν)`.
pub fn reduce_mod_lattice(z: &BigComplex, l: &PeriodLattice) -> BigComplex {
    let bits = l.bits();
    let w = reduce_unit(z, l);
    let mut re = Float::with_val(bits, w.real() * l.mu());
    let mut im = Float::with_val(bits, w.imag() * l.mu());
    if re < 0 {
        re += l.mu();
    }
    if im < 0 {
        im += l.nu_im();
    }
    if re >= *l.mu() {
        re -= l.mu();
    }
    if im >= *l.nu_im() {
        im -= l.nu_im();
    }
    Complex::with_val(bits, (re, im))
}

pub(crate) fn short(z: &BigComplex) -> String {
    format!("{:.12e} + {:.12e}i", z.real().to_f64(), z.imag().to_f64())
}

fn abs(z: &BigComplex) -> BigReal {
    Float::with_val(z.prec().0, z.abs_ref())
}

fn at(l: &PeriodLattice, re: &BigReal, im: &BigReal) -> BigComplex {
    Complex::with_val(l.bits(), (re, im))
}

/// Bisection for `℘(t + i·h) = x` on `t ∈ (lo, hi)` where `℘` is real and monotone.
fn bisect(l: &PeriodLattice, h: &BigReal, mut lo: BigReal, mut hi: BigReal, x: &BigReal, increasing: bool) -> Result<BigReal> {
    let bits = l.bits();
    for _ in 0..(bits as usize).min(100) {
        let mid = Float::with_val(bits, &lo + &hi) / 2u32;
        let v = wp(&at(l, &mid, h), l)?;
        if (*v.real() < *x) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Float::with_val(bits, lo + hi) / 2u32)
}

/// Seed for a real point, at the seed lattice's precision.
fn real_seed(s: &PeriodLattice, x: &BigReal, y_positive: bool) -> Result<Option<BigComplex>> {
    let bits = s.bits();
    let [e1, e2, e3] = s.roots();
    let half_mu = Float::with_val(bits, s.mu() / 2u32);
    let zero = Float::new(bits);
    if x >= e1 {
        // ℘ decreases from +∞ to e1 on (0, μ/2]
        let mut lo = Float::with_val(bits, s.mu() / 4u32);
        for _ in 0..400 {
            match wp(&at(s, &lo, &zero), s) {
                Ok(v) if *v.real() > *x => break,
                _ => lo /= 2u32,
            }
        }
        let t = bisect(s, &zero, lo, half_mu, x, false)?;
        let re = if y_positive { Float::with_val(bits, s.mu() - &t) } else { t };
        return Ok(Some(at(s, &re, &zero)));
    }
    if x >= e3 && x <= e2 {
        // ℘ increases from e3 to e2 on ν/2 + [0, μ/2]
        let h = Float::with_val(bits, s.nu_im() / 2u32);
        let t = bisect(s, &h, zero, half_mu, x, true)?;
        let re = if y_positive { t } else { Float::with_val(bits, s.mu() - &t) };
        return Ok(Some(at(s, &re, &h)));
    }
    Ok(None)
}

/// Seed for a general point: best cell of a grid, then damped Newton.
fn grid_seed(s: &PeriodLattice, x: &BigComplex) -> Result<BigComplex> {
    let bits = s.bits();
    const CELLS: u32 = 12;
    let mut best: Option<(BigReal, BigComplex)> = None;
    for i in 0..CELLS {
        for j in 0..CELLS {
            let re = Float::with_val(bits, s.mu() * (2 * i + 1)) / (2 * CELLS);
            let im = Float::with_val(bits, s.nu_im() * (2 * j + 1)) / (2 * CELLS);
            let z = at(s, &re, &im);
            let d = abs(&Complex::with_val(bits, wp(&z, s)? - x));
            if best.as_ref().map_or(true, |(b, _)| d < *b) {
                best = Some((d, z));
            }
        }
    }
    let (mut resid, mut z) = best.expect("nonempty grid");
    for _ in 0..200 {
        let (p, dp) = wp_and_prime(&z, s)?;
        let mut step = Complex::with_val(bits, (p - x) / dp);
        let mut improved = false;
        for _ in 0..30 {
            let cand = Complex::with_val(bits, &z - &step);
            if let Ok(v) = wp(&cand, s) {
                let r = abs(&Complex::with_val(bits, v - x));
                if r < resid {
                    z = cand;
                    resid = r;
                    improved = true;
                    break;
                }
            }
            step /= 2u32;
        }
        if !improved || abs(&step) < 1e-25 {
            break;
        }
    }
    Ok(z)
}

fn half_period(l: &PeriodLattice, root: usize) -> BigComplex {
    let bits = l.bits();
    let re = Float::with_val(bits, l.mu() / 2u32);
    let im = Float::with_val(bits, l.nu_im() / 2u32);
    let zero = Float::new(bits);
    match root {
        0 => at(l, &re, &zero),
        1 => at(l, &re, &im),
        _ => at(l, &zero, &im),
    }
}

/// `z ∈ ℂ/L` with `(℘(z), ℘′(z)) = (x, y)`, in the fundamental domain.
pub fn elliptic_log(x: &BigComplex, y: &BigComplex, l: &PeriodLattice) -> Result<BigComplex> {
    let bits = l.bits();
    let prec = l.precision();
    let g2 = Float::with_val(bits, l.model().g2.as_rational());
    let g3 = Float::with_val(bits, l.model().g3.as_rational());
    let x = Complex::with_val(bits, x);
    let y = Complex::with_val(bits, y);

    let size = Float::with_val(bits, abs(&x) + 1u32);
    let size32 = Float::with_val(bits, size.clone().sqrt() * &size);
    let cubic = Complex::with_val(bits, x.square_ref()) * &x * 4u32 - Complex::with_val(bits, &x * &g2) - &g3;
    let resid = abs(&(Complex::with_val(bits, y.square_ref()) - cubic));
    let loose = prec.ten_pow_neg(i64::from(prec.decimal_digits() / 2));
    if resid > Float::with_val(bits, &loose * size.clone().square() * &size) {
        return Err(Error::NotOnCurve(format!(
            "({}, {}) misses y² = 4x³ − g2·x − g3 by {:.3e}",
            short(&x),
            short(&y),
            resid.to_f64()
        )));
    }

    // Close to 2-torsion ℘′ vanishes and Newton on ℘ degenerates; use ℘″ = 6℘² − g2/2 instead.
    let near_torsion = prec.ten_pow_neg(i64::from(prec.decimal_digits() / 3));
    if abs(&y) < Float::with_val(bits, &near_torsion * &size32) {
        let (k, e) = l
            .roots()
            .iter()
            .enumerate()
            .min_by(|a, b| {
                let da = abs(&Complex::with_val(bits, &x - a.1));
                let db = abs(&Complex::with_val(bits, &x - b.1));
                da.partial_cmp(&db).expect("finite")
            })
            .expect("three roots");
        let second = Float::with_val(bits, e.square_ref()) * 6u32 - Float::with_val(bits, &g2 / 2u32);
        let z = Complex::with_val(bits, half_period(l, k) + Complex::with_val(bits, &y / second));
        return Ok(reduce_mod_lattice(&z, l));
    }

    let seed_lattice = period_lattice(l.model(), Precision::digits(SEED_DIGITS))?;
    let sb = seed_lattice.bits();
    let tiny = Float::with_val(bits, &loose * &size32);
    let is_real = abs(&Complex::with_val(bits, x.imag())) < tiny && abs(&Complex::with_val(bits, y.imag())) < tiny;
    let seed = if is_real {
        let xr = Float::with_val(sb, x.real());
        real_seed(&seed_lattice, &xr, *y.real() > 0)?
    } else {
        None
    };
    let mut z = match seed {
        Some(z) => z,
        None => grid_seed(&seed_lattice, &Complex::with_val(sb, &x))?,
    };
    let (_, dp) = wp_and_prime(&z, &seed_lattice)?;
    let ys = Complex::with_val(sb, &y);
    if abs(&Complex::with_val(sb, &dp + &ys)) < abs(&Complex::with_val(sb, &dp - &ys)) {
        z = -z;
    }

    let mut z = Complex::with_val(bits, z);
    let stop = prec.ten_pow_neg(i64::from(prec.decimal_digits()) + 8);
    let mut converged = false;
    for _ in 0..60 {
        let (p, dp) = wp_and_prime(&z, l)?;
        let step = Complex::with_val(bits, (p - &x) / dp);
        z -= &step;
        if abs(&step) < Float::with_val(bits, &stop * l.mu()) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::LogNonConvergence(format!(
            "Newton iteration for x = {} stalled",
            short(&x)
        )));
    }
    let (_, dp) = wp_and_prime(&z, l)?;
    if abs(&Complex::with_val(bits, &dp + &y)) < abs(&Complex::with_val(bits, &dp - &y)) {
        z = -z;
    }
    Ok(reduce_mod_lattice(&z, l))
}

/// Elliptic logarithm of a rational point of the lattice's short model.
pub fn elliptic_log_rational(p: &CurvePoint, l: &PeriodLattice) -> Result<BigComplex> {
    let bits = l.bits();
    match p {
        CurvePoint::Infinity => Ok(Complex::new(bits)),
        CurvePoint::Affine { x, y } => {
            let x = Complex::with_val(bits, x.as_rational());
            let y = Complex::with_val(bits, y.as_rational());
            elliptic_log(&x, &y, l)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{Curve, ShortModel};
    use proptest::prelude::*;

    fn e37() -> ShortModel {
        ShortModel::new(4.into(), (-1).into()).unwrap()
    }

    fn lattice(digits: u32) -> PeriodLattice {
        period_lattice(&e37(), Precision::digits(digits)).unwrap()
    }

    /// Distance from `a − b` to the nearest lattice point.
    fn lattice_distance(a: &BigComplex, b: &BigComplex, l: &PeriodLattice) -> BigReal {
        let bits = l.bits();
        let d = reduce_mod_lattice(&Complex::with_val(bits, a - b), l);
        let mut best = abs(&d);
        for (m, n) in [(1, 0), (0, 1), (1, 1)] {
            let corner = at(l, &Float::with_val(bits, l.mu() * m), &Float::with_val(bits, l.nu_im() * n));
            let dd = abs(&Complex::with_val(bits, &d - corner));
            if dd < best {
                best = dd;
            }
        }
        best
    }

    #[test]
    fn two_torsion_logs() {
        let l = lattice(50);
        let bits = l.bits();
        let zero = Complex::new(bits);
        let eps = l.precision().ten_pow_neg(40);
        for (k, e) in l.roots().iter().enumerate() {
            let z = elliptic_log(&Complex::with_val(bits, e), &zero, &l).unwrap();
            assert!(lattice_distance(&z, &half_period(&l, k), &l) < eps, "root {k}");
        }
        let z = elliptic_log(&Complex::with_val(bits, &l.roots()[0]), &zero, &l).unwrap();
        let want = Complex::with_val(bits, (Float::with_val(bits, l.mu() / 2u32), 0));
        assert!(abs(&Complex::with_val(bits, z - want)) < eps);
    }

    #[test]
    fn exp_log_round_trip_on_generator() {
        let l = lattice(80);
        let bits = l.bits();
        let p = CurvePoint::from_ints(0, -1);
        let z = elliptic_log_rational(&p, &l).unwrap();
        assert!(*z.real() >= 0 && *z.real() < *l.mu());
        assert!(*z.imag() >= 0 && *z.imag() < *l.nu_im());
        let ComplexPoint::Affine { x, y } = elliptic_exp(&z, &l).unwrap() else { panic!("infinity") };
        let eps = l.precision().ten_pow_neg(70);
        assert!(abs(&x) < eps);
        assert!(abs(&Complex::with_val(bits, y + 1u32)) < eps);
    }

    #[test]
    fn lattice_point_maps_to_infinity() {
        let l = lattice(30);
        let z = Complex::with_val(l.bits(), (l.mu(), 0));
        assert!(matches!(elliptic_exp(&z, &l).unwrap(), ComplexPoint::Infinity));
    }

    #[test]
    fn log_is_a_homomorphism_on_multiples() {
        let l = lattice(60);
        let e = e37();
        let g = CurvePoint::from_ints(0, -1);
        let eps = l.precision().ten_pow_neg(45);
        let zg = elliptic_log_rational(&g, &l).unwrap();
        let mut acc = CurvePoint::Infinity;
        let mut zacc = Complex::new(l.bits());
        for k in 1..=6 {
            acc = e.add(&acc, &g);
            zacc += &zg;
            let z = elliptic_log_rational(&acc, &l).unwrap();
            assert!(lattice_distance(&z, &zacc, &l) < eps, "k = {k}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn round_trip_random(re in 0.05f64..0.95, im in 0.05f64..0.95) {
            let l = lattice(50);
            let bits = l.bits();
            let z = at(&l, &Float::with_val(bits, l.mu() * re), &Float::with_val(bits, l.nu_im() * im));
            let ComplexPoint::Affine { x, y } = elliptic_exp(&z, &l).unwrap() else { panic!() };
            let back = elliptic_log(&x, &y, &l).unwrap();
            prop_assert!(lattice_distance(&back, &z, &l) < l.precision().ten_pow_neg(40));
        }

        #[test]
        fn sum_of_logs(a in 0.05f64..0.95, b in 0.05f64..0.95, c in 0.05f64..0.95, d in 0.05f64..0.95) {
            let l = lattice(50);
            let bits = l.bits();
            let z1 = at(&l, &Float::with_val(bits, l.mu() * a), &Float::with_val(bits, l.nu_im() * b));
            let z2 = at(&l, &Float::with_val(bits, l.mu() * c), &Float::with_val(bits, l.nu_im() * d));
            let sum = Complex::with_val(bits, &z1 + &z2);
            prop_assume!(lattice_distance(&sum, &Complex::new(bits), &l) > 1e-3);
            let (ComplexPoint::Affine { x: x1, y: y1 }, ComplexPoint::Affine { x: x2, y: y2 }) =
                (elliptic_exp(&z1, &l).unwrap(), elliptic_exp(&z2, &l).unwrap()) else { panic!() };
            prop_assume!(abs(&Complex::with_val(bits, &x1 - &x2)) > 1e-6);
            // chord through the two points on y² = 4x³ − g2 x − g3
            let lambda = Complex::with_val(bits, &y1 - &y2) / Complex::with_val(bits, &x1 - &x2);
            let x3 = Complex::with_val(bits, lambda.square_ref()) / 4u32 - &x1 - &x2;
            let y3 = -(Complex::with_val(bits, &lambda * Complex::with_val(bits, &x3 - &x1)) + &y1);
            let z3 = elliptic_log(&x3, &y3, &l).unwrap();
            prop_assert!(lattice_distance(&z3, &sum, &l) < l.precision().ten_pow_neg(35));
        }
    }
}
