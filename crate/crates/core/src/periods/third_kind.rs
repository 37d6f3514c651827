use rug::{Complex, Float};

use super::lattice::PeriodLattice;
use super::quadrature::integrate_adaptive;
use super::uniformization::{elliptic_log_rational, short};
use super::weierstrass::wp;
use crate::arith::{BigComplex, BigReal, Precision};
use crate::curves::{CurvePoint, ShortModel};
use crate::error::{Error, Result};

const MAX_HALVINGS: u32 = 30;

/// Horizontal integration path `Im z = height` over one real period.
#[derive(Debug, Clone)]
pub struct ThirdKindPath {
    pub height: BigReal,
    /// Elliptic logarithm of the base point.
    pub log_q: BigComplex,
    /// Vertical distance from the path to the poles at `±log Q`.
    pub clearance: BigReal,
}

fn clearance(l: &PeriodLattice, log_q: &BigComplex, v: &BigReal) -> BigReal {
    let bits = l.bits();
    let period = l.nu_im();
    let mut best: Option<BigReal> = None;
    for pole in [Float::with_val(bits, log_q.imag()), Float::with_val(bits, period - log_q.imag())] {
        let mut d = Float::with_val(bits, v - &pole).abs();
        d = Float::with_val(bits, &d % period);
        let other = Float::with_val(bits, period - &d);
        let d = d.min(&other);
        if best.as_ref().map_or(true, |b| d < *b) {
            best = Some(d);
        }
    }
    best.expect("two poles")
}

fn min_clearance(l: &PeriodLattice) -> BigReal {
    Float::with_val(l.bits(), l.mu() / 100u32)
}

fn affine(q: &CurvePoint) -> Result<(BigReal, BigReal, u32)> {
    match q.coords() {
        Some((x, y)) => Ok((Float::with_val(64, x.as_rational()), Float::with_val(64, y.as_rational()), 0)),
        None => Err(Error::InvalidInput("the base point of β(Q) must be affine".into())),
    }
}

/// Path for `Q`: start at `Im ν / 2` and halve until clear of `±log Q`.
pub fn choose_path(q: &CurvePoint, l: &PeriodLattice) -> Result<ThirdKindPath> {
    affine(q)?;
    let bits = l.bits();
    let log_q = elliptic_log_rational(q, l)?;
    let mut v = Float::with_val(bits, l.nu_im() / 2u32);
    let need = min_clearance(l);
    for _ in 0..MAX_HALVINGS {
        let c = clearance(l, &log_q, &v);
        if c >= need {
            return Ok(ThirdKindPath { height: v, log_q, clearance: c });
        }
        v /= 2u32;
    }
    Err(Error::PathHeight(format!(
        "log Q = {} leaves no height Im ν/2^k clear by μ/100",
        short(&log_q)
    )))
}

fn check_inputs(e: &ShortModel, q: &CurvePoint, l: &PeriodLattice, prec: Precision) -> Result<()> {
    if l.model() != e {
        return Err(Error::InvalidInput(format!("lattice belongs to {}, not {e}", l.model())));
    }
    if prec > l.precision() {
        return Err(Error::InvalidInput(format!("requested {prec} exceeds the lattice's {}", l.precision())));
    }
    if let Some((x, y)) = q.coords() {
        if y.pow(2) != e.cubic(x) {
            return Err(Error::NotOnCurve(format!("({x}, {y}) on {e}")));
        }
    }
    affine(q).map(|_| ())
}

/// `Re ∫_{E(ℝ)} β(Q)` with `β(Q) = y0/(2(x − x0))·dx/y`.
///
/// Each real component is moved to the line `Im z = v`; the residues of
/// `β(Q)` are real, so the real part of the integral does not change.
pub fn third_kind_period(e: &ShortModel, q: &CurvePoint, l: &PeriodLattice, prec: Precision) -> Result<BigReal> {
    check_inputs(e, q, l, prec)?;
    if q.coords().is_some_and(|(_, y)| y.is_zero()) {
        return Ok(Float::new(l.bits()));
    }
    let path = choose_path(q, l)?;
    integrate_line(q, l, &path.height, prec)
}

/// As [`third_kind_period`] along a caller-chosen height.
pub fn third_kind_period_at_height(
    e: &ShortModel,
    q: &CurvePoint,
    l: &PeriodLattice,
    v: &BigReal,
    prec: Precision,
) -> Result<BigReal> {
    check_inputs(e, q, l, prec)?;
    if q.coords().is_some_and(|(_, y)| y.is_zero()) {
        return Ok(Float::new(l.bits()));
    }
    let log_q = elliptic_log_rational(q, l)?;
    let c = clearance(l, &log_q, v);
    if c < min_clearance(l) {
        return Err(Error::PathHeight(format!("height {} passes within {:.3e} of a pole", v.to_f64(), c.to_f64())));
    }
    integrate_line(q, l, v, prec)
}

fn integrate_line(q: &CurvePoint, l: &PeriodLattice, v: &BigReal, prec: Precision) -> Result<BigReal> {
    let bits = l.bits();
    let (x0, y0) = q.coords().expect("checked affine");
    let x0 = Float::with_val(bits, x0.as_rational());
    let half_y0 = Float::with_val(bits, y0.as_rational()) / 2u32;
    let f = |u: &BigReal| -> Result<BigReal> {
        let z = Complex::with_val(bits, (u, v));
        let denom = wp(&z, l)? - &x0;
        let val = Complex::with_val(bits, &half_y0 / denom);
        Ok(Float::with_val(bits, val.real()))
    };
    let zero = Float::new(bits);
    let one_component = integrate_adaptive(&f, &zero, l.mu(), prec)?;
    Ok(one_component * u32::from(l.components()))
}
