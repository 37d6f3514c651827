use rug::ops::Pow;
use rug::{Float, Integer};

use super::diff::{find_t, FindT};
use crate::arith::{recognize_quarter_integer, recognize_rational, BigRat, BigReal, Precision};
use crate::curves::{minimal_twist_model, twist, CurvePoint, LongModel, Model, ModelMap, ShortModel};
use crate::error::{Error, Result};
use crate::periods::{period_lattice, third_kind_period, PeriodLattice};

/// A published value of `c⁺(Δ, r)`, with the number of significant decimals it carries.
#[derive(Debug, Clone)]
pub struct PlusCoefficient {
    pub delta: i64,
    pub r: i64,
    pub value: BigReal,
    pub digits: u32,
}

/// A coefficient/period difference and the quantities it was built from.
#[derive(Debug, Clone)]
pub struct Difference {
    pub value: BigReal,
    pub recognized: Option<BigRat>,
    /// `Some` when the value is within tolerance of `ℤ/4`.
    pub quarter_integer: Option<BigRat>,
    /// `Ω(E_Δ)`.
    pub omega: BigReal,
    /// The real period of the third-kind differential.
    pub period: BigReal,
    pub t: Option<BigRat>,
    pub tolerance: BigReal,
}

/// Real period of `α̲(P)` on `W_Δ` and the `Ω(E_Δ)` it is measured against.
#[derive(Debug, Clone)]
pub struct PeriodWm {
    pub period: BigReal,
    pub omega: BigReal,
    pub find_t: Option<FindT>,
    pub t: BigRat,
}

/// Tolerance and denominator bound for recognizing `Δ·c⁺ − (…)/Ω`.
///
/// The error in `Δ·c⁺` is about `Δ·10^(−digits)`, so the bound on admissible
/// denominators shrinks with it.
pub fn coefficient_tolerance(delta: i64, digits: u32, prec: Precision) -> (BigReal, Integer) {
    let bits = prec.bits();
    let floor = prec.ten_pow_neg(i64::from(prec.decimal_digits() / 2));
    let coeff_err = prec.ten_pow_neg(i64::from(digits) - 1) * Float::with_val(bits, delta.unsigned_abs());
    let tol = if coeff_err > floor { coeff_err } else { floor };
    let cap = Integer::from(10).pow(12u32);
    let bound = Float::with_val(bits, prec.ten_pow_neg(3) / &tol).sqrt().floor();
    let max_den = bound.to_integer().map_or(cap.clone(), |b| b.min(cap).max(Integer::from(1)));
    (tol, max_den)
}

fn short_target(map: &ModelMap) -> Result<&ShortModel> {
    match map.target() {
        Model::Short(e) => Ok(e),
        _ => Err(Error::ModelInconsistency("the model map must end on a short model".into())),
    }
}

fn omega_of(l: &PeriodLattice, prec: Precision) -> BigReal {
    Float::with_val(prec.bits(), l.real_period())
}

/// `Re ∫_{W(ℝ)} α̲(P)` for an explicit shift `t`.
///
/// Pulled back to the short model the kernel of `δ_t` keeps no constant term,
/// so the period is `Θ(E_Δ, P) + (t/2)·Re∫ω_W` with `ω_W = u·ω_{E_Δ}`.
pub fn period_wm_with_t(w: &LongModel, map: &ModelMap, p: &CurvePoint, t: &BigRat, prec: Precision) -> Result<PeriodWm> {
    if *map.source() != Model::Long(w.clone()) {
        return Err(Error::ModelInconsistency("the model map does not start on W".into()));
    }
    let e = short_target(map)?;
    let l = period_lattice(e, prec)?;
    let q = map.apply(p);
    let theta = third_kind_period(e, &q, &l, prec)?;
    let omega = omega_of(&l, prec);
    let shift = (t * map.scale()) / BigRat::from(2);
    let period = Float::with_val(prec.bits(), &theta + &omega * shift.to_real(prec));
    Ok(PeriodWm { period, omega, find_t: None, t: t.clone() })
}

/// `Re ∫_{W(ℝ)} α̲(P)` with the pole-free `t`.
pub fn period_wm(w: &LongModel, map: &ModelMap, p: &CurvePoint, prec: Precision) -> Result<PeriodWm> {
    let ft = find_t(w, p)?;
    let mut out = period_wm_with_t(w, map, p, &ft.t, prec)?;
    out.find_t = Some(ft);
    Ok(out)
}

fn check_sign(coeff: &PlusCoefficient, eps: i8) -> Result<()> {
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidInput(format!("ε = {eps} must be ±1")));
    }
    if i64::from(eps) * coeff.delta <= 0 {
        return Err(Error::InvalidInput(format!("ε·Δ must be positive (ε = {eps}, Δ = {})", coeff.delta)));
    }
    Ok(())
}

fn assemble(
    coeff: &PlusCoefficient,
    eps: i8,
    manin: i64,
    period: BigReal,
    omega: BigReal,
    t: Option<BigRat>,
    prec: Precision,
) -> Difference {
    let bits = prec.bits();
    let lhs = Float::with_val(bits, &coeff.value * coeff.delta);
    let rhs = Float::with_val(bits, &period * (i64::from(eps) * manin)) / &omega;
    let value = lhs - rhs;
    let (tol, max_den) = coefficient_tolerance(coeff.delta, coeff.digits, prec);
    let recognized = recognize_rational(&value, &max_den, &tol);
    let quarter_integer = recognize_quarter_integer(&value, &tol);
    Difference { value, recognized, quarter_integer, omega, period, t, tolerance: tol }
}

/// `Δ·c⁺(Δ, r) − (ε·c_E/Ω(E_Δ))·Re∫_{E_Δ(ℝ)} β(P)` for `P` on `E_Δ`.
pub fn difference_raw(
    base: &ShortModel,
    coeff: &PlusCoefficient,
    p: &CurvePoint,
    eps: i8,
    manin: i64,
    prec: Precision,
) -> Result<Difference> {
    check_sign(coeff, eps)?;
    let (e, _) = twist(base, coeff.delta)?;
    let l = period_lattice(&e, prec)?;
    let period = third_kind_period(&e, p, &l, prec)?;
    let omega = omega_of(&l, prec);
    Ok(assemble(coeff, eps, manin, period, omega, None, prec))
}

/// As [`difference_raw`] with `α̲(P)` on the minimal model `W_Δ`, `P` on `W_Δ`.
pub fn difference_wm(
    base: &ShortModel,
    coeff: &PlusCoefficient,
    p: &CurvePoint,
    eps: i8,
    manin: i64,
    prec: Precision,
) -> Result<Difference> {
    let (w, map) = minimal_twist_model(base, coeff.delta)?;
    difference_wm_on(&w, &map, coeff, p, eps, manin, prec)
}

/// As [`difference_wm`] on a given minimal model and its map to `E_Δ`.
pub fn difference_wm_on(
    w: &LongModel,
    map: &ModelMap,
    coeff: &PlusCoefficient,
    p: &CurvePoint,
    eps: i8,
    manin: i64,
    prec: Precision,
) -> Result<Difference> {
    check_sign(coeff, eps)?;
    let pw = period_wm(w, map, p, prec)?;
    Ok(assemble(coeff, eps, manin, pw.period, pw.omega, Some(pw.t), prec))
}
