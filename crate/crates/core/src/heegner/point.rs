use rug::ops::Pow;
use rug::{Complex, Float, Integer};
use serde::Serialize;

use super::param::{divisor_log, ModularParam};
use crate::arith::{recognize_rational, BigComplex, BigRat, Precision};
use crate::curves::{twist, CurvePoint, ShortModel};
use crate::error::{Error, Result};
use crate::periods::{elliptic_exp, ComplexPoint};
use crate::quadforms::{twisted_divisor, HeegnerDivisor};

/// One term `c⁺(n, h)·q^n` of the principal part of `f`, `n < 0`.
///
/// `h` and `−h` index the same coefficient; list each pair once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrincipalTerm {
    pub n: i64,
    pub h: i64,
    pub coeff: i64,
}

/// Recognized `P_{Δ,r}(f)` on `E_Δ: v² = 4u³ − Δ²g2·u − Δ³g3`.
#[derive(Debug, Clone)]
pub struct HeegnerPoint {
    pub delta: i64,
    pub r: i64,
    pub model: ShortModel,
    pub point: CurvePoint,
    /// Elliptic logarithm on `E` of the chosen branch.
    pub z: BigComplex,
    /// Fractional weights make the divisor image defined only modulo `L/den`;
    /// the branch is `(z_num + iμ + jν)/den` with `(i, j, den)` recorded here.
    pub branch: (u32, u32, u32),
    pub precision: Precision,
}

/// Twisted divisors `Z_{Δ,r}(n, h)` paired with `c⁺(n, h)`.
pub fn heegner_divisors(
    mp: &ModularParam,
    principal: &[PrincipalTerm],
    delta: i64,
    r: i64,
) -> Result<Vec<(i64, HeegnerDivisor)>> {
    principal
        .iter()
        .map(|t| {
            if t.n >= 0 {
                return Err(Error::InvalidInput(format!("principal part index n = {} must be negative", t.n)));
            }
            Ok((t.coeff, twisted_divisor(mp.level(), delta, r, t.n, t.h)?))
        })
        .collect()
}

fn recognition_budget(prec: Precision) -> (Integer, i64) {
    let digits = i64::from(prec.decimal_digits());
    (Integer::from(10).pow((digits * 2 / 5) as u32), digits * 17 / 20)
}

fn small(z: &Float, scale: &Float, tol_digits: i64, prec: Precision) -> bool {
    let bound = Float::with_val(z.prec(), prec.ten_pow_neg(tol_digits) * (Float::with_val(z.prec(), scale.abs_ref()) + 1u32));
    Float::with_val(z.prec(), z.abs_ref()) <= bound
}

/// Rational point of `E_Δ` matching the image `(Δx, Δ^{3/2}y)` of `(x, y) ∈ E(ℂ)`.
///
/// `u = Δx` is recognized by continued fractions; `v` is the exact square root
/// of the right-hand side with the sign of the numeric value.
pub fn recognize_on_twist(
    x: &BigComplex,
    y: &BigComplex,
    delta: i64,
    e: &ShortModel,
    prec: Precision,
) -> Result<Option<CurvePoint>> {
    let (e_delta, map) = twist(e, delta)?;
    let (u, v) = map.apply_complex(x, y);
    let (max_den, tol_digits) = recognition_budget(prec);
    if !small(u.imag(), u.real(), tol_digits, prec) || !small(v.imag(), v.real(), tol_digits, prec) {
        return Ok(None);
    }
    let bits = u.prec().0;
    let tol = Float::with_val(bits, prec.ten_pow_neg(tol_digits) * (Float::with_val(bits, u.real().abs_ref()) + 1u32));
    let Some(ur) = recognize_rational(u.real(), &max_den, &tol) else { return Ok(None) };
    let Some(root) = e_delta.cubic(&ur).sqrt_exact() else { return Ok(None) };
    let vr = if *v.real() < 0 { -root } else { root };
    let gap = Float::with_val(bits, v.real() - vr.as_rational());
    if !small(&gap, v.real(), tol_digits, prec) {
        return Ok(None);
    }
    Ok(Some(CurvePoint::affine(ur, vr)))
}

fn lcm(a: &Integer, b: &Integer) -> Integer {
    a.clone().lcm(b)
}

/// `P_{Δ,r}(f)` on `E_Δ` from the principal part of `f`.
pub fn heegner_point(
    mp: &ModularParam,
    principal: &[PrincipalTerm],
    delta: i64,
    r: i64,
    prec: Precision,
) -> Result<HeegnerPoint> {
    if i64::from(mp.fricke()) * delta <= 0 {
        return Err(Error::InvalidInput(format!("need εΔ > 0, got ε = {}, Δ = {delta}", mp.fricke())));
    }
    let divisors = heegner_divisors(mp, principal, delta, r)?;
    let mut den = Integer::from(1);
    for (c, d) in &divisors {
        for (_, w) in &d.entries {
            let cw = w.clone() * BigRat::from(*c);
            den = lcm(&den, cw.denom());
        }
    }
    let den_u = den.to_u32().ok_or_else(|| Error::InvalidInput(format!("weight denominator {den} too large")))?;

    let lattice = mp.lattice(prec)?;
    let bits = lattice.bits();
    let mut z_num = Complex::new(bits);
    for (c, d) in &divisors {
        let scaled = BigRat::from(*c) * BigRat::from(den.clone()) * BigRat::from(mp.manin());
        z_num += divisor_log(mp, d, prec)? * scaled.as_rational();
    }

    for i in 0..den_u {
        for j in 0..den_u {
            let shift = Complex::with_val(bits, (Float::with_val(bits, lattice.mu() * i), Float::with_val(bits, lattice.nu_im() * j)));
            let z = Complex::with_val(bits, &z_num + shift) / den_u;
            let point = match elliptic_exp(&z, &lattice)? {
                ComplexPoint::Infinity => Some(CurvePoint::Infinity),
                ComplexPoint::Affine { x, y } => recognize_on_twist(&x, &y, delta, mp.short(), prec)?,
            };
            if let Some(point) = point {
                let (model, _) = twist(mp.short(), delta)?;
                if !crate::curves::Curve::on_curve(&model, &point) {
                    return Err(Error::CurveEquation(format!("Δ = {delta}: recognized {point:?} is not on {model}")));
                }
                return Ok(HeegnerPoint { delta, r, model, point, z, branch: (i, j, den_u), precision: prec });
            }
        }
    }
    Err(Error::Recognition { what: format!("P_(Δ={delta}, r={r})"), digits: prec.decimal_digits() })
}
