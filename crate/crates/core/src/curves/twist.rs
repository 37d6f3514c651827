use rug::{Complex, Float};

use crate::arith::{BigComplex, BigRat};
use crate::error::{Error, Result};

use super::map::{Model, ModelMap};
use super::model::{CurvePoint, LongModel, ShortModel};

/// The isomorphism `E → E_Δ`, `(x, y) ↦ (Δx, Δ^{3/2}·y)`, defined over `ℚ(√Δ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistMap {
    delta: i64,
}

impl TwistMap {
    pub fn delta(&self) -> i64 {
        self.delta
    }

    /// Image of a point of `E(ℚ(√Δ))` with rational `x` and `y = η·√Δ`,
    /// given as `(x, η)`. The image `(Δx, Δ²η)` is rational.
    pub fn apply_twisted(&self, x: &BigRat, eta: &BigRat) -> CurvePoint {
        let d = BigRat::from(self.delta);
        CurvePoint::affine(&d * x, &d * &d * eta.clone())
    }

    /// Inverse of [`TwistMap::apply_twisted`]: `(u, v) ↦ (u/Δ, v/Δ²)` as `(x, η)`.
    pub fn pull_back_twisted(&self, u: &BigRat, v: &BigRat) -> (BigRat, BigRat) {
        let d = BigRat::from(self.delta);
        (u / &d, v / &(&d * &d))
    }

    /// Numeric image of a complex point `(x, y)`; `√Δ` is the principal root.
    pub fn apply_complex(&self, x: &BigComplex, y: &BigComplex) -> (BigComplex, BigComplex) {
        let prec = x.prec().0.max(y.prec().0);
        let d = Complex::with_val(prec, self.delta);
        let sqrt_d = d.clone().sqrt();
        let u = Complex::with_val(prec, x * &d);
        let v = Complex::with_val(prec, y * &d) * sqrt_d;
        (u, v)
    }

    /// Real `Δ^{3/2}` for positive `Δ`.
    pub fn y_scale(&self, bits: u32) -> Float {
        Float::with_val(bits, self.delta).sqrt() * self.delta
    }
}

/// Quadratic twist `E_Δ: v² = 4u³ − Δ²g2·u − Δ³g3` and the map `E → E_Δ`.
pub fn twist(e: &ShortModel, delta: i64) -> Result<(ShortModel, TwistMap)> {
    if delta == 0 {
        return Err(Error::InvalidInput("twist by Δ = 0".into()));
    }
    let d = BigRat::from(delta);
    let g2 = d.pow(2) * e.g2.clone();
    let g3 = d.pow(3) * e.g3.clone();
    Ok((ShortModel::new(g2, g3)?, TwistMap { delta }))
}

fn e37_short() -> ShortModel {
    ShortModel { g2: BigRat::from(4), g3: BigRat::from(-1) }
}

/// Minimal Weierstrass model `W_Δ` of the twist `E_Δ` of `y² = 4x³ − 4x + 1`
/// (conductor 37), together with the map `W_Δ → E_Δ`.
///
/// The three congruence classes of positive fundamental discriminants:
/// - `Δ ≡ 1 (mod 4)`: `y² + y = x³ − Δ²x + (Δ³ − 1)/4`, `(x, y) ↦ (x, 2y + 1)`;
/// - `Δ ≡ 4 (mod 8)`: `y² = x³ − Δ²x + Δ³/4`, `(x, y) ↦ (x, 2y)`;
/// - `Δ ≡ 0 (mod 8)`: `y² = x³ − Δ²x/16 + Δ³/256`, `(x, y) ↦ (4x, 16y)`.
pub fn minimal_twist_model(base: &ShortModel, delta: i64) -> Result<(LongModel, ModelMap)> {
    if *base != e37_short() {
        return Err(Error::UnsupportedFamily(format!("twists of {base}")));
    }
    if delta <= 0 {
        return Err(Error::InvalidInput(format!("Δ = {delta} must be positive")));
    }
    let (e_delta, _) = twist(base, delta)?;
    let d = rug::Integer::from(delta);
    let d2 = d.clone() * &d;
    let d3 = d2.clone() * &d;
    let (coeffs, u, t) = match delta.rem_euclid(8) {
        1 | 5 => {
            let a6 = (d3 - 1u32) / 4u32;
            ([0.into(), 0.into(), 1.into(), -d2, a6], 1, BigRat::new(1, 2)?)
        }
        4 => ([0.into(), 0.into(), 0.into(), -d2, d3 / 4u32], 1, BigRat::zero()),
        0 => ([0.into(), 0.into(), 0.into(), -(d2 / 16u32), d3 / 256u32], 2, BigRat::zero()),
        _ => {
            return Err(Error::InvalidInput(format!(
                "Δ = {delta} is not a positive fundamental discriminant"
            )))
        }
    };
    let w = LongModel::new(coeffs)?;
    let map = ModelMap::new(
        Model::Long(w.clone()),
        Model::Short(e_delta),
        BigRat::from(u),
        BigRat::zero(),
        BigRat::zero(),
        t,
    )?;
    Ok((w, map))
}
