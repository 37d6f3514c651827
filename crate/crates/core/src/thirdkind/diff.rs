use rug::ops::RemRounding;
use rug::Integer;

use crate::arith::BigRat;
use crate::curves::{Curve, CurvePoint, LongModel, ShortModel};
use crate::error::{Error, Result};

/// Model carrying a third-kind differential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiffModel {
    /// `y² = 4x³ − g2x − g3` with `ω = dx/y`.
    Short(ShortModel),
    /// Integral model with `ω_W = dx/(2y + A1x + A3)`.
    Long(LongModel),
}

/// `scale · (k/(x − x0) + t) · ω` where `k` is `y0` on a short model and
/// `2y0 + A1x0 + A3` on a long model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThirdKindDiff {
    pub model: DiffModel,
    pub base: CurvePoint,
    pub t: BigRat,
    pub scale: BigRat,
}

impl ThirdKindDiff {
    fn new(model: DiffModel, base: &CurvePoint, t: BigRat, scale: BigRat) -> Result<Self> {
        let on = match &model {
            DiffModel::Short(m) => m.on_curve(base),
            DiffModel::Long(m) => m.on_curve(base),
        };
        if base.is_infinity() {
            return Err(Error::InvalidInput("third-kind differential needs an affine base point".into()));
        }
        if !on {
            return Err(Error::NotOnCurve(format!("{base:?}")));
        }
        Ok(ThirdKindDiff { model, base: base.clone(), t, scale })
    }

    fn coords(&self) -> (&BigRat, &BigRat) {
        self.base.coords().expect("affine by construction")
    }

    /// `k`: `y0`, or `2y0 + A1x0 + A3`; also the value of `ω`'s denominator at `Q`.
    pub fn kernel_numerator(&self) -> BigRat {
        let (x0, y0) = self.coords();
        match &self.model {
            DiffModel::Short(_) => y0.clone(),
            DiffModel::Long(m) => {
                BigRat::from(2) * y0.clone() + BigRat::from(m.a1().clone()) * x0.clone() + BigRat::from(m.a3().clone())
            }
        }
    }

    /// The rational function `f` with `self = f·ω`, at `x`.
    pub fn coefficient_at(&self, x: &BigRat) -> Result<BigRat> {
        let (x0, _) = self.coords();
        let dx = x - x0;
        if dx.is_zero() {
            return Err(Error::InvalidInput(format!("x = {x} is a pole")));
        }
        Ok(&self.scale * &(self.kernel_numerator() / dx + self.t.clone()))
    }

    /// Residues at `Q` and `−Q`.
    ///
    /// Near `±Q` the local parameter is `x − x0` and `ω = dx/Y` with `Y(±Q) = ±k`.
    pub fn residues(&self) -> (BigRat, BigRat) {
        let k = self.kernel_numerator();
        if k.is_zero() || self.scale.is_zero() {
            return (BigRat::zero(), BigRat::zero());
        }
        let at_q = &self.scale * &(&k / &k);
        let at_minus_q = &self.scale * &(&k / &(-k.clone()));
        (at_q, at_minus_q)
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero() || (self.kernel_numerator().is_zero() && self.t.is_zero())
    }
}

/// `β(Q) = y0/(2(x − x0)) · dx/y`, residue divisor `½((Q) − (−Q))`.
pub fn beta(e: &ShortModel, q: &CurvePoint) -> Result<ThirdKindDiff> {
    ThirdKindDiff::new(DiffModel::Short(e.clone()), q, BigRat::zero(), BigRat::new(1, 2)?)
}

/// `δ_t(P) = ((2y0 + A1x0 + A3)/(x − x0) + t) · ω_W`, residue divisor `(P) − (−P)`.
pub fn delta_t(w: &LongModel, p: &CurvePoint, t: BigRat) -> Result<ThirdKindDiff> {
    ThirdKindDiff::new(DiffModel::Long(w.clone()), p, t, BigRat::one())
}

/// Data of the pole-free choice of `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FindT {
    pub t: BigRat,
    pub s: Integer,
    pub d_prime: Integer,
    pub b_prime: Integer,
    /// `(2c − a·s)/d'`.
    pub u: Integer,
    /// `2y0/(x − x0) + t = (u + b's·x)/(b·x − a)` with coprime contents.
    pub numerator: (Integer, Integer),
    pub denominator: (Integer, Integer),
}

/// `t = s/d'` with `0 ≤ s < d'` and `2c ≡ a·s (mod d')`, for `x0 = a/b`, `y0 = c/d`.
pub fn find_t(w: &LongModel, p: &CurvePoint) -> Result<FindT> {
    let Some((x0, y0)) = p.coords() else {
        return Err(Error::InvalidInput("find_t needs an affine point".into()));
    };
    if !w.on_curve(p) {
        return Err(Error::NotOnCurve(format!("({x0}, {y0}) on {w}")));
    }
    let (a, b) = (x0.numer().clone(), x0.denom().clone());
    let (c, d) = (y0.numer().clone(), y0.denom().clone());
    if !d.is_divisible(&b) {
        return Err(Error::ModelInconsistency(format!("denominator {b} of x0 does not divide denominator {d} of y0")));
    }
    let d_prime = Integer::from(&d / &b);
    if !b.is_divisible(&d_prime) {
        return Err(Error::ModelInconsistency(format!("d' = {d_prime} does not divide b = {b}")));
    }
    let b_prime = Integer::from(&b / &d_prime);
    let two_c = Integer::from(&c * 2u32);
    let s = if d_prime == 1 {
        Integer::new()
    } else {
        let a_inv = a.clone().invert(&d_prime).map_err(|_| {
            Error::ModelInconsistency(format!("a = {a} is not invertible modulo d' = {d_prime}"))
        })?;
        (two_c.clone() * a_inv).rem_euc(&d_prime)
    };
    let rest = two_c - Integer::from(&a * &s);
    debug_assert!(rest.is_divisible(&d_prime));
    let u = rest / &d_prime;
    let slope = Integer::from(&b_prime * &s);
    let numerator = (u.clone(), slope.clone());
    let denominator = (b.clone(), Integer::from(-&a));
    let num_content = u.clone().gcd(&slope);
    let den_content = b.clone().gcd(&a);
    if num_content.clone().gcd(&den_content) != 1 {
        return Err(Error::ModelInconsistency(format!("cleared form of δ_t at {p:?} has a common content")));
    }
    let t = BigRat::new(s.clone(), d_prime.clone())?;
    Ok(FindT { t, s, d_prime, b_prime, u, numerator, denominator })
}

/// `α̲(P) = ½·δ_t(P)` with the pole-free `t`: residues `±½` at `±P`.
pub fn wm_differential(w: &LongModel, p: &CurvePoint) -> Result<(ThirdKindDiff, FindT)> {
    let ft = find_t(w, p)?;
    let mut d = delta_t(w, p, ft.t.clone())?;
    d.scale = BigRat::new(1, 2)?;
    Ok((d, ft))
}
