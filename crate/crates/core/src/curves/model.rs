use rug::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::BigRat;
use crate::error::{Error, Result};

/// A point on some Weierstrass model; the model is supplied by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: BigRat, y: BigRat },
}

impl CurvePoint {
    pub fn affine(x: BigRat, y: BigRat) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        CurvePoint::Affine { x: x.into(), y: y.into() }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn coords(&self) -> Option<(&BigRat, &BigRat)> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, y } => Some((x, y)),
        }
    }
}

/// General Weierstrass equation `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` with
/// rational coefficients. All group-law arithmetic happens on this form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weierstrass {
    pub a1: BigRat,
    pub a2: BigRat,
    pub a3: BigRat,
    pub a4: BigRat,
    pub a6: BigRat,
}

impl Weierstrass {
    pub fn new(a: [BigRat; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a;
        let w = Weierstrass { a1, a2, a3, a4, a6 };
        if w.discriminant().is_zero() {
            return Err(Error::InvalidInput("singular Weierstrass equation".into()));
        }
        Ok(w)
    }

    pub fn b2(&self) -> BigRat {
        &self.a1 * &self.a1 + BigRat::from(4) * &self.a2
    }

    pub fn b4(&self) -> BigRat {
        BigRat::from(2) * &self.a4 + &self.a1 * &self.a3
    }

    pub fn b6(&self) -> BigRat {
        &self.a3 * &self.a3 + BigRat::from(4) * &self.a6
    }

    pub fn b8(&self) -> BigRat {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        a1 * a1 * a6.clone() + BigRat::from(4) * a2 * a6.clone() - a1 * a3 * a4.clone()
            + a2 * a3 * a3.clone()
            - a4 * a4
    }

    pub fn c4(&self) -> BigRat {
        let b2 = self.b2();
        &b2 * &b2 - BigRat::from(24) * self.b4()
    }

    pub fn c6(&self) -> BigRat {
        let (b2, b4, b6) = (self.b2(), self.b4(), self.b6());
        -(b2.pow(3)) + BigRat::from(36) * &b2 * b4 - BigRat::from(216) * b6
    }

    pub fn discriminant(&self) -> BigRat {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * b8.clone()) - BigRat::from(8) * b4.pow(3) - BigRat::from(27) * &b6 * &b6
            + BigRat::from(9) * &b2 * &b4 * b6
    }

    pub fn j_invariant(&self) -> BigRat {
        self.c4().pow(3) / self.discriminant()
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        let Some((x, y)) = p.coords() else {
            return true;
        };
        let lhs = y * y + &self.a1 * x * y.clone() + &self.a3 * y;
        let rhs = x.pow(3) + &self.a2 * x * x.clone() + &self.a4 * x + self.a6.clone();
        lhs == rhs
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let ny = -y - &self.a1 * x - self.a3.clone();
                CurvePoint::affine(x.clone(), ny)
            }
        }
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1) = match p.coords() {
            None => return q.clone(),
            Some(c) => c,
        };
        let (x2, y2) = match q.coords() {
            None => return p.clone(),
            Some(c) => c,
        };
        let lambda = if x1 != x2 {
            (y2 - y1) / (x2 - x1)
        } else {
            let denom = BigRat::from(2) * y1 + &self.a1 * x1 + self.a3.clone();
            if denom.is_zero() || *q == self.neg(p) {
                return CurvePoint::Infinity;
            }
            let num = BigRat::from(3) * x1 * x1.clone() + BigRat::from(2) * &self.a2 * x1.clone()
                + self.a4.clone()
                - &self.a1 * y1;
            num / denom
        };
        let nu = y1 - &lambda * x1;
        let x3 = &lambda * &lambda + &self.a1 * &lambda - self.a2.clone() - x1 - x2.clone();
        let y3 = -((&lambda + &self.a1) * x3.clone()) - nu - self.a3.clone();
        CurvePoint::affine(x3, y3)
    }

    pub fn mul(&self, n: i64, p: &CurvePoint) -> CurvePoint {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }
}

/// Common interface of the concrete models: each embeds into a rational
/// [`Weierstrass`] equation where the group law is evaluated.
pub trait Curve {
    fn weierstrass(&self) -> Weierstrass;

    /// Coordinates of `p` on the embedded [`Weierstrass`] equation.
    fn embed(&self, p: &CurvePoint) -> CurvePoint {
        p.clone()
    }

    /// Inverse of [`Curve::embed`].
    fn unembed(&self, p: &CurvePoint) -> CurvePoint {
        p.clone()
    }

    fn on_curve(&self, p: &CurvePoint) -> bool {
        self.weierstrass().contains(&self.embed(p))
    }

    fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let w = self.weierstrass();
        self.unembed(&w.add(&self.embed(p), &self.embed(q)))
    }

    fn neg(&self, p: &CurvePoint) -> CurvePoint {
        self.unembed(&self.weierstrass().neg(&self.embed(p)))
    }

    fn smul(&self, n: i64, p: &CurvePoint) -> CurvePoint {
        self.unembed(&self.weierstrass().mul(n, &self.embed(p)))
    }

    fn j_invariant(&self) -> BigRat {
        self.weierstrass().j_invariant()
    }
}

/// `y² = 4x³ − g2·x − g3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortModel {
    pub g2: BigRat,
    pub g3: BigRat,
}

impl ShortModel {
    pub fn new(g2: BigRat, g3: BigRat) -> Result<Self> {
        let m = ShortModel { g2, g3 };
        if m.discriminant().is_zero() {
            return Err(Error::InvalidInput(format!("singular short model {m}")));
        }
        Ok(m)
    }

    /// `g2³ − 27·g3²`; positive exactly when the cubic has three real roots.
    pub fn discriminant(&self) -> BigRat {
        self.g2.pow(3) - BigRat::from(27) * self.g3.pow(2)
    }

    /// `4x³ − g2·x − g3` evaluated exactly.
    pub fn cubic(&self, x: &BigRat) -> BigRat {
        BigRat::from(4) * x.pow(3) - &self.g2 * x - self.g3.clone()
    }
}

impl std::fmt::Display for ShortModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "y^2 = 4x^3 - ({})x - ({})", self.g2, self.g3)
    }
}

impl Curve for ShortModel {
    fn weierstrass(&self) -> Weierstrass {
        let quarter = BigRat::new(1, 4).expect("nonzero");
        Weierstrass {
            a1: BigRat::zero(),
            a2: BigRat::zero(),
            a3: BigRat::zero(),
            a4: -(&self.g2 * &quarter),
            a6: -(&self.g3 * &quarter),
        }
    }

    fn embed(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                CurvePoint::affine(x.clone(), y / &BigRat::from(2))
            }
        }
    }

    fn unembed(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                CurvePoint::affine(x.clone(), y * &BigRat::from(2))
            }
        }
    }
}

/// Integral Weierstrass model `[a1, a2, a3, a4, a6]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct LongModel {
    a: [Integer; 5],
}

impl LongModel {
    pub fn new(a: [Integer; 5]) -> Result<Self> {
        let m = LongModel { a };
        if m.weierstrass_unchecked().discriminant().is_zero() {
            return Err(Error::InvalidInput(format!("singular long model {m}")));
        }
        Ok(m)
    }

    pub fn from_i64(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(Integer::from))
    }

    pub fn a1(&self) -> &Integer {
        &self.a[0]
    }
    pub fn a2(&self) -> &Integer {
        &self.a[1]
    }
    pub fn a3(&self) -> &Integer {
        &self.a[2]
    }
    pub fn a4(&self) -> &Integer {
        &self.a[3]
    }
    pub fn a6(&self) -> &Integer {
        &self.a[4]
    }

    pub fn coefficients(&self) -> &[Integer; 5] {
        &self.a
    }

    pub fn discriminant(&self) -> Integer {
        let d = self.weierstrass().discriminant();
        d.numer().clone()
    }

    pub fn c4(&self) -> Integer {
        self.weierstrass().c4().numer().clone()
    }

    /// Short model `Y² = 4X³ − (c4/12)·X − c6/216` of the same curve.
    pub fn short_model(&self) -> ShortModel {
        let w = self.weierstrass();
        ShortModel::new(w.c4() / BigRat::from(12), w.c6() / BigRat::from(216))
            .expect("nonsingular long model has nonsingular short model")
    }

    fn weierstrass_unchecked(&self) -> Weierstrass {
        let [a1, a2, a3, a4, a6] = self.a.clone().map(BigRat::from);
        Weierstrass { a1, a2, a3, a4, a6 }
    }
}

impl TryFrom<Vec<i64>> for LongModel {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        let a: [i64; 5] = v
            .try_into()
            .map_err(|_| Error::InvalidInput("long model needs 5 coefficients".into()))?;
        LongModel::from_i64(a)
    }
}

impl From<LongModel> for Vec<i64> {
    fn from(m: LongModel) -> Self {
        m.a.iter().map(|c| c.to_i64().expect("coefficient fits i64")).collect()
    }
}

impl std::fmt::Display for LongModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.a;
        write!(f, "[{a1},{a2},{a3},{a4},{a6}]")
    }
}

impl Curve for LongModel {
    fn weierstrass(&self) -> Weierstrass {
        self.weierstrass_unchecked()
    }
}

impl Curve for Weierstrass {
    fn weierstrass(&self) -> Weierstrass {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e37() -> ShortModel {
        ShortModel::new(4.into(), (-1).into()).unwrap()
    }

    fn rat(s: &str) -> BigRat {
        s.parse().unwrap()
    }

    #[test]
    fn generator_on_e37() {
        assert!(e37().on_curve(&CurvePoint::from_ints(0, -1)));
        assert!(e37().on_curve(&CurvePoint::Infinity));
        assert!(!e37().on_curve(&CurvePoint::from_ints(0, 2)));
    }

    #[test]
    fn twelve_twist_point() {
        let e12 = ShortModel::new(576.into(), (-1728).into()).unwrap();
        assert!(e12.on_curve(&CurvePoint::from_ints(1, -34)));
    }

    #[test]
    fn identity_and_inverse() {
        let e = e37();
        let p = CurvePoint::from_ints(0, -1);
        assert_eq!(e.add(&p, &CurvePoint::Infinity), p);
        assert_eq!(e.add(&CurvePoint::Infinity, &p), p);
        assert!(e.add(&p, &e.neg(&p)).is_infinity());
        assert_eq!(e.neg(&e.neg(&p)), p);
    }

    #[test]
    fn doubling_on_e37() {
        let e = e37();
        let p = CurvePoint::from_ints(0, -1);
        let two_p = e.smul(2, &p);
        assert!(e.on_curve(&two_p));
        let (x2, y2) = two_p.coords().unwrap();
        assert_eq!(*x2, BigRat::from(1));
        // Tangent y = 2x - 1: 4x³-4x+1 - (2x-1)² = 4x²(x-1) vanishes to order 2
        // at x = 0, so the third intersection is (1, 1) and 2P is its negative.
        assert_eq!(*y2, BigRat::from(-1));
        assert_eq!(e.smul(-2, &p), e.neg(&two_p));
        assert!(e.smul(0, &p).is_infinity());
    }

    #[test]
    fn associativity_on_multiples() {
        let e = e37();
        let p = CurvePoint::from_ints(0, -1);
        let (a, b, c) = (e.smul(2, &p), e.smul(3, &p), e.smul(-5, &p));
        let left = e.add(&e.add(&a, &b), &c);
        let right = e.add(&a, &e.add(&b, &c));
        assert_eq!(left, right);
        assert_eq!(left, e.neg(&CurvePoint::Infinity));
        let q = e.smul(7, &p);
        assert!(e.on_curve(&q));
        assert_eq!(e.add(&e.smul(3, &p), &e.smul(4, &p)), q);
    }

    #[test]
    fn long_and_short_37a() {
        let w = LongModel::from_i64([0, 0, 1, -1, 0]).unwrap();
        assert_eq!(w.short_model(), e37());
        assert_eq!(w.discriminant(), 37);
        assert!(w.on_curve(&CurvePoint::from_ints(0, 0)));
        assert_eq!(w.j_invariant(), e37().j_invariant());
        assert_eq!(w.j_invariant(), rat("110592/37"));
    }

    #[test]
    fn singular_models_rejected() {
        assert!(ShortModel::new(3.into(), 1.into()).is_err()); // 27 - 27 = 0
        assert!(LongModel::from_i64([0, 0, 0, 0, 0]).is_err());
    }
}
