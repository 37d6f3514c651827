use rug::{Complex, Float};
use serde::Serialize;

use crate::arith::{BigComplex, Precision};
use crate::error::{Error, Result};

/// Integer matrix `[[a, b], [c, d]]` of determinant one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Mat2 {
        Mat2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn in_gamma0(&self, n: i64) -> bool {
        self.c % n == 0
    }
}

/// `A x² + B xy + C y²` together with its level `N`, with `N | A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub level: i64,
}

impl QForm {
    /// Positive definite form of level `level`.
    pub fn new(level: i64, a: i64, b: i64, c: i64) -> Result<Self> {
        if level < 1 {
            return Err(Error::InvalidInput(format!("level {level} must be positive")));
        }
        if a <= 0 || a % level != 0 {
            return Err(Error::InvalidInput(format!("[{a}, {b}, {c}] needs A > 0 and {level} | A")));
        }
        let q = QForm { a, b, c, level };
        if q.discriminant() >= 0 {
            return Err(Error::InvalidInput(format!("[{a}, {b}, {c}] is not positive definite")));
        }
        Ok(q)
    }

    pub(crate) fn unchecked(level: i64, a: i64, b: i64, c: i64) -> Self {
        QForm { a, b, c, level }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// `(x, y) ↦ Q(g·(x, y))`.
    pub fn act(&self, g: &Mat2) -> QForm {
        let (p, q, r, s) = (g.a, g.b, g.c, g.d);
        QForm {
            a: self.eval(p, r),
            b: 2 * self.a * p * q + self.b * (p * s + q * r) + 2 * self.c * r * s,
            c: self.eval(q, s),
            level: self.level,
        }
    }

    pub fn content(&self) -> i64 {
        gcd(gcd(self.a, self.b), self.c)
    }

    /// The same coefficients viewed as a level-1 form.
    pub(crate) fn forget_level(&self) -> QForm {
        QForm { level: 1, ..*self }
    }

    /// `SL2(ℤ)`-reduced form `R` and `M` with `self.act(M) = R`.
    pub fn reduce(&self) -> (QForm, Mat2) {
        let mut q = self.forget_level();
        let mut m = Mat2::IDENTITY;
        loop {
            // shift B into (−A, A]
            let two_a = 2 * q.a;
            let k = (q.a - q.b).div_euclid(two_a);
            if k != 0 {
                let t = Mat2::new(1, k, 0, 1);
                q = q.act(&t);
                m = m.mul(&t);
            }
            if q.a > q.c || (q.a == q.c && q.b < 0) {
                let s = Mat2::new(0, -1, 1, 0);
                q = q.act(&s);
                m = m.mul(&s);
                continue;
            }
            break;
        }
        (q, m)
    }
}

impl std::fmt::Display for QForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Root `α_Q = (−B + i√|D|)/(2A)` of `A τ² + B τ + C` in the upper half-plane.
pub fn heegner_tau(q: &QForm, prec: Precision) -> BigComplex {
    let bits = prec.bits();
    let two_a = 2 * q.a;
    let re = Float::with_val(bits, -q.b) / two_a;
    let im = Float::with_val(bits, -q.discriminant()).sqrt() / two_a;
    Complex::with_val(bits, (re, im))
}

/// Dirichlet composition of two forms of the same discriminant with coprime
/// leading coefficients: `[a1·a2, B, C]` with `B ≡ b1 (mod 2a1)`, `B ≡ b2 (mod 2a2)`.
/// The result keeps the level of `f`.
pub fn compose(f: &QForm, g: &QForm) -> Option<QForm> {
    let disc = f.discriminant();
    if disc != g.discriminant() || gcd(f.a, g.a) != 1 {
        return None;
    }
    let a3 = f.a * g.a;
    (0..g.a)
        .map(|k| f.b + 2 * f.a * k)
        .find(|bb| (bb - g.b).rem_euclid(2 * g.a) == 0 && (bb * bb - disc) % (4 * a3) == 0)
        .map(|bb| QForm { a: a3, b: bb, c: (bb * bb - disc) / (4 * a3), level: f.level })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_tracks_matrix() {
        let q = QForm::unchecked(37, 37 * 5, 71, 35);
        let (r, m) = q.reduce();
        assert_eq!(m.det(), 1);
        assert_eq!(q.forget_level().act(&m), r);
        assert!(r.b.abs() <= r.a && r.a <= r.c);
        assert_eq!(r.discriminant(), q.discriminant());
    }

    #[test]
    fn tau_formulas() {
        let p = Precision::digits(30);
        let i = heegner_tau(&QForm::new(1, 1, 0, 1).unwrap(), p);
        assert!(i.real().is_zero() && *i.imag() == 1);
        let t = heegner_tau(&QForm::new(1, 2, 2, 3).unwrap(), p);
        assert_eq!(*t.real(), -0.5);
        let want = Float::with_val(p.bits(), 20).sqrt() / 4u32;
        assert_eq!(*t.imag(), want);
    }

    #[test]
    fn composition_in_class_group() {
        // Cl(−20) = {[1,0,5], [2,2,3]}; [2,2,3]² ~ [1,0,5]
        let g = QForm::new(1, 2, 2, 3).unwrap();
        let h = QForm::new(1, 3, 2, 2).unwrap();
        let sq = compose(&g, &h).unwrap();
        assert_eq!(sq.reduce().0, QForm::new(1, 1, 0, 5).unwrap());
        let id = QForm::new(1, 1, 0, 5).unwrap();
        assert_eq!(compose(&id, &g).unwrap().reduce().0, g);
    }

    #[test]
    fn rejects_bad_forms() {
        assert!(QForm::new(37, 36, 1, 1).is_err());
        assert!(QForm::new(1, 1, 3, 1).is_err());
        assert!(QForm::new(1, -1, 0, -1).is_err());
    }
}
