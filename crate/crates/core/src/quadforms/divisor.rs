use serde::Serialize;

use super::classes::{heegner_classes, stabilizer_order};
use super::form::QForm;
use super::genus::genus_char;
use crate::arith::BigRat;
use crate::error::{Error, Result};

/// Twisted Heegner divisor `Z_{Δ,r}(d, h)`: class representatives weighted by `χ_Δ(Q)/w_Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeegnerDivisor {
    pub level: i64,
    pub delta: i64,
    pub r: i64,
    pub d: i64,
    pub h: i64,
    pub entries: Vec<(QForm, BigRat)>,
}

impl HeegnerDivisor {
    pub fn empty(level: i64, delta: i64, r: i64, d: i64, h: i64) -> Self {
        HeegnerDivisor { level, delta, r, d, h, entries: Vec::new() }
    }

    /// Sum of the weights.
    pub fn degree(&self) -> BigRat {
        self.entries.iter().fold(BigRat::zero(), |s, (_, w)| s + w)
    }

    pub fn negated(&self) -> Self {
        let entries = self.entries.iter().map(|(q, w)| (*q, -w.clone())).collect();
        HeegnerDivisor { entries, ..self.clone() }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn is_squarefree(n: i64) -> bool {
    let n = n.abs();
    let mut p = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// `1`, or a discriminant of a quadratic field.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    match d.rem_euclid(4) {
        1 => is_squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}

/// `Z_{Δ,r}(d, h)` on `X0(N)` over the classes of discriminant `Δd` with `B ≡ rh (mod 2N)`.
pub fn twisted_divisor(level: i64, delta: i64, r: i64, d: i64, h: i64) -> Result<HeegnerDivisor> {
    let four_n = 4 * level;
    if !is_fundamental_discriminant(delta) {
        return Err(Error::InvalidInput(format!("Δ = {delta} is not a fundamental discriminant")));
    }
    if (delta - r * r).rem_euclid(four_n) != 0 {
        return Err(Error::Congruence(format!("Δ = {delta} is not ≡ {r}² mod {four_n}")));
    }
    if (d - h * h).rem_euclid(four_n) != 0 {
        return Err(Error::Congruence(format!("d = {d} is not ≡ {h}² mod {four_n}")));
    }
    if delta * d >= 0 {
        return Err(Error::InvalidInput(format!("need Δd < 0, got Δ = {delta}, d = {d}")));
    }
    let classes = heegner_classes(level, delta * d, r * h)?;
    let mut entries = Vec::with_capacity(classes.len());
    for q in classes {
        let chi = genus_char(delta, &q)?;
        if chi != 0 {
            entries.push((q, BigRat::new(chi, stabilizer_order(&q))?));
        }
    }
    Ok(HeegnerDivisor { level, delta, r, d, h, entries })
}
