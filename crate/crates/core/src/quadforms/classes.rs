use std::collections::HashMap;

use super::form::{Mat2, QForm};
use crate::arith::BigRat;
use crate::error::{Error, Result};

/// Automorphs in `SL2(ℤ)` of a reduced form; their entries lie in `{−1, 0, 1}`.
fn reduced_automorphs(r: &QForm) -> Vec<Mat2> {
    let mut out = Vec::new();
    let range = -1..=1;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    let g = Mat2::new(a, b, c, d);
                    if g.det() == 1 && r.act(&g) == *r {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// Order of the image of `Stab(Q) ∩ Γ0(N)` in `PSL2(ℤ)`.
pub fn stabilizer_order(q: &QForm) -> u32 {
    let (r, m) = q.reduce();
    let m_inv = m.inverse();
    let count = reduced_automorphs(&r)
        .iter()
        .filter(|g| m.mul(g).mul(&m_inv).in_gamma0(q.level))
        .count();
    (count / 2) as u32
}

/// Whether `q2 = q1 ∘ γ` for some `γ ∈ Γ0(N)`.
pub fn gamma0_equivalent(q1: &QForm, q2: &QForm) -> bool {
    if q1.level != q2.level || q1.discriminant() != q2.discriminant() {
        return false;
    }
    let (r1, m1) = q1.reduce();
    let (r2, m2) = q2.reduce();
    r1 == r2 && equivalent_via(&r1, &m1, &m2, q1.level)
}

fn equivalent_via(r: &QForm, m1: &Mat2, m2: &Mat2, level: i64) -> bool {
    let m2_inv = m2.inverse();
    reduced_automorphs(r).iter().any(|g| m1.mul(g).mul(&m2_inv).in_gamma0(level))
}

fn isqrt(n: i64) -> i64 {
    let mut s = (n as f64).sqrt() as i64;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

/// Classes met among forms `[N a, B, C]` with `a ≤ a_max`, `B ∈ [−A, A)`, `B ≡ h (mod 2N)`,
/// each represented by its first form in `(A, B)` order.
pub(crate) fn enumerate_classes(level: i64, disc: i64, h: i64, a_max: i64) -> Vec<QForm> {
    let two_n = 2 * level;
    let mut reps: Vec<QForm> = Vec::new();
    let mut by_reduced: HashMap<QForm, Vec<(usize, Mat2)>> = HashMap::new();
    for a in 1..=a_max {
        let big_a = level * a;
        let start = -big_a + (h + big_a).rem_euclid(two_n);
        let mut b = start;
        while b < big_a {
            let num = b * b - disc;
            if num % (4 * big_a) == 0 {
                let q = QForm::unchecked(level, big_a, b, num / (4 * big_a));
                let (r, m) = q.reduce();
                let bucket = by_reduced.entry(r).or_default();
                if !bucket.iter().any(|(_, m0)| equivalent_via(&r, m0, &m, level)) {
                    bucket.push((reps.len(), m));
                    reps.push(q);
                }
            }
            b += two_n;
        }
    }
    reps
}

/// One canonical representative per `Γ0(N)`-class of forms of discriminant `D`
/// with `B ≡ h (mod 2N)`: the form of least `A`, then least `B ∈ [−A, A)`.
pub fn heegner_classes(level: i64, disc: i64, h: i64) -> Result<Vec<QForm>> {
    if level < 1 || disc >= 0 {
        return Err(Error::InvalidInput(format!("need N ≥ 1 and D < 0, got N = {level}, D = {disc}")));
    }
    if (disc - h * h).rem_euclid(4 * level) != 0 {
        return Err(Error::Congruence(format!("D = {disc} is not ≡ {h}² mod {}", 4 * level)));
    }
    let h = h.rem_euclid(2 * level);
    let mut a_max = isqrt(-disc / 3) + 1;
    let mut classes = enumerate_classes(level, disc, h, a_max);
    // Grow the box until doubling it finds nothing new.
    for _ in 0..8 {
        let wider = enumerate_classes(level, disc, h, 2 * a_max);
        if wider.len() == classes.len() {
            return Ok(classes);
        }
        classes = wider;
        a_max *= 2;
    }
    Err(Error::SearchExhausted { form: format!("classes of discriminant {disc}, h = {h}"), bound: a_max })
}

/// Hurwitz class number `H(|D|)`: reduced forms of discriminant `D`, all
/// contents, weighted by `1/2` for `[a, 0, a]` and `1/3` for `[a, a, a]`.
pub fn hurwitz_h(disc: i64) -> Result<BigRat> {
    if disc >= 0 || disc < -1_000_000 {
        return Err(Error::InvalidInput(format!("Hurwitz class number needs −10⁶ ≤ D < 0, got {disc}")));
    }
    let mut twelve_h = 0i64;
    if disc.rem_euclid(4) > 1 {
        return Ok(BigRat::zero());
    }
    let mut a = 1;
    while 3 * a * a <= -disc {
        for b in (-a + 1)..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            twelve_h += if b == 0 && a == c {
                6
            } else if b == a && a == c {
                4
            } else {
                12
            };
        }
        a += 1;
    }
    BigRat::new(twelve_h, 12)
}
