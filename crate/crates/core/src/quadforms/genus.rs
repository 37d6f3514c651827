use rug::Integer;

use super::form::{gcd, QForm};
use crate::error::{Error, Result};

const FIRST_BOUND: i64 = 50;
const LAST_BOUND: i64 = 10_000;

/// Kronecker symbol `(d/n)`.
pub fn kronecker(d: i64, n: i64) -> i32 {
    Integer::from(d).kronecker(&Integer::from(n))
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|k| n % k == 0).collect()
}

/// First value coprime to `Δ` of `[N1·a, B, N2·c]`, scanning `|x| + |y|` upwards.
fn represented_unit(delta: i64, f: &QForm, bound: i64) -> Option<i64> {
    for s in 1..=2 * bound {
        for x in -s..=s {
            let rest = s - x.abs();
            if x.abs() > bound || rest > bound {
                continue;
            }
            let ys: &[i64] = if rest == 0 { &[0] } else { &[-rest, rest] };
            for &y in ys {
                let n = f.eval(x, y);
                if n != 0 && gcd(n, delta) == 1 {
                    return Some(n);
                }
            }
        }
    }
    None
}

/// `χ_Δ(Q)` computed from the splitting `N = N1·N2` alone; `None` when that
/// splitting represents nothing coprime to `Δ` within the search box.
pub fn genus_char_for_splitting(delta: i64, q: &QForm, n1: i64, bound: i64) -> Result<Option<i32>> {
    let n = q.level;
    if n1 < 1 || n % n1 != 0 {
        return Err(Error::InvalidInput(format!("{n1} does not divide the level {n}")));
    }
    let a = q.a / n;
    if gcd(gcd(gcd(a, q.b), q.c), delta) > 1 {
        return Ok(Some(0));
    }
    let f = QForm::unchecked(1, n1 * a, q.b, (n / n1) * q.c);
    Ok(represented_unit(delta, &f, bound).map(|m| kronecker(delta, m)))
}

/// Genus character `χ_Δ([N a, b, c])`.
pub fn genus_char(delta: i64, q: &QForm) -> Result<i32> {
    let d = q.discriminant();
    if delta == 0 || d % delta != 0 {
        return Err(Error::InvalidInput(format!("Δ = {delta} does not divide disc {q} = {d}")));
    }
    let mut bound = FIRST_BOUND;
    loop {
        for n1 in divisors(q.level) {
            if let Some(v) = genus_char_for_splitting(delta, q, n1, bound)? {
                return Ok(v);
            }
        }
        if bound >= LAST_BOUND {
            return Err(Error::SearchExhausted { form: q.to_string(), bound });
        }
        bound = (2 * bound).min(LAST_BOUND);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadforms::{heegner_classes, Mat2};
    use proptest::prelude::*;

    #[test]
    fn trivial_character() {
        for q in heegner_classes(37, -3, 21).unwrap() {
            assert_eq!(genus_char(1, &q).unwrap(), 1);
        }
    }

    #[test]
    fn imprimitive_against_delta_is_zero() {
        // a = 2, b = 2, c = 2 share the factor 2 with Δ = 12
        let q = QForm::new(37, 74, 2, 2).unwrap();
        assert_eq!(genus_char(12, &q).unwrap(), 0);
    }

    #[test]
    fn delta_twelve_classes_are_signed() {
        let r = (0..74).find(|r| (r * r - 12i64).rem_euclid(148) == 0).unwrap();
        let classes = heegner_classes(37, -36, (r * 21) % 74).unwrap();
        let total: i32 = classes.iter().map(|q| genus_char(12, q).unwrap()).sum();
        assert_eq!(total, 0);
        let primitive = classes.iter().filter(|q| q.content() == 1);
        assert!(primitive.clone().count() > 0);
        assert!(primitive.into_iter().all(|q| genus_char(12, q).unwrap() != 0));
    }

    fn sample_forms() -> Vec<(i64, QForm)> {
        let mut out = Vec::new();
        for delta in [12i64, 21, 28, 33, 37, 40, 41, 44, 53, 65, 73, 77, 85, 101] {
            let r = (0..74).find(|r| (r * r - delta).rem_euclid(148) == 0).unwrap();
            for q in heegner_classes(37, -3 * delta, (r * 21) % 74).unwrap() {
                out.push((delta, q));
            }
        }
        out
    }

    #[test]
    fn independent_of_splitting() {
        for (delta, q) in sample_forms() {
            let values: Vec<i32> = [1, 37]
                .iter()
                .filter_map(|&n1| genus_char_for_splitting(delta, &q, n1, 200).unwrap())
                .collect();
            assert!(!values.is_empty());
            assert!(values.windows(2).all(|w| w[0] == w[1]), "Δ = {delta}, {q}: {values:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn constant_on_gamma0_orbits(idx in 0usize..200, c in -4i64..4, d in 1i64..30) {
            let forms = sample_forms();
            let (delta, q) = forms[idx % forms.len()];
            let c = 37 * c;
            prop_assume!(gcd(c, d) == 1);
            // solve a·d − b·c = 1
            let (mut a, mut b) = (1i64, 0i64);
            if c != 0 {
                let a0 = (1..=c.abs()).find(|a| (a * d - 1) % c == 0).unwrap();
                a = a0;
                b = (a * d - 1) / c;
            } else {
                prop_assume!(d == 1);
            }
            let g = Mat2::new(a, b, c, d);
            prop_assert_eq!(g.det(), 1);
            let moved = q.act(&g);
            prop_assert_eq!(genus_char(delta, &moved).unwrap(), genus_char(delta, &q).unwrap());
        }
    }
}
