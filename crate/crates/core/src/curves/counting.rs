use rug::Integer;

use crate::error::{Error, Result};

use super::model::LongModel;

/// Reduction type of a model at a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    Good,
    Split,
    NonSplit,
    Additive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApResult {
    pub value: i64,
    pub reduction: Reduction,
}

const AP_PRIME_LIMIT: u64 = 1_000_000;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce(c: &Integer, p: u64) -> u64 {
    c.mod_u(p as u32) as u64
}

/// Number of affine solutions of the model over `𝔽_p`, singular points included.
fn affine_count(e: &LongModel, p: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = e.coefficients().clone().map(|c| reduce(&c, p));
    if p == 2 {
        let mut n = 0;
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lhs = y * y + a1 * x * y + a3 * y;
                let rhs = x * x * x + a2 * x * x + a4 * x + a6;
                if (lhs + rhs) % 2 == 0 {
                    n += 1;
                }
            }
        }
        return n;
    }
    // For odd p, completing the square gives (2y + a1x + a3)² = disc(x), and
    // each x contributes 1 + (disc(x) / p) solutions.
    let mut square_count = vec![0u8; p as usize];
    for y in 0..p {
        square_count[(y * y % p) as usize] += 1;
    }
    (0..p)
        .map(|x| {
            let lin = (a1 * x + a3) % p;
            let cubic = (((x + a2) % p * x + a4) % p * x + a6) % p;
            let disc = (lin * lin + 4 * cubic) % p;
            u64::from(square_count[disc as usize])
        })
        .sum()
}

/// Trace of Frobenius `a_p` of the (assumed minimal) model at the prime `p`.
///
/// Good reduction: `p + 1 − #E(𝔽_p)` by exhaustive count, with the Hasse bound
/// checked. Multiplicative reduction: `p − #E_ns(𝔽_p)`, i.e. `+1` split and `−1`
/// non-split. Additive reduction: value `0` with [`Reduction::Additive`].
pub fn ap(e: &LongModel, p: u64) -> Result<ApResult> {
    if p > AP_PRIME_LIMIT || !is_prime(p) {
        return Err(Error::InvalidInput(format!("a_p needs a prime p <= {AP_PRIME_LIMIT}, got {p}")));
    }
    let disc = e.discriminant();
    let count = affine_count(e, p);
    if !disc.is_divisible_u(p as u32) {
        let value = p as i64 + 1 - (count as i64 + 1);
        if (value * value) as u64 > 4 * p {
            return Err(Error::InvalidInput(format!("Hasse bound violated: a_{p} = {value}")));
        }
        return Ok(ApResult { value, reduction: Reduction::Good });
    }
    if e.c4().is_divisible_u(p as u32) {
        return Ok(ApResult { value: 0, reduction: Reduction::Additive });
    }
    // One affine singular point; nonsingular points are the rest plus infinity.
    let ns = count as i64;
    let value = p as i64 - ns;
    let reduction = match value {
        1 => Reduction::Split,
        -1 => Reduction::NonSplit,
        _ => {
            return Err(Error::InvalidInput(format!(
                "multiplicative reduction at {p} gave a_p = {value}"
            )))
        }
    };
    Ok(ApResult { value, reduction })
}

/// `[a_1, …, a_{n_max}]` (index 0 holds `a_0 = 0`) of the L-series of the model.
///
/// Multiplicative in `n`; at good primes `a_{p^{k+1}} = a_p a_{p^k} − p a_{p^{k−1}}`,
/// at bad primes `a_{p^k} = a_p^k`.
pub fn an_sequence(e: &LongModel, n_max: usize) -> Result<Vec<i64>> {
    if n_max < 1 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let disc = e.discriminant();
    let mut spf = vec![0usize; n_max + 1];
    for i in 2..=n_max {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n_max {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    let mut a = vec![0i64; n_max + 1];
    a[1] = 1;
    let mut ap_cache = std::collections::HashMap::new();
    for n in 2..=n_max {
        let p = spf[n];
        let (mut m, mut k) = (n, 0u32);
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        if m > 1 {
            a[n] = a[n / m] * a[m];
            continue;
        }
        let app = match ap_cache.get(&p) {
            Some(&v) => v,
            None => {
                let v = ap(e, p as u64)?.value;
                ap_cache.insert(p, v);
                v
            }
        };
        a[n] = if k == 1 {
            app
        } else if disc.is_divisible_u(p as u32) {
            app * a[n / p]
        } else {
            app * a[n / p] - p as i64 * a[n / (p * p)]
        };
    }
    Ok(a)
}
