//! Adaptive Gauss–Legendre quadrature at arbitrary precision.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use crate::arith::{BigReal, Precision};
use crate::error::{Error, Result};

/// Extra digits carried by nodes, weights and partial sums.
pub const GUARD_DIGITS: u32 = 20;
const INITIAL_PANELS: u32 = 8;
const MAX_DEPTH: u32 = 40;

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug)]
pub struct Rule {
    /// Nonnegative nodes in decreasing order; the rule is symmetric.
    nodes: Vec<BigReal>,
    weights: Vec<BigReal>,
    degree: usize,
}

impl Rule {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `∫_a^b f` by this rule.
    pub fn apply<F>(&self, f: &F, a: &BigReal, b: &BigReal, bits: u32) -> Result<BigReal>
    where
        F: Fn(&BigReal) -> Result<BigReal>,
    {
        let half = Float::with_val(bits, b - a) / 2u32;
        let mid = Float::with_val(bits, a + b) / 2u32;
        let mut acc = Float::new(bits);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let dx = Float::with_val(bits, &half * x);
            if x.is_zero() {
                acc += Float::with_val(bits, w * f(&mid)?);
                continue;
            }
            let right = f(&Float::with_val(bits, &mid + &dx))?;
            let left = f(&Float::with_val(bits, &mid - &dx))?;
            acc += Float::with_val(bits, right + left) * w;
        }
        Ok(acc * half)
    }
}

fn legendre_with_derivative(n: usize, x: &BigReal, bits: u32) -> (BigReal, BigReal) {
    let mut p0 = Float::with_val(bits, 1);
    let mut p1 = x.clone();
    for k in 1..n {
        let k = k as u32;
        let next = (Float::with_val(bits, x * &p1) * (2 * k + 1) - Float::with_val(bits, &p0 * k)) / (k + 1);
        p0 = std::mem::replace(&mut p1, next);
    }
    // P_n' = n (x P_n − P_{n−1}) / (x² − 1)
    let x2m1 = Float::with_val(bits, x.square_ref()) - 1u32;
    let d = (Float::with_val(bits, x * &p1) - &p0) * n as u32 / x2m1;
    (p1, d)
}

fn build_rule(n: usize, bits: u32) -> Rule {
    let mut nodes = Vec::with_capacity(n / 2 + 1);
    let mut weights = Vec::with_capacity(n / 2 + 1);
    let stop = Float::with_val(bits, Float::i_exp(1, 8 - bits as i32));
    for i in 1..=n.div_ceil(2) {
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(bits, guess);
        if n % 2 == 1 && i == n.div_ceil(2) {
            x = Float::new(bits);
        } else {
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, &x, bits);
                let step = Float::with_val(bits, &p / &d);
                x -= &step;
                if step.abs() < stop {
                    break;
                }
            }
        }
        let (_, d) = legendre_with_derivative(n, &x, bits);
        let one_minus = 1u32 - Float::with_val(bits, x.square_ref());
        let w = Float::with_val(bits, 2u32) / (one_minus * d.square());
        nodes.push(x);
        weights.push(w);
    }
    Rule { nodes, weights, degree: n }
}

/// Shared, lazily built rule with `n` nodes at `bits` of precision.
pub fn gauss_legendre(n: usize, bits: u32) -> Arc<Rule> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<Rule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(rule) = cache.lock().expect("rule cache poisoned").get(&(n, bits)) {
        return Arc::clone(rule);
    }
    let rule = Arc::new(build_rule(n, bits));
    cache.lock().expect("rule cache poisoned").entry((n, bits)).or_insert(rule).clone()
}

/// Node count used at a given working precision.
pub fn default_degree(prec: Precision) -> usize {
    (f64::from(prec.decimal_digits()) * 0.6).ceil() as usize + 10
}

/// `∫_a^b f` to about `prec` digits relative to `max(1, |∫f|)`.
///
/// `[a, b]` is split into equal panels which are bisected until the rule on a
/// panel agrees with the rule on its two halves.
pub fn integrate_adaptive<F>(f: &F, a: &BigReal, b: &BigReal, prec: Precision) -> Result<BigReal>
where
    F: Fn(&BigReal) -> Result<BigReal>,
{
    let work = prec.plus(GUARD_DIGITS);
    let bits = work.bits();
    let rule = gauss_legendre(default_degree(prec), bits);
    let width = Float::with_val(bits, b - a);
    let panel = Float::with_val(bits, &width / INITIAL_PANELS);

    let mut pending = Vec::new();
    let mut rough = Float::new(bits);
    for k in 0..INITIAL_PANELS {
        let lo = Float::with_val(bits, a + Float::with_val(bits, &panel * k));
        let hi = if k + 1 == INITIAL_PANELS { Float::with_val(bits, b) } else { Float::with_val(bits, &lo + &panel) };
        let est = rule.apply(f, &lo, &hi, bits)?;
        rough += &est;
        pending.push((lo, hi, est, 0u32));
    }
    let scale = Float::with_val(bits, rough.abs_ref()).max(&Float::with_val(bits, 1));
    let tol = Float::with_val(bits, prec.ten_pow_neg(i64::from(prec.decimal_digits()) + 2) * &scale);

    let mut total = Float::new(bits);
    while let Some((lo, hi, est, depth)) = pending.pop() {
        let mid = Float::with_val(bits, &lo + &hi) / 2u32;
        let left = rule.apply(f, &lo, &mid, bits)?;
        let right = rule.apply(f, &mid, &hi, bits)?;
        let refined = Float::with_val(bits, &left + &right);
        let share = Float::with_val(bits, &hi - &lo) / &width;
        let err = Float::with_val(bits, &refined - &est).abs();
        if err <= Float::with_val(bits, &tol * &share) {
            total += refined;
        } else if depth >= MAX_DEPTH {
            return Err(Error::Quadrature(format!(
                "panel [{}, {}] still off by {:.3e} after {MAX_DEPTH} bisections",
                lo.to_f64(),
                hi.to_f64(),
                err.to_f64()
            )));
        } else {
            pending.push((mid.clone(), hi, right, depth + 1));
            pending.push((lo, mid, left, depth + 1));
        }
    }
    Ok(total)
}
