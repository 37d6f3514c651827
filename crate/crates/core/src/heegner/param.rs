use std::sync::RwLock;

use rug::{Complex, Float};

use crate::arith::{BigComplex, Precision};
use crate::curves::{an_sequence, CurveConfig, LongModel, ModelMap, ShortModel};
use crate::error::{Error, Result};
use crate::periods::{period_lattice, PeriodLattice};
use crate::quadforms::{heegner_tau, HeegnerDivisor};

/// Largest q-expansion length accepted before asking for a better `τ`.
pub const MAX_TERMS: u64 = 10_000_000;
const GUARD_DIGITS: u32 = 20;

/// `φ: X0(N) → E` through the newform `Σ aₙqⁿ` of the curve.
///
/// The elliptic logarithm of `φ(τ)` for the Néron differential is
/// `c_E · Σ aₙ/n · e^{2πinτ}`; the cusp `∞` goes to the identity.
#[derive(Debug)]
pub struct ModularParam {
    long: LongModel,
    short: ShortModel,
    to_short: ModelMap,
    level: i64,
    fricke: i8,
    manin: i64,
    coefficients: RwLock<Vec<i64>>,
}

impl ModularParam {
    pub fn new(long: LongModel, level: i64, fricke: i8, manin: i64) -> Result<Self> {
        if fricke != 1 && fricke != -1 {
            return Err(Error::InvalidInput(format!("Fricke sign must be ±1, got {fricke}")));
        }
        if manin == 0 {
            return Err(Error::InvalidInput("Manin constant must be nonzero".into()));
        }
        if level < 1 {
            return Err(Error::InvalidInput(format!("level {level} must be positive")));
        }
        let to_short = ModelMap::long_to_short(&long);
        Ok(ModularParam {
            short: long.short_model(),
            long,
            to_short,
            level,
            fricke,
            manin,
            coefficients: RwLock::new(vec![0, 1]),
        })
    }

    pub fn from_config(cfg: &CurveConfig) -> Result<Self> {
        cfg.validate()?;
        let level = i64::try_from(cfg.level).map_err(|_| Error::InvalidInput("level too large".into()))?;
        Self::new(cfg.long.clone(), level, cfg.fricke, cfg.manin)
    }

    pub fn long(&self) -> &LongModel {
        &self.long
    }

    /// `y² = 4x³ − g2x − g3` with `dx/y` equal to the Néron differential.
    pub fn short(&self) -> &ShortModel {
        &self.short
    }

    pub fn to_short(&self) -> &ModelMap {
        &self.to_short
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn fricke(&self) -> i8 {
        self.fricke
    }

    pub fn manin(&self) -> i64 {
        self.manin
    }

    pub fn lattice(&self, prec: Precision) -> Result<PeriodLattice> {
        period_lattice(&self.short, prec)
    }

    /// `a_1, …, a_n` (index 0 unused), extending the shared cache on demand.
    pub fn coefficients(&self, n: usize) -> Result<Vec<i64>> {
        {
            let cache = self.coefficients.read().expect("coefficient cache poisoned");
            if cache.len() > n {
                return Ok(cache[..=n].to_vec());
            }
        }
        let mut cache = self.coefficients.write().expect("coefficient cache poisoned");
        if cache.len() <= n {
            let want = n.max(2 * cache.len());
            *cache = an_sequence(&self.long, want)?;
        }
        Ok(cache[..=n].to_vec())
    }
}

/// Smallest `n` with `Σ_{m>n} m·e^{−2πm·y} < 10^{−P}`.
pub fn terms_needed(im_tau: f64, prec: Precision) -> Result<usize> {
    let too_low = || Error::TauTooLow { im_tau: format!("{im_tau:.6e}"), limit: MAX_TERMS };
    if !(im_tau > 0.0) {
        return Err(too_low());
    }
    let log_x = -2.0 * std::f64::consts::PI * im_tau;
    let denom = -2.0 * (-log_x.exp()).ln_1p();
    let target = -f64::from(prec.decimal_digits()) * std::f64::consts::LN_10;
    // tail ≤ (n+1)·x^{n+1}/(1−x)²
    let tail = |n: f64| (n + 1.0).ln() + (n + 1.0) * log_x + denom;
    let (mut lo, mut hi) = (0f64, 1f64);
    while tail(hi) >= target {
        hi *= 2.0;
        if hi > MAX_TERMS as f64 * 2.0 {
            return Err(too_low());
        }
    }
    while hi - lo > 1.0 {
        let mid = ((lo + hi) / 2.0).floor();
        if tail(mid) < target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let n = hi as u64;
    if n > MAX_TERMS {
        return Err(too_low());
    }
    Ok(n.max(1) as usize)
}

/// `Σ_{n ≤ n_max} aₙ/n · e^{2πinτ}`: the elliptic logarithm of `φ(τ)` for `c_E = 1`.
pub fn phi_log(mp: &ModularParam, tau: &BigComplex, prec: Precision) -> Result<BigComplex> {
    let n_max = terms_needed(tau.imag().to_f64(), prec)?;
    let a = mp.coefficients(n_max)?;
    let bits = prec.plus(GUARD_DIGITS).bits();
    let two_pi_i = Complex::with_val(bits, (0, Float::with_val(bits, rug::float::Constant::Pi) * 2u32));
    let q = Complex::with_val(bits, &two_pi_i * tau).exp();
    let mut qn = Complex::with_val(bits, 1);
    let mut sum = Complex::new(bits);
    for (n, &an) in a.iter().enumerate().skip(1) {
        qn *= &q;
        if an != 0 {
            sum += Complex::with_val(bits, &qn * an) / n as u64;
        }
    }
    Ok(sum)
}

/// `Σ w_Q · φ_log(α_Q)` over the divisor's class representatives. The cusp
/// correction contributes nothing since `∞ ↦ 0`.
pub fn divisor_log(mp: &ModularParam, d: &HeegnerDivisor, prec: Precision) -> Result<BigComplex> {
    let bits = prec.plus(GUARD_DIGITS).bits();
    let tau_prec = prec.plus(GUARD_DIGITS);
    let mut sum = Complex::new(bits);
    for (q, w) in &d.entries {
        let value = phi_log(mp, &heegner_tau(q, tau_prec), prec)?;
        sum += value * w.as_rational();
    }
    Ok(sum)
}
