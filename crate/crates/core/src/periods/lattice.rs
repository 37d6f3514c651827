use rug::float::Constant;
use rug::{Complex, Float};

use crate::arith::{BigComplex, BigReal, Precision};
use crate::curves::ShortModel;
use crate::error::{Error, Result};

/// Extra decimal digits carried internally by every lattice computation.
pub(crate) const GUARD_DIGITS: u32 = 20;

/// Period lattice `L = ℤμ + ℤν` of `(E, dx/y)` for a curve with three real
/// 2-torsion points, with `μ > 0` real and `ν` purely imaginary, `Im ν > 0`.
///
/// Roots are ordered `e1 > e2 > e3`; `℘(μ/2) = e1`, `℘(ν/2) = e3`,
/// `℘((μ+ν)/2) = e2`. The real locus is `ℝ/μℤ` (through `x ≥ e1`) together
/// with `ν/2 + ℝ/μℤ` (the bounded component).
#[derive(Debug, Clone)]
pub struct PeriodLattice {
    model: ShortModel,
    prec: Precision,
    mu: BigReal,
    nu_im: BigReal,
    roots: [BigReal; 3],
    components: u8,
    /// `q = exp(-2π Im(ν)/μ)`, the nome of `τ = ν/μ`.
    pub(crate) nome_powers: Vec<BigReal>,
    /// `Σ 2qⁿ/(1 − qⁿ)²` over the retained terms.
    pub(crate) eisenstein_shift: BigReal,
}

/// Real roots of `4x³ − g2·x − g3`, descending. Requires positive discriminant.
fn real_roots(model: &ShortModel, bits: u32) -> [BigReal; 3] {
    let g2 = model.g2.as_rational();
    let g3 = model.g3.as_rational();
    // x = m·cos φ with m² = g2/3 turns the cubic into cos 3φ = g3/m³.
    let m = Float::with_val(bits, g2 / Float::with_val(bits, 3)).sqrt();
    let m3 = Float::with_val(bits, m.clone().square() * &m);
    let c = Float::with_val(bits, Float::with_val(bits, g3) / &m3);
    let phi = c.acos() / 3u32;
    let third_turn = Float::with_val(bits, Constant::Pi) * 2u32 / 3u32;
    let e1 = Float::with_val(bits, phi.clone().cos() * &m);
    let e2 = Float::with_val(bits, (phi.clone() - &third_turn).cos() * &m);
    let e3 = Float::with_val(bits, (phi + &third_turn).cos() * &m);
    [e1, e2, e3]
}

/// Period lattice of `E` at working precision `prec`.
pub fn period_lattice(model: &ShortModel, prec: Precision) -> Result<PeriodLattice> {
    if model.discriminant().signum() <= 0 {
        return Err(Error::UnsupportedCurve(format!(
            "{model} has complex 2-torsion; only curves with three real roots are supported"
        )));
    }
    let work = prec.plus(GUARD_DIGITS);
    let bits = work.bits();
    let roots = real_roots(model, bits);
    let [e1, e2, e3] = &roots;
    let s13 = Float::with_val(bits, e1 - e3).sqrt();
    let s12 = Float::with_val(bits, e1 - e2).sqrt();
    let s23 = Float::with_val(bits, e2 - e3).sqrt();
    let pi = work.pi();
    let mu = Float::with_val(bits, &pi / Float::with_val(bits, s13.agm_ref(&s12)));
    let nu_im = Float::with_val(bits, &pi / Float::with_val(bits, s13.agm_ref(&s23)));

    let tau_im = Float::with_val(bits, &nu_im / &mu);
    let q = Float::with_val(bits, -(Float::with_val(bits, &tau_im * &pi) * 2u32)).exp();
    // |qⁿ u^{±1}| <= q^{n - 1/2} after argument reduction.
    let per_term = -q.to_f64().ln();
    let needed = (f64::from(work.decimal_digits()) * std::f64::consts::LN_10 / per_term).ceil() as usize + 3;
    let mut nome_powers = Vec::with_capacity(needed);
    let mut qn = Float::with_val(bits, 1);
    let mut shift = Float::new(bits);
    for _ in 0..needed {
        qn *= &q;
        let one_minus = Float::with_val(bits, 1 - &qn);
        shift += Float::with_val(bits, &qn * 2u32) / one_minus.square();
        nome_powers.push(qn.clone());
    }
    Ok(PeriodLattice {
        model: model.clone(),
        prec,
        mu,
        nu_im,
        roots,
        components: 2,
        nome_powers,
        eisenstein_shift: shift,
    })
}

impl PeriodLattice {
    pub fn model(&self) -> &ShortModel {
        &self.model
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub(crate) fn bits(&self) -> u32 {
        self.prec.plus(GUARD_DIGITS).bits()
    }

    /// Real generator `μ`.
    pub fn mu(&self) -> &BigReal {
        &self.mu
    }

    /// `Im ν`.
    pub fn nu_im(&self) -> &BigReal {
        &self.nu_im
    }

    pub fn nu(&self) -> BigComplex {
        Complex::with_val(self.bits(), (0, &self.nu_im))
    }

    pub fn roots(&self) -> &[BigReal; 3] {
        &self.roots
    }

    pub fn components(&self) -> u8 {
        self.components
    }

    /// Real period `Ω = ∫_{E(ℝ)} dx/y = components · μ`.
    pub fn real_period(&self) -> BigReal {
        Float::with_val(self.bits(), &self.mu * u32::from(self.components))
    }

    #[cfg(test)]
    pub(crate) fn with_components(mut self, components: u8) -> Self {
        self.components = components;
        self
    }
}
