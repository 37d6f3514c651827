use crate::arith::BigRat;
use crate::error::{Error, Result};

use super::model::{Curve, CurvePoint, LongModel, ShortModel, Weierstrass};

/// Any of the concrete curve models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Short(ShortModel),
    Long(LongModel),
    General(Weierstrass),
}

impl Curve for Model {
    fn weierstrass(&self) -> Weierstrass {
        match self {
            Model::Short(m) => m.weierstrass(),
            Model::Long(m) => m.weierstrass(),
            Model::General(m) => m.clone(),
        }
    }

    fn embed(&self, p: &CurvePoint) -> CurvePoint {
        match self {
            Model::Short(m) => m.embed(p),
            Model::Long(m) => m.embed(p),
            Model::General(m) => m.embed(p),
        }
    }

    fn unembed(&self, p: &CurvePoint) -> CurvePoint {
        match self {
            Model::Short(m) => m.unembed(p),
            Model::Long(m) => m.unembed(p),
            Model::General(m) => m.unembed(p),
        }
    }
}

/// Rational change of Weierstrass coordinates from `source` to `target`.
///
/// On the embedded general equations a source point `(x', y')` maps to
/// `x = u²x' + r`, `y = u³y' + u²s·x' + t`. The Néron-type differentials satisfy
/// `ω_target = ω_source / u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelMap {
    source: Model,
    target: Model,
    u: BigRat,
    r: BigRat,
    s: BigRat,
    t: BigRat,
}

/// Coefficients of the source equation obtained by pulling `target` back along `(u, r, s, t)`.
fn pull_back(w: &Weierstrass, u: &BigRat, r: &BigRat, s: &BigRat, t: &BigRat) -> Weierstrass {
    let two = BigRat::from(2);
    let three = BigRat::from(3);
    let (a1, a2, a3, a4, a6) = (&w.a1, &w.a2, &w.a3, &w.a4, &w.a6);
    let a1p = (a1 + &(&two * s)) / u.clone();
    let a2p = (a2 - &(s * a1) + &three * r - s * s) / u.pow(2);
    let a3p = (a3 + &(r * a1) + &two * t) / u.pow(3);
    let a4p = (a4 - &(s * a3) + &two * r * a2.clone() - (t + &(r * s)) * a1.clone()
        + &three * r * r.clone()
        - &two * s * t.clone())
        / u.pow(4);
    let a6p = (a6 + &(r * a4) + r * r * a2.clone() + r.pow(3) - t * a3 - t * t - r * t * a1.clone())
        / u.pow(6);
    Weierstrass { a1: a1p, a2: a2p, a3: a3p, a4: a4p, a6: a6p }
}

impl ModelMap {
    /// Builds the map, checking that `(u, r, s, t)` really carries `source` onto `target`.
    pub fn new(source: Model, target: Model, u: BigRat, r: BigRat, s: BigRat, t: BigRat) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::InvalidInput("model map with u = 0".into()));
        }
        let pulled = pull_back(&target.weierstrass(), &u, &r, &s, &t);
        if pulled != source.weierstrass() {
            return Err(Error::ModelInconsistency(format!(
                "(u,r,s,t) = ({u},{r},{s},{t}) does not map the source model onto the target"
            )));
        }
        Ok(ModelMap { source, target, u, r, s, t })
    }

    /// Map with the given parameters; the target equation is derived from `source`.
    pub fn from_parameters(source: Model, u: BigRat, r: BigRat, s: BigRat, t: BigRat) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::InvalidInput("model map with u = 0".into()));
        }
        let ui = u.recip()?;
        let ir = -(&r * &ui.pow(2));
        let is = -(&s * &ui);
        let it = -(&(&t - &(&s * &r)) * &ui.pow(3));
        let target = Model::General(pull_back(&source.weierstrass(), &ui, &ir, &is, &it));
        ModelMap::new(source, target, u, r, s, t)
    }

    pub fn identity(model: Model) -> Self {
        ModelMap {
            source: model.clone(),
            target: model,
            u: BigRat::one(),
            r: BigRat::zero(),
            s: BigRat::zero(),
            t: BigRat::zero(),
        }
    }

    /// From an integral model to its short model `Y² = 4X³ − g2·X − g3`,
    /// `X = x + b2/12`, `Y = 2y + a1·x + a3`.
    pub fn long_to_short(long: &LongModel) -> Self {
        let w = long.weierstrass();
        let half = BigRat::new(1, 2).expect("nonzero");
        let r = w.b2() / BigRat::from(12);
        let s = &w.a1 * &half;
        let t = &w.a3 * &half;
        ModelMap::new(
            Model::Long(long.clone()),
            Model::Short(long.short_model()),
            BigRat::one(),
            r,
            s,
            t,
        )
        .expect("completing the square is a valid change of coordinates")
    }

    pub fn source(&self) -> &Model {
        &self.source
    }

    pub fn target(&self) -> &Model {
        &self.target
    }

    pub fn scale(&self) -> &BigRat {
        &self.u
    }

    /// `ω_target / ω_source` as pulled back along the map, i.e. `1/u`.
    pub fn omega_ratio(&self) -> BigRat {
        self.u.recip().expect("u != 0")
    }

    pub fn apply(&self, p: &CurvePoint) -> CurvePoint {
        let e = self.source.embed(p);
        let mapped = match &e {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let u2 = self.u.pow(2);
                let nx = &u2 * x + self.r.clone();
                let ny = self.u.pow(3) * y.clone() + &u2 * &self.s * x.clone() + self.t.clone();
                CurvePoint::affine(nx, ny)
            }
        };
        self.target.unembed(&mapped)
    }

    pub fn apply_inverse(&self, p: &CurvePoint) -> CurvePoint {
        let e = self.target.embed(p);
        let mapped = match &e {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let xr = x - &self.r;
                let nx = &xr / &self.u.pow(2);
                let ny = (y - &(&self.s * &xr) - self.t.clone()) / self.u.pow(3);
                CurvePoint::affine(nx, ny)
            }
        };
        self.source.unembed(&mapped)
    }

    pub fn inverse(&self) -> ModelMap {
        let ui = self.omega_ratio();
        let r = -(&self.r * &ui.pow(2));
        let s = -(&self.s * &ui);
        let t = -(&(&self.t - &(&self.s * &self.r)) * &ui.pow(3));
        ModelMap {
            source: self.target.clone(),
            target: self.source.clone(),
            u: ui,
            r,
            s,
            t,
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModelMap) -> Result<ModelMap> {
        if self.target.weierstrass() != other.source.weierstrass() {
            return Err(Error::ModelInconsistency("composing maps with mismatched models".into()));
        }
        // x'' = U²(u²x + r) + R, etc.
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
        let (uu, rr, ss, tt) = (&other.u, &other.r, &other.s, &other.t);
        let nu = uu * u;
        let nr = uu.pow(2) * r.clone() + rr.clone();
        let ns = (uu * s) + ss.clone();
        let nt = uu.pow(3) * t.clone() + uu.pow(2) * ss * r.clone() + tt.clone();
        ModelMap::new(self.source.clone(), other.target.clone(), nu, nr, ns, nt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn long_to_short_37a() {
        let long = LongModel::from_i64([0, 0, 1, -1, 0]).unwrap();
        let m = ModelMap::long_to_short(&long);
        let p = CurvePoint::from_ints(0, -1);
        let q = m.apply(&p);
        // Y = 2y + 1
        assert_eq!(q, CurvePoint::from_ints(0, -1));
        assert_eq!(m.apply(&CurvePoint::from_ints(0, 0)), CurvePoint::from_ints(0, 1));
        assert_eq!(m.apply_inverse(&q), p);
        assert_eq!(m.omega_ratio(), BigRat::one());
    }

    #[test]
    fn long_to_short_with_x_shift() {
        // 11a1: y² + y = x³ − x² − 10x − 20, b2 = −4 ≠ 0.
        let long = LongModel::from_i64([0, -1, 1, -10, -20]).unwrap();
        let m = ModelMap::long_to_short(&long);
        let p = CurvePoint::from_ints(5, 5);
        assert!(long.on_curve(&p));
        let q = m.apply(&p);
        assert!(m.target().on_curve(&q));
        assert_eq!(m.apply_inverse(&q), p);
        let inv = m.inverse();
        assert_eq!(inv.apply(&q), p);
        // Group law commutes with the map.
        let two = long.smul(2, &p);
        assert_eq!(m.apply(&two), m.target().smul(2, &q));
    }

    #[test]
    fn mismatched_parameters_rejected() {
        let long = LongModel::from_i64([0, 0, 1, -1, 0]).unwrap();
        let res = ModelMap::new(
            Model::Long(long.clone()),
            Model::Short(long.short_model()),
            BigRat::from(2),
            BigRat::zero(),
            BigRat::zero(),
            BigRat::zero(),
        );
        assert!(res.is_err());
    }

    #[test]
    fn composition_matches_sequential_application() {
        // 14a1: y² + xy + y = x³ + 4x − 6 contains (2, −5).
        let long = LongModel::from_i64([1, 0, 1, 4, -6]).unwrap();
        let to_short = ModelMap::long_to_short(&long);
        let back = to_short.inverse();
        let round = to_short.then(&back).unwrap();
        assert_eq!(*round.scale(), BigRat::one());
        let p = CurvePoint::from_ints(2, -5);
        assert!(long.on_curve(&p));
        assert_eq!(round.apply(&p), p);
        assert!(to_short.target().on_curve(&to_short.apply(&p)));
        let shift = ModelMap::from_parameters(
            to_short.target().clone(),
            BigRat::from(2),
            BigRat::from(3),
            BigRat::from(-1),
            BigRat::new(5, 2).unwrap(),
        )
        .unwrap();
        let composed = to_short.then(&shift).unwrap();
        let step = shift.apply(&to_short.apply(&p));
        assert_eq!(composed.apply(&p), step);
        assert!(composed.target().on_curve(&step));
        assert_eq!(composed.omega_ratio(), BigRat::new(1, 2).unwrap());
    }
}
