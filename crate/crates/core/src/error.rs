use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported curve: {0}")]
    UnsupportedCurve(String),

    #[error("point is not on the curve: {0}")]
    NotOnCurve(String),

    #[error("argument within {distance} of a lattice point; the Weierstrass function has a pole there")]
    Pole { distance: String },

    #[error("elliptic logarithm did not converge: {0}")]
    LogNonConvergence(String),

    #[error("no admissible integration height: {0}")]
    PathHeight(String),

    #[error("quadrature did not reach tolerance: {0}")]
    Quadrature(String),

    #[error("congruence condition violated: {0}")]
    Congruence(String),

    #[error("genus character search exhausted at bound {bound} for form {form}")]
    SearchExhausted { form: String, bound: i64 },

    #[error("rational recognition failed for {what}; retry with higher precision (currently {digits} digits)")]
    Recognition { what: String, digits: u32 },

    #[error("recognized point fails the curve equation: {0}")]
    CurveEquation(String),

    #[error("model/point inconsistency: {0}")]
    ModelInconsistency(String),

    #[error("no minimal-model case table for this curve family: {0}; supply the model and map in the curve config")]
    UnsupportedFamily(String),

    #[error("missing coefficient c+({n}, {h})")]
    MissingCoefficient { n: i64, h: i64 },

    #[error("q-expansion needs more than {limit} terms at Im(tau) = {im_tau}; reduce tau first")]
    TauTooLow { im_tau: String, limit: u64 },
}
