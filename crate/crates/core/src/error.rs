use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// `(1 - a1)^2 + 4 xi3` is negative: no decaying `x^lambda` factor.
    #[error("not in a bound regime: lambda discriminant {discriminant} < 0")]
    NotBoundRegime { discriminant: f64 },

    /// `1 + 4(gamma + beta1)` is negative, so the exponent nu is complex.
    #[error("supercritical barrier: nu radicand {radicand} < 0")]
    SupercriticalBarrier { radicand: f64 },

    #[error("no bound state with radial quantum number n = {n}")]
    NoBoundState { n: u32 },

    /// The closed-form quantisation is only available for a1 = a2 = a3 = 1
    /// and an epsilon-free nu.
    #[error("unsupported coefficient set: {0}")]
    UnsupportedCoefficients(String),

    #[error("hypergeometric series has a pole: c = {c}")]
    PoleInSeries { c: f64 },

    #[error("quadrature did not converge after {halvings} halvings")]
    QuadratureFailure { halvings: u32 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid entry {name:?}: {message}")]
    Validation { name: String, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
