use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("coupling g(t) is singular at t = {t}; use the accumulated phase instead")]
    Singularity { t: f64 },

    #[error("degenerate bath: total coupling weight is zero")]
    DegenerateBath,

    #[error("quadrature needs at least {needed} samples, got {got}")]
    Quadrature { needed: usize, got: usize },

    /// The distribution collapsed to a delta function at `(re, im)`.
    #[error("distribution is a delta function at ({re}, {im})")]
    SingularDistribution { re: f64, im: f64 },

    #[error("state is not normalized: norm^2 = {norm_sqr}")]
    Normalization { norm_sqr: f64 },

    #[error("invalid {what}: {reason}")]
    Validation { what: &'static str, reason: String },

    #[error(
        "truncation discards weight {discarded:e} (> {tolerance:e}); \
         a cutoff of at least {required_cutoff} is needed"
    )]
    Truncation {
        discarded: f64,
        tolerance: f64,
        required_cutoff: usize,
    },

    #[error("stepping did not converge within {max_steps} steps (last change {change:e})")]
    StepCount { max_steps: usize, change: f64 },

    #[error("unknown quantity `{0}`")]
    UnknownQuantity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}

pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Error {
    Error::Validation {
        what,
        reason: reason.into(),
    }
}
