use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("base must be an integer >= 2, got {0}")]
    InvalidBase(u64),

    #[error("input must be positive and finite, got {0}")]
    NonPositiveInput(f64),

    #[error("{what} = {value} is outside {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: String,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no truncation K <= {k_max} brings the tail bound below {target:e}")]
    Truncation { k_max: u32, target: f64 },

    #[error("quadrature did not converge: error estimate {error:e} above tolerance {tol:e}")]
    Quadrature { error: f64, tol: f64 },

    #[error("density integrates to {integral} over [1, b), not 1")]
    NotNormalized { integral: f64 },

    #[error("no usable data (all entries nonpositive or nonfinite)")]
    EmptyData,

    #[error("chi-square needs at least {required} observations, got {total}")]
    InsufficientData { total: u64, required: u64 },

    #[error("ratio {0} is an integer power of the base")]
    UnsupportedRatio(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, domain: impl Into<String>) -> Self {
        Error::Domain {
            what,
            value,
            domain: domain.into(),
        }
    }
}
