use thiserror::Error;

/// Errors surfaced by the numerical kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// Result not representable as a finite `f64`; use the log-scaled variant.
    #[error("range error in {op}: {detail}")]
    Range { op: &'static str, detail: String },

    /// Parameter sits on a measure-zero singularity of a closed form.
    #[error("singular parameter in {op}: {detail}")]
    Singular { op: &'static str, detail: String },

    /// A truncated basis or k-band is too small for the requested state.
    #[error("truncation error in {op}: {detail}")]
    Truncation { op: &'static str, detail: String },

    /// Uncertainty product denominator vanishes.
    #[error("undefined uncertainty product: {0}")]
    UndefinedProduct(String),

    /// No sign change of the root function inside the bracket.
    #[error("no root of I_(-nu-1)({gamma}) on branch {branch}")]
    NoRoot { gamma: f64, branch: u32 },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge: estimated error {error:e} > tolerance {tolerance:e}")]
    Quadrature { error: f64, tolerance: f64 },

    /// Invalid physical configuration.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn range(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Range {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn singular(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Singular {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn truncation(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Truncation {
            op,
            detail: detail.into(),
        }
    }
}
