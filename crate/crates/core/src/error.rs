use thiserror::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the solvers and generators.
#[derive(Debug, Error)]
pub enum Error {
    /// Two fields (or a field and a table) live on different grids.
    #[error("grid mismatch: expected {expected} interior points per axis, got {got}")]
    GridMismatch { expected: usize, got: usize },

    /// A constructor was handed values that violate a type invariant.
    #[error("invalid {what}: {why}")]
    Invalid { what: &'static str, why: String },

    /// A batch operation was given no samples.
    #[error("empty batch")]
    EmptyBatch,

    /// A dataset mix does not describe a probability distribution.
    #[error("invalid mix: {0}")]
    InvalidMix(String),

    /// The noise schedule's top level is too small for some mode's
    /// measurement-uncertainty scale, so an initialization variance would be
    /// negative.
    #[error(
        "intractable configuration at mode ({n},{m}): sigma_T = {sigma_t} \
         must exceed the mode's uncertainty scale {threshold}"
    )]
    Tractability {
        n: usize,
        m: usize,
        sigma_t: f64,
        threshold: f64,
    },

    /// A denoiser implementation failed (e.g. a child process died).
    #[error("denoiser failure: {0}")]
    Denoiser(String),
}

impl Error {
    pub(crate) fn invalid(what: &'static str, why: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            why: why.into(),
        }
    }
}
