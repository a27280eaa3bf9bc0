use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid initial data: {0}")]
    InvalidInitialData(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("representation mismatch: expected {expected:?}, got {got:?}")]
    Representation {
        expected: crate::state::Representation,
        got: crate::state::Representation,
    },

    #[error("reciprocal undefined: u changes sign or vanishes on the grid (min u = {min_u:.3e})")]
    SignChange { min_u: f64 },

    #[error("v vanishes on the grid (min |v| = {min_v:.3e}); blow up reached in reciprocal form")]
    VVanishes { min_v: f64 },

    #[error("singular linear system in {context}")]
    SingularSystem { context: &'static str },

    #[error("fit failed: {0}")]
    FitFailed(String),

    #[error("series truncation target unreachable: {0}")]
    SeriesTruncation(String),

    #[error("quadrature did not converge (best estimate {estimate:.6e}, error {err:.3e})")]
    QuadratureNoConvergence { estimate: f64, err: f64 },

    #[error("step size underflow at t = {t} (h = {h:.3e})")]
    StepUnderflow { t: f64, h: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed checkpoint: {0}")]
    Checkpoint(String),
}
