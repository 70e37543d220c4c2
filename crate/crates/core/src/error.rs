use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// `|J(p)|` fell below the singularity guard; `‖p‖` is close to `2πk`.
    #[error("rotation vector parameterization is singular (|p| = {norm}, |J| = {jacobian:e})")]
    SingularParameterization { norm: f64, jacobian: f64 },

    #[error("grid too small: need at least {required} samples along each axis, got {got}")]
    GridTooSmall { required: usize, got: usize },

    #[error("kinematic fields are not integrable: path discrepancy {discrepancy:e} exceeds {tolerance:e}")]
    InconsistentFields { discrepancy: f64, tolerance: f64 },

    #[error("numerical blow-up at step {step} (|value| = {magnitude:e})")]
    NumericalBlowup { step: usize, magnitude: f64 },

    /// A simulation stopped early; its partial trace was still written.
    #[error("simulation stopped at step {step}: {reason}")]
    SimulationFailed { step: usize, reason: String },

    #[error("no stable step in [{dt_min:e}, {dt_max:e}]")]
    NoStableStep { dt_min: f64, dt_max: f64 },

    #[error("iterative solve did not converge: relative residual {residual:e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },

    #[error("trace is empty")]
    EmptyTrace,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid value for `{key}`: {constraint}")]
    Validation { key: String, constraint: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
