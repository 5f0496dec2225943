use std::path::PathBuf;

/// Errors raised by the kernels, systems, integrators and the experiment harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Argument lies on or too close to the branch cut of `log` / `dexp⁻¹`.
    #[error("branch cut: angle {angle} is outside the principal domain (limit {limit})")]
    BranchCut { angle: f64, limit: f64 },

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("fixed-point iteration did not converge after {iterations} iterations (last change {change:e})")]
    NoConvergence { iterations: usize, change: f64 },

    #[error("fixed-point iteration diverged after {iterations} iterations (state norm {norm:e})")]
    Divergence { iterations: usize, norm: f64 },

    #[error("two-form sign calibration is missing")]
    CalibrationMissing,

    #[error("step {step} failed: {source}")]
    StepFailed {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error on {}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    /// True for failures of the nonlinear stage solver (possibly wrapped in a step index).
    pub fn is_solver_failure(&self) -> bool {
        match self {
            Error::NoConvergence { .. } | Error::Divergence { .. } | Error::Singularity(_) => true,
            Error::StepFailed { source, .. } => source.is_solver_failure(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
