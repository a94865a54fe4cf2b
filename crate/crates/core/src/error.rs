use thiserror::Error;

/// Errors produced by the linear-algebra kernels and the structures built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal mass {off_diag:.3e})")]
    NonConvergence { sweeps: usize, off_diag: f64 },

    #[error("matrix is numerically singular (eigenvalue {eigenvalue:.3e} below threshold {threshold:.3e})")]
    SingularMatrix { eigenvalue: f64, threshold: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian: defect {defect:.3e} exceeds {allowed:.3e}")]
    NotHermitian { defect: f64, allowed: f64 },

    #[error("matrix is not positive semidefinite: minimum eigenvalue {min_eig:.3e}")]
    NotPsd { min_eig: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
}

/// Errors produced by the randomized samplers.
#[derive(Debug, Error)]
pub enum SampleError {
    #[error("rejection sampler exhausted its budget of {budget} attempts")]
    RejectionBudgetExceeded { budget: usize },

    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, LinalgError>;
