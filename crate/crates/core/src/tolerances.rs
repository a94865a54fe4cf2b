//! Scale-aware numerical thresholds shared across the crate.

/// Positive-semidefiniteness slack: eigenvalues above `-psd_threshold(lmax)` count as nonnegative.
pub fn psd_threshold(lambda_max: f64) -> f64 {
    1e-9 * (1.0 + lambda_max.abs())
}

/// Invertibility floor: eigenvalues below this make inversions and logs refuse to proceed.
pub fn inv_threshold(lambda_max: f64) -> f64 {
    1e-10 * (1.0 + lambda_max.abs())
}

/// Allowed conjugate-symmetry defect for a matrix claimed Hermitian.
pub fn hermitian_threshold(frobenius_norm: f64) -> f64 {
    1e-12 * (1.0 + frobenius_norm)
}
