//! Hermitian and positive-semidefinite wrappers with validated invariants.

use crate::eig::hermitian_eig;
use crate::error::{LinalgError, Result};
use crate::matrix::ComplexMatrix;
use crate::tolerances;

/// A complex matrix whose conjugate-symmetry defect is within the scale-aware tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    base: ComplexMatrix,
}

impl HermitianMatrix {
    /// Validates conjugate symmetry up to `1e-12 * (1 + ||M||_F)`.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let allowed = tolerances::hermitian_threshold(m.frobenius_norm());
        let defect = m.hermitian_defect();
        if defect > allowed {
            return Err(LinalgError::NotHermitian { defect, allowed });
        }
        Ok(Self { base: m })
    }

    /// Wraps the Hermitian part (M + M*)/2; never fails.
    pub fn from_symmetrized(m: &ComplexMatrix) -> Self {
        Self {
            base: m.symmetrized(),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.base
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }
}

/// A Hermitian matrix certified positive semidefinite at construction time.
///
/// The certificate stores the smallest eigenvalue seen when the wrapper was built,
/// so downstream reports can re-adjudicate at any tolerance.
#[derive(Clone, Debug)]
pub struct PsdMatrix {
    base: HermitianMatrix,
    min_eig: f64,
}

impl PsdMatrix {
    /// Runs an eigendecomposition and rejects matrices whose smallest eigenvalue
    /// falls below the scale-aware PSD threshold.
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let dec = hermitian_eig(&h)?;
        let lambda_max = dec.values()[0];
        let min_eig = *dec.values().last().expect("dimension is at least 1");
        if min_eig < -tolerances::psd_threshold(lambda_max) {
            return Err(LinalgError::NotPsd { min_eig });
        }
        Ok(Self { base: h, min_eig })
    }

    /// Wraps a matrix whose smallest eigenvalue is already known from construction
    /// (for example after assembling `V f(L) V*` with a nonnegative spectrum).
    pub(crate) fn from_certified(base: HermitianMatrix, min_eig: f64) -> Self {
        Self { base, min_eig }
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.base
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.base.matrix()
    }

    pub fn min_eig_certificate(&self) -> f64 {
        self.min_eig
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }
}

/// PSD test with an explicit tolerance: true iff the smallest eigenvalue stays above
/// `-tol * (1 + max |eigenvalue|)`. The witness eigenvalue is returned either way.
pub fn is_psd(h: &HermitianMatrix, tol: f64) -> Result<(bool, f64)> {
    let dec = hermitian_eig(h)?;
    let first = dec.values()[0];
    let last = *dec.values().last().expect("dimension is at least 1");
    let magnitude = first.abs().max(last.abs());
    Ok((last >= -tol * (1.0 + magnitude), last))
}
