//! 2x2 block matrices H = [[A, X], [X*, B]]: embedding, partial transpose,
//! PPT certification, Schur-complement cross-check, and the block transforms
//! used throughout the inequality checks.

use num_complex::Complex64;

use crate::error::{LinalgError, Result};
use crate::functions::polar_decompose;
use crate::hermitian::{is_psd, HermitianMatrix, PsdMatrix};
use crate::matrix::ComplexMatrix;
use crate::means::{geometric_mean, positive_eig};

/// The triple (A, X, B) with all blocks sharing one dimension.
#[derive(Clone, Debug)]
pub struct Block2x2 {
    a: HermitianMatrix,
    x: ComplexMatrix,
    b: HermitianMatrix,
}

/// Raw minimum eigenvalues of H and H^tau plus the PPT verdict at the tolerance
/// the certificate was issued under.
#[derive(Clone, Copy, Debug)]
pub struct PptCertificate {
    pub h_min_eig: f64,
    pub h_tau_min_eig: f64,
    pub is_ppt: bool,
}

impl Block2x2 {
    pub fn new(a: HermitianMatrix, x: ComplexMatrix, b: HermitianMatrix) -> Result<Self> {
        if a.dim() != x.dim() {
            return Err(LinalgError::DimensionMismatch {
                left: a.dim(),
                right: x.dim(),
            });
        }
        if a.dim() != b.dim() {
            return Err(LinalgError::DimensionMismatch {
                left: a.dim(),
                right: b.dim(),
            });
        }
        Ok(Self { a, x, b })
    }

    pub fn a(&self) -> &HermitianMatrix {
        &self.a
    }

    pub fn x(&self) -> &ComplexMatrix {
        &self.x
    }

    pub fn b(&self) -> &HermitianMatrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// The 2n x 2n carrier [[A, X], [X*, B]].
    pub fn embed(&self) -> HermitianMatrix {
        let n = self.dim();
        let m = ComplexMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
            (true, true) => self.a.matrix()[(i, j)],
            (true, false) => self.x[(i, j - n)],
            (false, true) => self.x[(j, i - n)].conj(),
            (false, false) => self.b.matrix()[(i - n, j - n)],
        });
        HermitianMatrix::new(m).expect("quadrant assembly preserves hermiticity")
    }

    /// Swap the off-diagonal blocks with their adjoints: (A, X, B) -> (A, X*, B).
    pub fn partial_transpose(&self) -> Block2x2 {
        Block2x2 {
            a: self.a.clone(),
            x: self.x.adjoint(),
            b: self.b.clone(),
        }
    }

    /// PPT certificate from the eigenvalues of both 2n x 2n embeddings.
    pub fn is_ppt(&self, tol: f64) -> Result<PptCertificate> {
        let (h_ok, h_min_eig) = is_psd(&self.embed(), tol)?;
        let (tau_ok, h_tau_min_eig) = is_psd(&self.partial_transpose().embed(), tol)?;
        Ok(PptCertificate {
            h_min_eig,
            h_tau_min_eig,
            is_ppt: h_ok && tau_ok,
        })
    }

    /// Schur-complement positivity: B - X* A^{-1} X >= 0 for strictly positive A.
    /// Cross-validates the first component of `is_ppt` when A is invertible.
    pub fn schur_check(&self) -> Result<bool> {
        let a = PsdMatrix::new(self.a.clone())?;
        let dec = positive_eig(&a)?;
        let a_inv = dec.apply(|l| 1.0 / l.max(f64::MIN_POSITIVE));
        let product = &(&self.x.adjoint() * &a_inv) * &self.x;
        let complement = self.b.matrix() - &product;
        let (ok, _) = is_psd(&HermitianMatrix::from_symmetrized(&complement), 1e-9)?;
        Ok(ok)
    }

    /// Geodesic transform of Lemma form: (A, X, B) -> (A #_t B, X, A #_{1-t} B).
    pub fn geodesic_block(&self, t: f64) -> Result<Block2x2> {
        let a = PsdMatrix::new(self.a.clone())?;
        let b = PsdMatrix::new(self.b.clone())?;
        let top = geometric_mean(&a, &b, t)?;
        let bottom = geometric_mean(&a, &b, 1.0 - t)?;
        Block2x2::new(
            top.hermitian().clone(),
            self.x.clone(),
            bottom.hermitian().clone(),
        )
    }

    /// Rotates a PSD block into PPT form: with X = U |X|, returns
    /// ((U* A U, |X|, B), U). The output has a Hermitian off-diagonal block,
    /// so it is fixed by the partial transpose.
    pub fn polar_rotate(&self) -> Result<(Block2x2, ComplexMatrix)> {
        let (psd_ok, min_eig) = is_psd(&self.embed(), 1e-9)?;
        if !psd_ok {
            return Err(LinalgError::NotPsd { min_eig });
        }
        let (u, p) = polar_decompose(&self.x)?;
        let rotated = (&(&u.adjoint() * self.a.matrix()) * &u).symmetrized();
        let block = Block2x2::new(
            HermitianMatrix::from_symmetrized(&rotated),
            p.matrix().clone(),
            self.b.clone(),
        )?;
        Ok((block, u))
    }
}

/// Entrywise (Hadamard) product.
pub fn hadamard(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
    if x.dim() != y.dim() {
        return Err(LinalgError::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(ComplexMatrix::from_fn(x.dim(), |i, j| x[(i, j)] * y[(i, j)]))
}

/// Hadamard product with the identity: keeps the diagonal, zeroes the rest.
pub fn diagonal_part(x: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(x.dim(), |i, j| {
        if i == j {
            x[(i, j)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}
