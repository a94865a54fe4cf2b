//! Singular values, matrix functions of Hermitian arguments, polar decomposition.

use num_complex::Complex64;

use crate::eig::{hermitian_eig, jacobi};
use crate::error::{LinalgError, Result};
use crate::hermitian::{HermitianMatrix, PsdMatrix};
use crate::matrix::ComplexMatrix;
use crate::tolerances;

/// Descending nonnegative singular values.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

impl SingularSpectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(LinalgError::InvalidParam("empty spectrum".into()));
        }
        for w in values.windows(2) {
            if w[1] > w[0] {
                return Err(LinalgError::InvalidParam(
                    "singular values must be sorted descending".into(),
                ));
            }
        }
        if *values.last().unwrap() < 0.0 {
            return Err(LinalgError::InvalidParam(
                "singular values must be nonnegative".into(),
            ));
        }
        Ok(Self { values })
    }

    pub(crate) fn from_sorted(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entrywise power, re-sorted descending (powf can invert near-ties by an ulp).
    pub fn powered(&self, exponent: f64) -> Self {
        let mut values: Vec<f64> = self.values.iter().map(|&s| s.powf(exponent)).collect();
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite powered values"));
        Self { values }
    }
}

/// Singular values via the eigenvalues of X*X, clipped at zero before the square root.
pub fn singular_values(x: &ComplexMatrix) -> Result<SingularSpectrum> {
    let dec = jacobi(&x.gram())?;
    Ok(SingularSpectrum::from_sorted(
        dec.values().iter().map(|&l| l.max(0.0).sqrt()).collect(),
    ))
}

/// Singular values of a Hermitian matrix: the sorted absolute eigenvalues.
///
/// Equivalent to `singular_values` on the same input but avoids squaring the
/// condition number, which matters for the small end of the spectrum.
pub fn singular_values_hermitian(h: &HermitianMatrix) -> Result<SingularSpectrum> {
    let dec = hermitian_eig(h)?;
    let mut values: Vec<f64> = dec.values().iter().map(|&l| l.abs()).collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    Ok(SingularSpectrum::from_sorted(values))
}

/// `P^p` through the eigendecomposition, with negative eigenvalues clipped to zero
/// before fractional powers. `p = 0` and `p = 1` short-circuit to `I` and `P`.
pub fn matrix_power(p: &PsdMatrix, exponent: f64) -> Result<PsdMatrix> {
    if exponent == 0.0 {
        let h = HermitianMatrix::new(ComplexMatrix::identity(p.dim()))?;
        return Ok(PsdMatrix::from_certified(h, 1.0));
    }
    if exponent == 1.0 {
        return Ok(p.clone());
    }
    let dec = hermitian_eig(p.hermitian())?;
    let lambda_max = dec.values()[0].max(0.0);
    if exponent < 0.0 {
        let lambda_min = *dec.values().last().expect("dimension at least 1");
        let threshold = tolerances::inv_threshold(lambda_max);
        if lambda_min < threshold {
            return Err(LinalgError::SingularMatrix {
                eigenvalue: lambda_min,
                threshold,
            });
        }
    }
    let f = |l: f64| l.max(0.0).powf(exponent);
    let mapped_min = dec
        .values()
        .iter()
        .map(|&l| f(l))
        .fold(f64::INFINITY, f64::min);
    let h = HermitianMatrix::new(dec.apply(f))?;
    Ok(PsdMatrix::from_certified(h, mapped_min))
}

/// Matrix logarithm of a strictly positive matrix.
pub fn matrix_log(p: &PsdMatrix) -> Result<HermitianMatrix> {
    let dec = hermitian_eig(p.hermitian())?;
    let lambda_max = dec.values()[0].max(0.0);
    let lambda_min = *dec.values().last().expect("dimension at least 1");
    let threshold = tolerances::inv_threshold(lambda_max);
    if lambda_min < threshold {
        return Err(LinalgError::SingularMatrix {
            eigenvalue: lambda_min,
            threshold,
        });
    }
    HermitianMatrix::new(dec.apply(f64::ln))
}

/// Matrix exponential of a Hermitian matrix; the result is positive definite.
pub fn matrix_exp(h: &HermitianMatrix) -> Result<PsdMatrix> {
    let dec = hermitian_eig(h)?;
    let min_exp = dec
        .values()
        .iter()
        .map(|&l| l.exp())
        .fold(f64::INFINITY, f64::min);
    let m = HermitianMatrix::new(dec.apply(f64::exp))?;
    Ok(PsdMatrix::from_certified(m, min_exp))
}

/// Polar decomposition X = U |X| with U unitary and |X| = (X*X)^{1/2}.
///
/// For rank-deficient inputs the unitary factor is completed on the kernel by
/// extending the computed columns to a full orthonormal basis.
pub fn polar_decompose(x: &ComplexMatrix) -> Result<(ComplexMatrix, PsdMatrix)> {
    let n = x.dim();
    let dec = jacobi(&x.gram())?;
    let sigmas: Vec<f64> = dec.values().iter().map(|&l| l.max(0.0).sqrt()).collect();
    let p_matrix = dec.apply(|l| l.max(0.0).sqrt());
    let p = PsdMatrix::from_certified(
        HermitianMatrix::new(p_matrix)?,
        *sigmas.last().expect("dimension at least 1"),
    );

    let cutoff = sigmas[0] * 1e-12 * n as f64;
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for (k, &sigma) in sigmas.iter().enumerate() {
        if sigma <= cutoff {
            break;
        }
        // w_k = X v_k / sigma_k; orthonormalize against earlier columns for hygiene.
        let mut col: Vec<Complex64> = (0..n)
            .map(|i| {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    acc += x[(i, j)] * dec.vectors()[(j, k)];
                }
                acc / sigma
            })
            .collect();
        orthogonalize(&mut col, &columns);
        normalize(&mut col);
        columns.push(col);
    }
    while columns.len() < n {
        columns.push(best_kernel_extension(n, &columns));
    }

    let w = ComplexMatrix::from_fn(n, |i, j| columns[j][i]);
    let u = &w * &dec.vectors().adjoint();
    Ok((u, p))
}

fn orthogonalize(col: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for b in basis {
        let mut overlap = Complex64::new(0.0, 0.0);
        for (c, e) in col.iter().zip(b) {
            overlap += e.conj() * c;
        }
        for (c, e) in col.iter_mut().zip(b) {
            *c -= e * overlap;
        }
    }
}

fn normalize(col: &mut [Complex64]) {
    let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for c in col.iter_mut() {
            *c /= norm;
        }
    }
}

/// Greedy completion: among standard basis vectors, keep the one with the
/// largest residual after projecting out the current columns.
fn best_kernel_extension(n: usize, basis: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for k in 0..n {
        let mut cand = vec![Complex64::new(0.0, 0.0); n];
        cand[k] = Complex64::new(1.0, 0.0);
        orthogonalize(&mut cand, basis);
        let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if best.as_ref().map_or(true, |(b, _)| norm > *b) {
            best = Some((norm, cand));
        }
    }
    let (_, mut col) = best.expect("n >= 1 candidates");
    orthogonalize(&mut col, basis);
    normalize(&mut col);
    col
}
