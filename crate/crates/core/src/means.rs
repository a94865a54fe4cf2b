//! Matrix means of positive pairs: weighted geometric mean A^{1/2}(A^{-1/2} B A^{-1/2})^t A^{1/2},
//! the arithmetic blend (1-t)A + tB, the log-Euclidean mean exp((1-t) log A + t log B),
//! and the two-sided sandwich B^{rt/2} A^{(1-t)r} B^{rt/2}.

use crate::eig::{hermitian_eig, EigenDecomposition};
use crate::error::{LinalgError, Result};
use crate::hermitian::{HermitianMatrix, PsdMatrix};
use crate::tolerances;

/// Weight and exponent pair: t in the unit interval, r > 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanParams {
    pub t: f64,
    pub r: f64,
}

impl MeanParams {
    pub fn new(t: f64, r: f64) -> Result<Self> {
        check_weight(t)?;
        if !(r > 0.0) {
            return Err(LinalgError::InvalidParam(format!(
                "exponent r must be positive, got {r}"
            )));
        }
        Ok(Self { t, r })
    }
}

fn check_weight(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(LinalgError::InvalidParam(format!(
            "weight t must lie in [0,1], got {t}"
        )));
    }
    Ok(())
}

/// Eigendecomposition of a strictly positive matrix, regularizing once with
/// eps = 1e-10 * (1 + trace/n) when the smallest eigenvalue sits below the
/// inversion floor. Fails with `SingularMatrix` if the shift is not enough.
pub(crate) fn positive_eig(p: &PsdMatrix) -> Result<EigenDecomposition> {
    let dec = hermitian_eig(p.hermitian())?;
    let lambda_max = dec.values()[0].max(0.0);
    let lambda_min = *dec.values().last().expect("dimension at least 1");
    let threshold = tolerances::inv_threshold(lambda_max);
    if lambda_min >= threshold {
        return Ok(dec);
    }

    let n = p.dim();
    let eps = 1e-10 * (1.0 + p.matrix().trace().re / n as f64);
    let mut shifted = p.matrix().clone();
    for i in 0..n {
        shifted[(i, i)].re += eps;
    }
    let dec = hermitian_eig(&HermitianMatrix::from_symmetrized(&shifted))?;
    let lambda_max = dec.values()[0].max(0.0);
    let lambda_min = *dec.values().last().expect("dimension at least 1");
    // The shift guarantees lambda_min >= eps up to rounding, so judge against
    // eps/2; the plain inversion floor would reject every shifted matrix whose
    // top eigenvalue exceeds its mean.
    let threshold = tolerances::inv_threshold(lambda_max).min(0.5 * eps);
    if lambda_min < threshold {
        return Err(LinalgError::SingularMatrix {
            eigenvalue: lambda_min,
            threshold,
        });
    }
    Ok(dec)
}

/// Weighted geometric mean A #_t B.
pub fn geometric_mean(a: &PsdMatrix, b: &PsdMatrix, t: f64) -> Result<PsdMatrix> {
    check_weight(t)?;
    check_dims(a, b)?;
    let dec_a = positive_eig(a)?;
    let sqrt_a = dec_a.apply(|l| l.max(0.0).sqrt());
    let inv_sqrt_a = dec_a.apply(|l| 1.0 / l.max(0.0).sqrt());

    let inner = (&(&inv_sqrt_a * b.matrix()) * &inv_sqrt_a).symmetrized();
    let dec_inner = hermitian_eig(&HermitianMatrix::from_symmetrized(&inner))?;
    let inner_t = dec_inner.apply(|l| l.max(0.0).powf(t));

    let g = (&(&sqrt_a * &inner_t) * &sqrt_a).symmetrized();
    PsdMatrix::new(HermitianMatrix::from_symmetrized(&g))
}

/// Arithmetic blend (1-t) A + t B.
pub fn arithmetic_blend(a: &PsdMatrix, b: &PsdMatrix, t: f64) -> Result<PsdMatrix> {
    check_weight(t)?;
    check_dims(a, b)?;
    let m = &a.matrix().scaled_re(1.0 - t) + &b.matrix().scaled_re(t);
    PsdMatrix::new(HermitianMatrix::from_symmetrized(&m))
}

/// Log-Euclidean mean exp((1-t) log A + t log B).
pub fn log_euclidean(a: &PsdMatrix, b: &PsdMatrix, t: f64) -> Result<PsdMatrix> {
    check_weight(t)?;
    check_dims(a, b)?;
    let log_a = positive_eig(a)?.apply(f64::ln);
    let log_b = positive_eig(b)?.apply(f64::ln);
    let blend = &log_a.scaled_re(1.0 - t) + &log_b.scaled_re(t);
    let dec = hermitian_eig(&HermitianMatrix::from_symmetrized(&blend))?;
    let min_exp = dec
        .values()
        .iter()
        .map(|&l| l.exp())
        .fold(f64::INFINITY, f64::min);
    let m = HermitianMatrix::new(dec.apply(f64::exp))?;
    Ok(PsdMatrix::from_certified(m, min_exp))
}

/// Sandwich product B^{rt/2} A^{(1-t)r} B^{rt/2}.
pub fn sandwich(a: &PsdMatrix, b: &PsdMatrix, t: f64, r: f64) -> Result<PsdMatrix> {
    let params = MeanParams::new(t, r)?;
    check_dims(a, b)?;
    let outer = crate::functions::matrix_power(b, params.r * params.t / 2.0)?;
    let core = crate::functions::matrix_power(a, (1.0 - params.t) * params.r)?;
    let m = (&(outer.matrix() * core.matrix()) * outer.matrix()).symmetrized();
    PsdMatrix::new(HermitianMatrix::from_symmetrized(&m))
}

fn check_dims(a: &PsdMatrix, b: &PsdMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(LinalgError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}
