//! Log-majorization and weak majorization of singular spectra.
//!
//! Prefix products are always compared through log-domain sums, so spectra with
//! entries near the underflow threshold stay comparable. A zero singular value
//! contributes log 0 = -inf: a prefix whose left side hits -inf passes outright,
//! while a finite left side against a -inf right side fails.

use crate::error::{LinalgError, Result};
use crate::functions::SingularSpectrum;

/// Natural logs of a spectrum, with zeros mapped to negative infinity.
pub fn log_spectrum(s: &SingularSpectrum) -> Vec<f64> {
    s.values()
        .iter()
        .map(|&v| if v == 0.0 { f64::NEG_INFINITY } else { v.ln() })
        .collect()
}

/// Per-prefix comparison of log sequences: for every k,
/// sum_{j<=k} lhs_j <= sum_{j<=k} rhs_j + k * rel_tol.
/// Margins are the raw differences (rhs prefix - lhs prefix).
pub fn prefix_log_margins(lhs_log: &[f64], rhs_log: &[f64], rel_tol: f64) -> (bool, Vec<f64>) {
    debug_assert_eq!(lhs_log.len(), rhs_log.len());
    let mut ok = true;
    let mut margins = Vec::with_capacity(lhs_log.len());
    let mut lhs_sum = 0.0f64;
    let mut rhs_sum = 0.0f64;
    for (k, (&l, &r)) in lhs_log.iter().zip(rhs_log).enumerate() {
        lhs_sum += l;
        rhs_sum += r;
        let (pass, margin) = if lhs_sum == f64::NEG_INFINITY {
            (true, f64::INFINITY)
        } else if rhs_sum == f64::NEG_INFINITY {
            (false, f64::NEG_INFINITY)
        } else {
            (
                lhs_sum <= rhs_sum + (k + 1) as f64 * rel_tol,
                rhs_sum - lhs_sum,
            )
        };
        ok &= pass;
        margins.push(margin);
    }
    (ok, margins)
}

/// Log-majorization x <=_log y: every prefix product of x is bounded by that of y.
pub fn log_majorizes_leq(
    x: &SingularSpectrum,
    y: &SingularSpectrum,
    rel_tol: f64,
) -> Result<(bool, Vec<f64>)> {
    check(x, y, rel_tol)?;
    Ok(prefix_log_margins(
        &log_spectrum(x),
        &log_spectrum(y),
        rel_tol,
    ))
}

/// Weak majorization x <=_w y: prefix sums of x bounded by those of y, with a
/// scale-aware slack of rel_tol * k * (1 + rhs prefix) per prefix.
pub fn weakly_majorizes_leq(
    x: &SingularSpectrum,
    y: &SingularSpectrum,
    rel_tol: f64,
) -> Result<(bool, Vec<f64>)> {
    check(x, y, rel_tol)?;
    let mut ok = true;
    let mut margins = Vec::with_capacity(x.len());
    let mut lhs_sum = 0.0f64;
    let mut rhs_sum = 0.0f64;
    for (k, (&l, &r)) in x.values().iter().zip(y.values()).enumerate() {
        lhs_sum += l;
        rhs_sum += r;
        let slack = rel_tol * (k + 1) as f64 * (1.0 + rhs_sum.abs());
        ok &= lhs_sum <= rhs_sum + slack;
        margins.push(rhs_sum - lhs_sum);
    }
    Ok((ok, margins))
}

fn check(x: &SingularSpectrum, y: &SingularSpectrum, rel_tol: f64) -> Result<()> {
    if x.len() != y.len() {
        return Err(LinalgError::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if rel_tol < 0.0 {
        return Err(LinalgError::InvalidParam(
            "tolerance must be nonnegative".into(),
        ));
    }
    Ok(())
}
