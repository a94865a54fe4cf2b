//! Unitarily invariant norms: Ky Fan, Schatten, and weighted gamma norms.
//!
//! Every norm here is a function of the singular spectrum alone. The norm
//! family used by the inequality checks combines the Ky Fan extreme weights
//! (whose dominance already decides every unitarily invariant norm), a fixed
//! Schatten set, and a batch of random gamma vectors normalized to gamma_1 = 1.

use crate::error::{LinalgError, Result};
use crate::functions::{singular_values, SingularSpectrum};
use crate::matrix::ComplexMatrix;

/// Descending nonnegative weights defining ||X||_gamma = sum_j gamma_j s_j(X).
#[derive(Clone, Debug, PartialEq)]
pub struct GammaWeights {
    gamma: Vec<f64>,
}

impl GammaWeights {
    pub fn new(gamma: Vec<f64>) -> Result<Self> {
        if gamma.is_empty() {
            return Err(LinalgError::InvalidParam("empty weight vector".into()));
        }
        for w in gamma.windows(2) {
            if w[1] > w[0] {
                return Err(LinalgError::InvalidParam(
                    "gamma weights must be sorted descending".into(),
                ));
            }
        }
        if *gamma.last().unwrap() < 0.0 {
            return Err(LinalgError::InvalidParam(
                "gamma weights must be nonnegative".into(),
            ));
        }
        Ok(Self { gamma })
    }

    pub fn weights(&self) -> &[f64] {
        &self.gamma
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }
}

/// Sum of the k largest singular values (1-based k).
pub fn ky_fan_norm(x: &ComplexMatrix, k: usize) -> Result<f64> {
    let s = singular_values(x)?;
    ky_fan_from_spectrum(&s, k)
}

pub fn ky_fan_from_spectrum(s: &SingularSpectrum, k: usize) -> Result<f64> {
    if k == 0 || k > s.len() {
        return Err(LinalgError::IndexOutOfRange {
            index: k,
            max: s.len(),
        });
    }
    Ok(s.values()[..k].iter().sum())
}

/// Schatten p-norm, p >= 1 or infinity (the spectral norm).
pub fn schatten_norm(x: &ComplexMatrix, p: f64) -> Result<f64> {
    let s = singular_values(x)?;
    schatten_from_spectrum(&s, p)
}

pub fn schatten_from_spectrum(s: &SingularSpectrum, p: f64) -> Result<f64> {
    if p.is_infinite() && p > 0.0 {
        return Ok(s.values()[0]);
    }
    if !(p >= 1.0) {
        return Err(LinalgError::InvalidParam(format!(
            "Schatten exponent must satisfy p >= 1, got {p}"
        )));
    }
    Ok(s.values()
        .iter()
        .map(|&v| v.powf(p))
        .sum::<f64>()
        .powf(1.0 / p))
}

/// Weighted sum of descending singular values.
pub fn gamma_norm(x: &ComplexMatrix, g: &GammaWeights) -> Result<f64> {
    let s = singular_values(x)?;
    gamma_from_spectrum(&s, g)
}

pub fn gamma_from_spectrum(s: &SingularSpectrum, g: &GammaWeights) -> Result<f64> {
    if g.len() != s.len() {
        return Err(LinalgError::DimensionMismatch {
            left: g.len(),
            right: s.len(),
        });
    }
    Ok(s.values()
        .iter()
        .zip(g.weights())
        .map(|(&v, &w)| v * w)
        .sum())
}

/// A finite family of unitarily invariant norms, evaluated from one spectrum.
#[derive(Clone, Debug)]
pub struct NormFamily {
    ky_fan_all: bool,
    schatten: Vec<f64>,
    gammas: Vec<GammaWeights>,
}

/// Schatten exponents used by the standard family.
pub const STANDARD_SCHATTEN: [f64; 5] = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];

impl NormFamily {
    pub fn new(ky_fan_all: bool, schatten: Vec<f64>, gammas: Vec<GammaWeights>) -> Self {
        Self {
            ky_fan_all,
            schatten,
            gammas,
        }
    }

    /// Ky Fan (all k) plus the standard Schatten set plus the given gamma vectors.
    pub fn standard(gammas: Vec<GammaWeights>) -> Self {
        Self {
            ky_fan_all: true,
            schatten: STANDARD_SCHATTEN.to_vec(),
            gammas,
        }
    }

    /// Only the spectral norm; the degenerate family for single-norm stages.
    pub fn spectral_only() -> Self {
        Self {
            ky_fan_all: false,
            schatten: vec![f64::INFINITY],
            gammas: Vec::new(),
        }
    }

    pub fn gammas(&self) -> &[GammaWeights] {
        &self.gammas
    }

    /// Evaluates every norm in the family on one spectrum, in a stable order.
    pub fn evaluate(&self, s: &SingularSpectrum) -> Result<Vec<(String, f64)>> {
        let mut out = Vec::new();
        if self.ky_fan_all {
            for k in 1..=s.len() {
                out.push((format!("kyfan-{k}"), ky_fan_from_spectrum(s, k)?));
            }
        }
        for &p in &self.schatten {
            let label = if p.is_infinite() {
                "schatten-inf".to_string()
            } else {
                format!("schatten-{p}")
            };
            out.push((label, schatten_from_spectrum(s, p)?));
        }
        for (i, g) in self.gammas.iter().enumerate() {
            out.push((format!("gamma-{i:02}"), gamma_from_spectrum(s, g)?));
        }
        Ok(out)
    }
}
