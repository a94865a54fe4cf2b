//! Witness files: the exact failing input of a check, serialized so that
//! re-loading and re-running reproduces the failure.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use ppt_core::verifier::{self, CheckReport};
use ppt_core::{Block2x2, ComplexMatrix, GammaWeights, HermitianMatrix, NormFamily, PsdMatrix};

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("witness i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("witness parse: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("witness invalid: {0}")]
    Invalid(String),
}

/// Dense matrix as nested arrays of [re, im] pairs plus an explicit dimension.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixData {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixData {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let dim = m.dim();
        let entries = (0..dim)
            .map(|i| (0..dim).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        Self { dim, entries }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, WitnessError> {
        if self.entries.len() != self.dim {
            return Err(WitnessError::Invalid("row count != dim".into()));
        }
        let mut data = Vec::with_capacity(self.dim * self.dim);
        for row in &self.entries {
            if row.len() != self.dim {
                return Err(WitnessError::Invalid("column count != dim".into()));
            }
            data.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
        }
        ComplexMatrix::from_entries(self.dim, data)
            .map_err(|e| WitnessError::Invalid(e.to_string()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessInput {
    Block {
        a: MatrixData,
        x: MatrixData,
        b: MatrixData,
    },
    PsdPair {
        a: MatrixData,
        b: MatrixData,
    },
    PairList {
        pairs: Vec<(MatrixData, MatrixData)>,
    },
    HermitianPair {
        a: MatrixData,
        b: MatrixData,
    },
    GeneralPair {
        a: MatrixData,
        b: MatrixData,
    },
    MatrixList {
        mats: Vec<MatrixData>,
    },
}

/// A reproducible failing trial: check name, parameters, tolerance, the input,
/// and the gamma vectors of the norm family when one was in play.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub check: String,
    pub trial_id: u64,
    pub t: Option<f64>,
    pub r: Option<f64>,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gammas: Option<Vec<Vec<f64>>>,
    pub input: WitnessInput,
}

impl Witness {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("witness serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, WitnessError> {
        Ok(serde_json::from_str(text)?)
    }
}

fn hermitian(m: &MatrixData) -> Result<HermitianMatrix, WitnessError> {
    HermitianMatrix::new(m.to_matrix()?).map_err(|e| WitnessError::Invalid(e.to_string()))
}

fn psd(m: &MatrixData) -> Result<PsdMatrix, WitnessError> {
    PsdMatrix::new(hermitian(m)?).map_err(|e| WitnessError::Invalid(e.to_string()))
}

fn block(a: &MatrixData, x: &MatrixData, b: &MatrixData) -> Result<Block2x2, WitnessError> {
    Block2x2::new(hermitian(a)?, x.to_matrix()?, hermitian(b)?)
        .map_err(|e| WitnessError::Invalid(e.to_string()))
}

fn family(gammas: &Option<Vec<Vec<f64>>>) -> Result<NormFamily, WitnessError> {
    let gammas = gammas
        .as_ref()
        .ok_or_else(|| WitnessError::Invalid("missing norm family".into()))?;
    let weights = gammas
        .iter()
        .map(|g| GammaWeights::new(g.clone()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| WitnessError::Invalid(e.to_string()))?;
    Ok(NormFamily::standard(weights))
}

/// Re-runs the recorded check on the recorded input.
pub fn replay(witness: &Witness) -> Result<CheckReport, WitnessError> {
    let need = |v: Option<f64>, what: &str| {
        v.ok_or_else(|| WitnessError::Invalid(format!("missing parameter {what}")))
    };
    let tol = witness.tol;
    let report = match (witness.check.as_str(), &witness.input) {
        (verifier::LEMMA_GEODESIC_PPT, WitnessInput::Block { a, x, b }) => {
            verifier::check_lemma_geodesic_ppt(&block(a, x, b)?, need(witness.t, "t")?, tol)
        }
        (verifier::LOG_MAJORIZATION_CHAIN, WitnessInput::Block { a, x, b }) => {
            verifier::check_log_majorization_chain(
                &block(a, x, b)?,
                need(witness.t, "t")?,
                need(witness.r, "r")?,
                tol,
            )
        }
        (verifier::NORM_INEQUALITY, WitnessInput::Block { a, x, b }) => {
            verifier::check_norm_inequality(
                &block(a, x, b)?,
                need(witness.t, "t")?,
                need(witness.r, "r")?,
                &family(&witness.gammas)?,
                tol,
            )
        }
        (verifier::HALF_INDEX, WitnessInput::Block { a, x, b }) => {
            verifier::check_half_index(&block(a, x, b)?, need(witness.t, "t")?, tol)
        }
        (verifier::AMGM, WitnessInput::PsdPair { a, b }) => {
            verifier::check_amgm(&psd(a)?, &psd(b)?, need(witness.t, "t")?, tol)
        }
        (verifier::BHATIA_GROVER, WitnessInput::PsdPair { a, b }) => verifier::check_bhatia_grover(
            &psd(a)?,
            &psd(b)?,
            need(witness.t, "t")?,
            need(witness.r, "r")?,
            tol,
        ),
        (verifier::AUDENAERT_CHAIN, WitnessInput::PairList { pairs }) => {
            let pairs = pairs
                .iter()
                .map(|(a, b)| Ok((psd(a)?, psd(b)?)))
                .collect::<Result<Vec<_>, WitnessError>>()?;
            verifier::check_audenaert_chain(&pairs, &family(&witness.gammas)?, tol)
        }
        (verifier::POLAR_SUM_CHAIN, WitnessInput::PairList { pairs }) => {
            let pairs = pairs
                .iter()
                .map(|(a, b)| Ok((a.to_matrix()?, b.to_matrix()?)))
                .collect::<Result<Vec<_>, WitnessError>>()?;
            verifier::check_polar_sum_chain(&pairs, &family(&witness.gammas)?, tol)
        }
        (verifier::SUM_POWER, WitnessInput::GeneralPair { a, b })
        | (verifier::SUM_POWER, WitnessInput::HermitianPair { a, b }) => {
            verifier::check_sum_power(&a.to_matrix()?, &b.to_matrix()?, need(witness.r, "r")?, tol)
        }
        (verifier::HADAMARD_PAIR, WitnessInput::HermitianPair { a, b }) => {
            verifier::check_hadamard_pair(&hermitian(a)?, &hermitian(b)?, &family(&witness.gammas)?, tol)
        }
        (verifier::HADAMARD_MULTI, WitnessInput::MatrixList { mats }) => {
            let mats = mats
                .iter()
                .map(|m| m.to_matrix())
                .collect::<Result<Vec<_>, _>>()?;
            verifier::check_hadamard_multi(&mats, &family(&witness.gammas)?, tol)
        }
        (other, _) => {
            return Err(WitnessError::Invalid(format!(
                "check `{other}` does not match the stored input kind"
            )))
        }
    };
    Ok(report)
}
