//! Numerical machinery for 2x2 positive-partial-transpose block matrices:
//! dense complex linear algebra, weighted matrix means, singular-spectrum
//! orders, seeded samplers, and randomized checks for the singular-value and
//! unitarily-invariant-norm inequalities that connect the off-diagonal block
//! of a PPT matrix to the means of its diagonal blocks.

pub mod blocks;
pub mod eig;
pub mod error;
pub mod functions;
pub mod hermitian;
pub mod majorization;
pub mod matrix;
pub mod means;
pub mod norms;
pub mod sampling;
pub mod tolerances;
pub mod verifier;

pub use blocks::{hadamard, Block2x2, PptCertificate};
pub use eig::{hermitian_eig, EigenDecomposition};
pub use error::{LinalgError, Result, SampleError};
pub use functions::{
    matrix_exp, matrix_log, matrix_power, polar_decompose, singular_values,
    singular_values_hermitian, SingularSpectrum,
};
pub use hermitian::{is_psd, HermitianMatrix, PsdMatrix};
pub use majorization::{log_majorizes_leq, weakly_majorizes_leq};
pub use matrix::ComplexMatrix;
pub use means::{arithmetic_blend, geometric_mean, log_euclidean, sandwich, MeanParams};
pub use norms::{gamma_norm, ky_fan_norm, schatten_norm, GammaWeights, NormFamily};
pub use sampling::{PptSampleKind, SamplerConfig, SamplerMix};
pub use verifier::{CheckReport, StageMargins, Verdict};
