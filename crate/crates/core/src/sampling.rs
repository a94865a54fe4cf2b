//! Seeded, reproducible generators for every matrix family the inequality
//! checks quantify over.
//!
//! Each draw derives its own ChaCha stream from (master_seed, stream_id, tag)
//! through a splitmix chain, so trials are order-independent and identical
//! configurations reproduce identical matrices bit for bit.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::blocks::Block2x2;
use crate::error::{Result, SampleError};
use crate::functions::{matrix_power, singular_values};
use crate::hermitian::{HermitianMatrix, PsdMatrix};
use crate::matrix::ComplexMatrix;
use crate::norms::GammaWeights;

/// Seed, dimension and Gaussian scale shared by all generators.
#[derive(Clone, Copy, Debug)]
pub struct SamplerConfig {
    pub master_seed: u64,
    pub dim: usize,
    pub scale: f64,
}

/// Which construction a PPT block sample comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PptSampleKind {
    /// Hermitian off-diagonal block: the partial transpose fixes H.
    HermitianOffdiag,
    /// A PSD Gram block rotated by the polar unitary of its off-diagonal.
    PolarRotated,
    /// X = A^{1/2} K B^{1/2} with contraction K, resampled until H^tau >= 0.
    RejectionGeneral,
    /// Sum of Gram blocks with Hermitian off-diagonal products.
    GramSum,
    /// Sums built from positive commuting pairs in shared eigenbases.
    CommutingPairs,
}

impl PptSampleKind {
    pub const ALL: [PptSampleKind; 5] = [
        PptSampleKind::HermitianOffdiag,
        PptSampleKind::PolarRotated,
        PptSampleKind::RejectionGeneral,
        PptSampleKind::GramSum,
        PptSampleKind::CommutingPairs,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PptSampleKind::HermitianOffdiag => "hermitian_offdiag",
            PptSampleKind::PolarRotated => "polar_rotated",
            PptSampleKind::RejectionGeneral => "rejection_general",
            PptSampleKind::GramSum => "gram_sum",
            PptSampleKind::CommutingPairs => "commuting_pairs",
        }
    }

    fn tag(&self) -> u64 {
        match self {
            PptSampleKind::HermitianOffdiag => 0x10,
            PptSampleKind::PolarRotated => 0x11,
            PptSampleKind::RejectionGeneral => 0x12,
            PptSampleKind::GramSum => 0x13,
            PptSampleKind::CommutingPairs => 0x14,
        }
    }
}

/// Relative weights over the PPT sample kinds, in `PptSampleKind::ALL` order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplerMix {
    pub weights: [f64; 5],
}

impl Default for SamplerMix {
    /// The default campaign mix: 40/40/20 over the guaranteed generators and
    /// rejection sampling; the structured sum variants are opt-in.
    fn default() -> Self {
        Self {
            weights: [0.4, 0.4, 0.2, 0.0, 0.0],
        }
    }
}

impl SamplerMix {
    pub fn pick(&self, rng: &mut impl Rng) -> PptSampleKind {
        let total: f64 = self.weights.iter().sum();
        if total <= 0.0 {
            return PptSampleKind::HermitianOffdiag;
        }
        let mut draw = rng.gen_range(0.0..total);
        for (kind, &w) in PptSampleKind::ALL.iter().zip(&self.weights) {
            if draw < w {
                return *kind;
            }
            draw -= w;
        }
        PptSampleKind::CommutingPairs
    }
}

const TAG_COMPLEX: u64 = 0x01;
const TAG_HERMITIAN: u64 = 0x02;
const TAG_UNITARY: u64 = 0x03;
const TAG_PSD: u64 = 0x04;
const TAG_CONTRACTION: u64 = 0x05;
const TAG_COMMUTING: u64 = 0x06;
const TAG_GAMMA: u64 = 0x07;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl SamplerConfig {
    /// Stream for one (stream_id, tag) pair.
    pub fn rng(&self, stream_id: u64, tag: u64) -> ChaCha8Rng {
        let mut state = self
            .master_seed
            .wrapping_add(stream_id.wrapping_mul(0xA076_1D64_78BD_642F))
            .wrapping_add(tag.wrapping_mul(0xE703_7ED1_A0B4_28DB));
        let mut seed = [0u8; 32];
        for chunk in seed.chunks_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        ChaCha8Rng::from_seed(seed)
    }
}

fn gaussian_matrix(rng: &mut impl Rng, dim: usize, scale: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    })
}

fn hermitian_gaussian(rng: &mut impl Rng, dim: usize, scale: f64) -> HermitianMatrix {
    HermitianMatrix::from_symmetrized(&gaussian_matrix(rng, dim, scale))
}

fn gram_psd(rng: &mut impl Rng, dim: usize, scale: f64) -> Result<PsdMatrix> {
    let g = gaussian_matrix(rng, dim, scale);
    PsdMatrix::new(HermitianMatrix::new(g.gram())?)
}

/// V diag(d) V* with exact conjugate symmetry; `d` may be complex only through
/// the caller pre-multiplying entries, here entries are real.
fn conjugate_real_diag(u: &ComplexMatrix, diag: &[f64]) -> ComplexMatrix {
    let n = u.dim();
    let mut out = ComplexMatrix::zeros(n);
    for k in 0..n {
        if diag[k] == 0.0 {
            continue;
        }
        for i in 0..n {
            let uik = u[(i, k)];
            for j in i..n {
                out[(i, j)] += uik * u[(j, k)].conj() * diag[k];
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            out[(j, i)] = out[(i, j)].conj();
        }
        out[(i, i)].im = 0.0;
    }
    out
}

fn unitary_from(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    loop {
        let g = gaussian_matrix(rng, dim, 1.0);
        if let Some(q) = gram_schmidt_unitary(&g) {
            return q;
        }
    }
}

fn gram_schmidt_unitary(g: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = g.dim();
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut col: Vec<Complex64> = (0..n).map(|i| g[(i, j)]).collect();
        for b in &cols {
            let mut overlap = Complex64::new(0.0, 0.0);
            for (c, e) in col.iter().zip(b) {
                overlap += e.conj() * c;
            }
            for (c, e) in col.iter_mut().zip(b) {
                *c -= e * overlap;
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        for c in col.iter_mut() {
            *c /= norm;
        }
        cols.push(col);
    }
    Some(ComplexMatrix::from_fn(n, |i, j| cols[j][i]))
}

/// An n x n matrix with i.i.d. complex Gaussian entries.
pub fn random_complex(cfg: &SamplerConfig, stream_id: u64) -> ComplexMatrix {
    let mut rng = cfg.rng(stream_id, TAG_COMPLEX);
    gaussian_matrix(&mut rng, cfg.dim, cfg.scale)
}

/// A Gaussian Hermitian matrix (not necessarily positive).
pub fn random_hermitian(cfg: &SamplerConfig, stream_id: u64) -> HermitianMatrix {
    let mut rng = cfg.rng(stream_id, TAG_HERMITIAN);
    hermitian_gaussian(&mut rng, cfg.dim, cfg.scale)
}

/// A Haar-distributed unitary via Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary(cfg: &SamplerConfig, stream_id: u64) -> ComplexMatrix {
    let mut rng = cfg.rng(stream_id, TAG_UNITARY);
    unitary_from(&mut rng, cfg.dim)
}

/// Gram matrix G*G of a Gaussian G; positive semidefinite by construction.
pub fn random_psd(cfg: &SamplerConfig, stream_id: u64) -> Result<PsdMatrix> {
    let mut rng = cfg.rng(stream_id, TAG_PSD);
    gram_psd(&mut rng, cfg.dim, cfg.scale)
}

/// A contraction: a Gaussian matrix scaled down by its spectral norm.
pub fn random_contraction(cfg: &SamplerConfig, stream_id: u64) -> Result<ComplexMatrix> {
    let mut rng = cfg.rng(stream_id, TAG_CONTRACTION);
    contraction_from(&mut rng, cfg.dim, cfg.scale)
}

fn contraction_from(rng: &mut impl Rng, dim: usize, scale: f64) -> Result<ComplexMatrix> {
    let g = gaussian_matrix(rng, dim, scale);
    let top = singular_values(&g)?.values()[0];
    if top == 0.0 {
        return Ok(g);
    }
    Ok(g.scaled_re(1.0 / top))
}

/// Positive commuting pair sharing one random eigenbasis.
pub fn random_commuting_pair(cfg: &SamplerConfig, stream_id: u64) -> (PsdMatrix, PsdMatrix) {
    let mut rng = cfg.rng(stream_id, TAG_COMMUTING);
    commuting_pair_from(&mut rng, cfg.dim, cfg.scale)
}

fn commuting_pair_from(rng: &mut impl Rng, dim: usize, scale: f64) -> (PsdMatrix, PsdMatrix) {
    let u = unitary_from(rng, dim);
    let d: Vec<f64> = (0..dim)
        .map(|_| {
            let g: f64 = rng.sample(StandardNormal);
            (g * scale) * (g * scale)
        })
        .collect();
    let e: Vec<f64> = (0..dim)
        .map(|_| {
            let g: f64 = rng.sample(StandardNormal);
            (g * scale) * (g * scale)
        })
        .collect();
    let min_d = d.iter().cloned().fold(f64::INFINITY, f64::min);
    let min_e = e.iter().cloned().fold(f64::INFINITY, f64::min);
    let a = PsdMatrix::from_certified(
        HermitianMatrix::from_symmetrized(&conjugate_real_diag(&u, &d)),
        min_d,
    );
    let b = PsdMatrix::from_certified(
        HermitianMatrix::from_symmetrized(&conjugate_real_diag(&u, &e)),
        min_e,
    );
    (a, b)
}

/// Descending random weights normalized to gamma_1 = 1.
pub fn random_gamma_weights(cfg: &SamplerConfig, stream_id: u64, n: usize) -> GammaWeights {
    let mut rng = cfg.rng(stream_id, TAG_GAMMA);
    let mut raw: Vec<f64> = (0..n)
        .map(|_| {
            let g: f64 = rng.sample(StandardNormal);
            g.abs()
        })
        .collect();
    raw.sort_by(|a, b| b.partial_cmp(a).expect("finite weights"));
    if raw[0] == 0.0 {
        raw[0] = 1.0;
    }
    let top = raw[0];
    GammaWeights::new(raw.into_iter().map(|w| w / top).collect())
        .expect("sorted nonnegative weights")
}

const REJECTION_BUDGET: usize = 1000;
const CERTIFY_RETRIES: usize = 32;

/// One PPT block from the requested construction, certified by `is_ppt` at the
/// scale-aware PSD tolerance before it is returned.
pub fn random_ppt_block(
    cfg: &SamplerConfig,
    stream_id: u64,
    kind: PptSampleKind,
) -> std::result::Result<Block2x2, SampleError> {
    let mut rng = cfg.rng(stream_id, kind.tag());
    match kind {
        PptSampleKind::HermitianOffdiag => hermitian_offdiag_block(&mut rng, cfg),
        PptSampleKind::PolarRotated => polar_rotated_block(&mut rng, cfg),
        PptSampleKind::RejectionGeneral => rejection_block(&mut rng, cfg),
        PptSampleKind::GramSum => sum_block(&mut rng, cfg, true),
        PptSampleKind::CommutingPairs => sum_block(&mut rng, cfg, false),
    }
}

fn hermitian_offdiag_block(
    rng: &mut impl Rng,
    cfg: &SamplerConfig,
) -> std::result::Result<Block2x2, SampleError> {
    let n = cfg.dim;
    for _ in 0..CERTIFY_RETRIES {
        let a = gram_psd(rng, n, cfg.scale)?;
        let b = gram_psd(rng, n, cfg.scale)?;
        let (inv_sqrt_a, inv_sqrt_b) =
            match (matrix_power(&a, -0.5), matrix_power(&b, -0.5)) {
                (Ok(x), Ok(y)) => (x, y),
                // Near-singular Gram draw: try a fresh one.
                _ => continue,
            };
        let w = hermitian_gaussian(rng, n, cfg.scale);
        let conjugated = &(inv_sqrt_a.matrix() * w.matrix()) * inv_sqrt_b.matrix();
        let top = singular_values(&conjugated)?.values()[0];
        let x = if top == 0.0 {
            ComplexMatrix::zeros(n)
        } else {
            let theta: f64 = rng.gen_range(0.0..1.0);
            w.matrix().scaled_re(theta / top)
        };
        let blk = Block2x2::new(a.hermitian().clone(), x, b.hermitian().clone())?;
        if blk.is_ppt(1e-9)?.is_ppt {
            return Ok(blk);
        }
    }
    Err(SampleError::RejectionBudgetExceeded {
        budget: CERTIFY_RETRIES,
    })
}

fn polar_rotated_block(
    rng: &mut impl Rng,
    cfg: &SamplerConfig,
) -> std::result::Result<Block2x2, SampleError> {
    let n = cfg.dim;
    for _ in 0..CERTIFY_RETRIES {
        let g = gaussian_matrix(rng, 2 * n, cfg.scale);
        let big = g.gram();
        let a = HermitianMatrix::new(ComplexMatrix::from_fn(n, |i, j| big[(i, j)]))?;
        let x = ComplexMatrix::from_fn(n, |i, j| big[(i, j + n)]);
        let b = HermitianMatrix::new(ComplexMatrix::from_fn(n, |i, j| big[(i + n, j + n)]))?;
        let (rotated, _) = Block2x2::new(a, x, b)?.polar_rotate()?;
        if rotated.is_ppt(1e-9)?.is_ppt {
            return Ok(rotated);
        }
    }
    Err(SampleError::RejectionBudgetExceeded {
        budget: CERTIFY_RETRIES,
    })
}

fn rejection_block(
    rng: &mut impl Rng,
    cfg: &SamplerConfig,
) -> std::result::Result<Block2x2, SampleError> {
    let n = cfg.dim;
    let a = gram_psd(rng, n, cfg.scale)?;
    let b = gram_psd(rng, n, cfg.scale)?;
    let sqrt_a = matrix_power(&a, 0.5)?;
    let sqrt_b = matrix_power(&b, 0.5)?;
    for _ in 0..REJECTION_BUDGET {
        // Pull the contraction strictly inside the unit ball; at the boundary
        // the partial transpose is almost never positive.
        let k = contraction_from(rng, n, 1.0)?;
        let shrink: f64 = rng.gen_range(0.0..1.0);
        let x = (&(sqrt_a.matrix() * &k) * sqrt_b.matrix()).scaled_re(shrink);
        let blk = Block2x2::new(a.hermitian().clone(), x, b.hermitian().clone())?;
        if blk.is_ppt(1e-9)?.is_ppt {
            return Ok(blk);
        }
    }
    Err(SampleError::RejectionBudgetExceeded {
        budget: REJECTION_BUDGET,
    })
}

/// Sums of Gram blocks over j = 1..m, each pair sharing one eigenbasis so the
/// cross products A_j* B_j come out Hermitian. With `signed_cross` the slot
/// products may flip sign (general matrices with A_j* B_j = B_j* A_j); without
/// it the pairs are positive commuting matrices and the off-diagonal is PSD.
fn sum_block(
    rng: &mut impl Rng,
    cfg: &SamplerConfig,
    signed_cross: bool,
) -> std::result::Result<Block2x2, SampleError> {
    let n = cfg.dim;
    for _ in 0..CERTIFY_RETRIES {
        let m = rng.gen_range(1..=3usize);
        let mut acc_a = ComplexMatrix::zeros(n);
        let mut acc_x = ComplexMatrix::zeros(n);
        let mut acc_b = ComplexMatrix::zeros(n);
        for _ in 0..m {
            let u = unitary_from(rng, n);
            let rho: Vec<f64> = (0..n)
                .map(|_| {
                    let g: f64 = rng.sample(StandardNormal);
                    (g * cfg.scale).abs()
                })
                .collect();
            let sigma: Vec<f64> = (0..n)
                .map(|_| {
                    let g: f64 = rng.sample(StandardNormal);
                    (g * cfg.scale).abs()
                })
                .collect();
            let signs: Vec<f64> = (0..n)
                .map(|_| {
                    if signed_cross && rng.gen_bool(0.5) {
                        -1.0
                    } else {
                        1.0
                    }
                })
                .collect();
            let sq_rho: Vec<f64> = rho.iter().map(|&r| r * r).collect();
            let sq_sigma: Vec<f64> = sigma.iter().map(|&s| s * s).collect();
            let cross: Vec<f64> = rho
                .iter()
                .zip(&sigma)
                .zip(&signs)
                .map(|((&r, &s), &sg)| sg * r * s)
                .collect();
            acc_a = &acc_a + &conjugate_real_diag(&u, &sq_rho);
            acc_x = &acc_x + &conjugate_real_diag(&u, &cross);
            acc_b = &acc_b + &conjugate_real_diag(&u, &sq_sigma);
        }
        let blk = Block2x2::new(
            HermitianMatrix::from_symmetrized(&acc_a),
            acc_x,
            HermitianMatrix::from_symmetrized(&acc_b),
        )?;
        if blk.is_ppt(1e-9)?.is_ppt {
            return Ok(blk);
        }
        // Numerically marginal sum: rotating through the polar factor of X
        // restores a certified PPT block.
        let (rotated, _) = blk.polar_rotate()?;
        if rotated.is_ppt(1e-9)?.is_ppt {
            return Ok(rotated);
        }
    }
    Err(SampleError::RejectionBudgetExceeded {
        budget: CERTIFY_RETRIES,
    })
}

/// Shifts a PSD matrix so its condition number is capped near `kappa`:
/// adds ((1 + ||P||_F) / kappa) I. Used before checks whose per-prefix products
/// reach down to the smallest eigenvalues.
pub fn spectral_floor(p: &PsdMatrix, kappa: f64) -> PsdMatrix {
    let n = p.dim();
    let delta = (1.0 + p.matrix().frobenius_norm()) / kappa;
    let mut shifted = p.matrix().clone();
    for i in 0..n {
        shifted[(i, i)].re += delta;
    }
    PsdMatrix::from_certified(
        HermitianMatrix::from_symmetrized(&shifted),
        p.min_eig_certificate() + delta,
    )
}

/// The strict-positivity option: adds (1e-6 * mean eigenvalue) I so inversions
/// and logarithms are well-defined while margins stay meaningful.
pub fn ensure_strictly_positive(p: &PsdMatrix) -> PsdMatrix {
    let n = p.dim();
    let delta = 1e-6 * (p.matrix().trace().re / n as f64).abs().max(f64::MIN_POSITIVE);
    let mut shifted = p.matrix().clone();
    for i in 0..n {
        shifted[(i, i)].re += delta;
    }
    PsdMatrix::from_certified(
        HermitianMatrix::from_symmetrized(&shifted),
        p.min_eig_certificate() + delta,
    )
}

/// Applies `spectral_floor` to both diagonal blocks. Adding the same positive
/// multiple of the identity to A and B preserves the PPT property.
pub fn floor_block_diag(blk: &Block2x2, kappa: f64) -> Result<Block2x2> {
    let a = PsdMatrix::new(blk.a().clone())?;
    let b = PsdMatrix::new(blk.b().clone())?;
    Block2x2::new(
        spectral_floor(&a, kappa).hermitian().clone(),
        blk.x().clone(),
        spectral_floor(&b, kappa).hermitian().clone(),
    )
}

/// The epsilon-regularized Bell block: A = diag(1/2, 0) + eps I,
/// B = diag(0, 1/2) + eps I, X = [[0, 1/2], [0, 0]]. PSD but not PPT; the
/// necessity suite uses it to demonstrate detected violations.
pub fn bell_block(epsilon: f64) -> Block2x2 {
    let a = HermitianMatrix::new(ComplexMatrix::from_real_diag(&[0.5 + epsilon, epsilon]))
        .expect("diagonal is Hermitian");
    let b = HermitianMatrix::new(ComplexMatrix::from_real_diag(&[epsilon, 0.5 + epsilon]))
        .expect("diagonal is Hermitian");
    let x = ComplexMatrix::from_real_rows(&[vec![0.0, 0.5], vec![0.0, 0.0]])
        .expect("entries are finite");
    Block2x2::new(a, x, b).expect("dimensions agree")
}
