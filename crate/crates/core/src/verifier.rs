//! One check per inequality. Each check consumes sampled inputs, evaluates both
//! sides of every stage of the claimed chain, and emits a `CheckReport` with
//! per-stage, per-index margins and a three-way verdict.
//!
//! Margins are reported in the log domain for prefix-product inequalities and
//! linearly for eigenvalue and norm inequalities. Solver failures (singular
//! inputs, non-convergence) surface as `Inconclusive`, never as `Fail`.

use crate::blocks::{diagonal_part, hadamard, Block2x2};
use crate::eig::hermitian_eig;
use crate::error::{LinalgError, Result};
use crate::functions::{
    matrix_power, polar_decompose, singular_values, singular_values_hermitian, SingularSpectrum,
};
use crate::hermitian::{is_psd, HermitianMatrix, PsdMatrix};
use crate::majorization::{log_spectrum, prefix_log_margins};
use crate::matrix::ComplexMatrix;
use crate::means::{arithmetic_blend, geometric_mean, log_euclidean, sandwich};
use crate::norms::NormFamily;
use crate::tolerances;

pub const LEMMA_GEODESIC_PPT: &str = "lemma_geodesic_ppt";
pub const LOG_MAJORIZATION_CHAIN: &str = "log_majorization_chain";
pub const NORM_INEQUALITY: &str = "norm_inequality";
pub const HALF_INDEX: &str = "half_index";
pub const AMGM: &str = "amgm";
pub const BHATIA_GROVER: &str = "bhatia_grover";
pub const AUDENAERT_CHAIN: &str = "audenaert_chain";
pub const POLAR_SUM_CHAIN: &str = "polar_sum_chain";
pub const SUM_POWER: &str = "sum_power";
pub const HADAMARD_PAIR: &str = "hadamard_pair";
pub const HADAMARD_MULTI: &str = "hadamard_multi";

/// Registry of every check, in report order.
pub const CHECK_NAMES: [&str; 11] = [
    AMGM,
    AUDENAERT_CHAIN,
    BHATIA_GROVER,
    HADAMARD_MULTI,
    HADAMARD_PAIR,
    HALF_INDEX,
    LEMMA_GEODESIC_PPT,
    LOG_MAJORIZATION_CHAIN,
    NORM_INEQUALITY,
    POLAR_SUM_CHAIN,
    SUM_POWER,
];

/// Margins larger than this are clamped so reports stay finite and serializable.
const MARGIN_CAP: f64 = 1e15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Numerical infrastructure gave up (singular matrix, solver failure);
    /// excluded from pass-rate statistics.
    Inconclusive,
}

/// Margins for one stage of a chain; `asserted` distinguishes the stages that
/// decide the verdict from evidence that is merely logged.
#[derive(Clone, Debug)]
pub struct StageMargins {
    pub stage: String,
    pub margins: Vec<f64>,
    pub asserted: bool,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check_name: &'static str,
    pub t: Option<f64>,
    pub r: Option<f64>,
    pub verdict: Verdict,
    pub min_margin: f64,
    pub stages: Vec<StageMargins>,
    pub witness_ref: Option<String>,
    pub note: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn inconclusive(name: &'static str, t: Option<f64>, r: Option<f64>, err: LinalgError) -> Self {
        Self {
            check_name: name,
            t,
            r,
            verdict: Verdict::Inconclusive,
            min_margin: 0.0,
            stages: Vec::new(),
            witness_ref: None,
            note: Some(err.to_string()),
        }
    }
}

struct ReportBuilder {
    name: &'static str,
    t: Option<f64>,
    r: Option<f64>,
    stages: Vec<StageMargins>,
    all_ok: bool,
    min_margin: f64,
    note: Option<String>,
}

fn clamp(m: f64) -> f64 {
    if m.is_nan() {
        0.0
    } else {
        m.clamp(-MARGIN_CAP, MARGIN_CAP)
    }
}

impl ReportBuilder {
    fn new(name: &'static str, t: Option<f64>, r: Option<f64>) -> Self {
        Self {
            name,
            t,
            r,
            stages: Vec::new(),
            all_ok: true,
            min_margin: f64::INFINITY,
            note: None,
        }
    }

    fn push(&mut self, stage: String, margins: Vec<f64>, ok: bool, asserted: bool) {
        let margins: Vec<f64> = margins.into_iter().map(clamp).collect();
        if asserted {
            self.all_ok &= ok;
            for &m in &margins {
                if m < self.min_margin {
                    self.min_margin = m;
                }
            }
        }
        self.stages.push(StageMargins {
            stage,
            margins,
            asserted,
        });
    }

    /// Prefix-product stage in the log domain with per-prefix slack k * tol.
    fn log_stage(&mut self, stage: &str, lhs_log: &[f64], rhs_log: &[f64], tol: f64) {
        let (ok, margins) = prefix_log_margins(lhs_log, rhs_log, tol);
        self.push(stage.to_string(), margins, ok, true);
    }

    /// Per-norm stage: every lhs must not exceed rhs + tol * (1 + |rhs|).
    fn norm_stage(&mut self, stage: &str, lhs: &[f64], rhs: &[f64], tol: f64, asserted: bool) {
        debug_assert_eq!(lhs.len(), rhs.len());
        let mut ok = true;
        let mut margins = Vec::with_capacity(lhs.len());
        for (&l, &r) in lhs.iter().zip(rhs) {
            ok &= l <= r + tol * (1.0 + r.abs());
            margins.push(r - l);
        }
        self.push(stage.to_string(), margins, ok, asserted);
    }

    fn linear_stage(&mut self, stage: &str, margins: Vec<f64>, ok: bool) {
        self.push(stage.to_string(), margins, ok, true);
    }

    fn set_note(&mut self, note: impl Into<String>) {
        self.note = Some(note.into());
    }

    fn finish(self) -> CheckReport {
        let min_margin = if self.min_margin.is_finite() {
            self.min_margin
        } else {
            clamp(self.min_margin)
        };
        CheckReport {
            check_name: self.name,
            t: self.t,
            r: self.r,
            verdict: if self.all_ok {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            min_margin,
            stages: self.stages,
            witness_ref: None,
            note: self.note,
        }
    }
}

fn run_check(
    name: &'static str,
    t: Option<f64>,
    r: Option<f64>,
    body: impl FnOnce(&mut ReportBuilder) -> Result<()>,
) -> CheckReport {
    let mut builder = ReportBuilder::new(name, t, r);
    match body(&mut builder) {
        Ok(()) => builder.finish(),
        Err(err) => CheckReport::inconclusive(name, t, r, err),
    }
}

fn psd_spectrum(p: &PsdMatrix) -> Result<SingularSpectrum> {
    singular_values_hermitian(p.hermitian())
}

fn psd_log(p: &PsdMatrix) -> Result<Vec<f64>> {
    Ok(log_spectrum(&psd_spectrum(p)?))
}

fn general_log(x: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(log_spectrum(&singular_values(x)?))
}

fn add_logs(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

fn scale_logs(a: &[f64], c: f64) -> Vec<f64> {
    a.iter().map(|&x| c * x).collect()
}

fn family_values(family: &NormFamily, s: &SingularSpectrum) -> Result<Vec<f64>> {
    Ok(family.evaluate(s)?.into_iter().map(|(_, v)| v).collect())
}

fn pairwise_product(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(&x, &y)| x * y).collect()
}

fn square_each(a: &[f64]) -> Vec<f64> {
    a.iter().map(|&x| x * x).collect()
}

/// Half-index map of the singular value bounds, 1-based: j -> floor((j+1)/2).
pub fn half_index_map(j: usize) -> usize {
    (j + 1) / 2
}

/// Lemma form: the geodesic transform of a PPT block stays PPT.
pub fn check_lemma_geodesic_ppt(blk: &Block2x2, t: f64, tol: f64) -> CheckReport {
    run_check(LEMMA_GEODESIC_PPT, Some(t), None, |b| {
        // Boundary-singular inputs go through the means' epsilon regularization,
        // so the resulting certificate is adjudicated at a 10x relaxed tolerance.
        let boundary = {
            let da = hermitian_eig(blk.a())?;
            let db = hermitian_eig(blk.b())?;
            let near_singular = |values: &[f64]| {
                let lmax = values[0].max(0.0);
                *values.last().unwrap() < tolerances::inv_threshold(lmax)
            };
            near_singular(da.values()) || near_singular(db.values())
        };
        let eff_tol = if boundary { 10.0 * tol } else { tol };
        let geo = blk.geodesic_block(t)?;
        let cert = geo.is_ppt(eff_tol)?;
        b.linear_stage(
            "geodesic-ppt",
            vec![cert.h_min_eig, cert.h_tau_min_eig],
            cert.is_ppt,
        );
        if boundary {
            b.set_note("boundary-singular diagonal blocks; tolerance relaxed 10x");
        }
        Ok(())
    })
}

/// The four-stage log-majorization chain between the off-diagonal block and the
/// means of the diagonal blocks:
///   s^{2r}(X) <=_log s^r(A #_t B) s^r(A #_{1-t} B)
///           <=_log s^r(f_t) s^r(f_{1-t})
///           <=_log s(g_{r,t}) s(g_{r,1-t})
///           <=_log s(A^{(1-t)r} B^{tr}) s(A^{tr} B^{(1-t)r}).
pub fn check_log_majorization_chain(blk: &Block2x2, t: f64, r: f64, tol: f64) -> CheckReport {
    run_check(LOG_MAJORIZATION_CHAIN, Some(t), Some(r), |b| {
        let a = PsdMatrix::new(blk.a().clone())?;
        let bm = PsdMatrix::new(blk.b().clone())?;

        let g_t = geometric_mean(&a, &bm, t)?;
        let g_1t = geometric_mean(&a, &bm, 1.0 - t)?;
        let f_t = log_euclidean(&a, &bm, t)?;
        let f_1t = log_euclidean(&a, &bm, 1.0 - t)?;
        let s_t = sandwich(&a, &bm, t, r)?;
        let s_1t = sandwich(&a, &bm, 1.0 - t, r)?;
        let prod_a = matrix_power(&a, (1.0 - t) * r)?.matrix() * matrix_power(&bm, t * r)?.matrix();
        let prod_b = matrix_power(&a, t * r)?.matrix() * matrix_power(&bm, (1.0 - t) * r)?.matrix();

        let lx = general_log(blk.x())?;
        let stage0 = scale_logs(&lx, 2.0 * r);
        let stage1 = scale_logs(&add_logs(&psd_log(&g_t)?, &psd_log(&g_1t)?), r);
        let stage2 = scale_logs(&add_logs(&psd_log(&f_t)?, &psd_log(&f_1t)?), r);
        let stage3 = add_logs(&psd_log(&s_t)?, &psd_log(&s_1t)?);
        let stage4 = add_logs(&general_log(&prod_a)?, &general_log(&prod_b)?);

        b.log_stage("x-vs-geomean", &stage0, &stage1, tol);
        b.log_stage("geomean-vs-logeuclid", &stage1, &stage2, tol);
        b.log_stage("logeuclid-vs-sandwich", &stage2, &stage3, tol);
        b.log_stage("sandwich-vs-powerprod", &stage3, &stage4, tol);
        Ok(())
    })
}

/// Norm inequality over the configured family:
///   || |X|^r ||^2 <= || (A #_t B)^r || * || (A #_{1-t} B)^r ||,
/// plus the t = 1/2, r = 1 corollary ||X|| <= ||A # B||. The abstract-style
/// variant with exponent r/2 on the right is computed and logged, not asserted.
pub fn check_norm_inequality(
    blk: &Block2x2,
    t: f64,
    r: f64,
    family: &NormFamily,
    tol: f64,
) -> CheckReport {
    run_check(NORM_INEQUALITY, Some(t), Some(r), |b| {
        let a = PsdMatrix::new(blk.a().clone())?;
        let bm = PsdMatrix::new(blk.b().clone())?;
        let g_t = geometric_mean(&a, &bm, t)?;
        let g_1t = geometric_mean(&a, &bm, 1.0 - t)?;

        let sx = singular_values(blk.x())?;
        let s_gt = psd_spectrum(&g_t)?;
        let s_g1t = psd_spectrum(&g_1t)?;

        let lhs = square_each(&family_values(family, &sx.powered(r))?);
        let rhs = pairwise_product(
            &family_values(family, &s_gt.powered(r))?,
            &family_values(family, &s_g1t.powered(r))?,
        );
        b.norm_stage("norm-squared", &lhs, &rhs, tol, true);

        let rhs_half = pairwise_product(
            &family_values(family, &s_gt.powered(r / 2.0))?,
            &family_values(family, &s_g1t.powered(r / 2.0))?,
        );
        b.norm_stage("logged-exponent-half-variant", &lhs, &rhs_half, tol, false);

        let g_mid = geometric_mean(&a, &bm, 0.5)?;
        let lhs_x = family_values(family, &sx)?;
        let rhs_mid = family_values(family, &psd_spectrum(&g_mid)?)?;
        b.norm_stage("corollary-x-vs-geomean", &lhs_x, &rhs_mid, tol, true);
        Ok(())
    })
}

/// Half-index singular value bounds:
///   s_j(X) <= s_{[(j+1)/2]}((A #_t B + A #_{1-t} B)/2),
/// the intermediate arithmetic form with (A + B)/2, and the geometric-mean
/// corollary at t = 1/2.
pub fn check_half_index(blk: &Block2x2, t: f64, tol: f64) -> CheckReport {
    run_check(HALF_INDEX, Some(t), None, |b| {
        let a = PsdMatrix::new(blk.a().clone())?;
        let bm = PsdMatrix::new(blk.b().clone())?;
        let g_t = geometric_mean(&a, &bm, t)?;
        let g_1t = geometric_mean(&a, &bm, 1.0 - t)?;
        let g_mid = geometric_mean(&a, &bm, 0.5)?;

        let sx = singular_values(blk.x())?;
        let mean_geo = (g_t.matrix() + g_1t.matrix()).scaled_re(0.5);
        let mean_ar = (blk.a().matrix() + blk.b().matrix()).scaled_re(0.5);
        let s_geo = singular_values_hermitian(&HermitianMatrix::from_symmetrized(&mean_geo))?;
        let s_ar = singular_values_hermitian(&HermitianMatrix::from_symmetrized(&mean_ar))?;
        let s_mid = psd_spectrum(&g_mid)?;

        let bound_stage = |label: &str, bound: &SingularSpectrum, b: &mut ReportBuilder| {
            let mut ok = true;
            let mut margins = Vec::with_capacity(sx.len());
            for (j0, &sj) in sx.values().iter().enumerate() {
                let idx0 = half_index_map(j0 + 1) - 1;
                let cap = bound.values()[idx0];
                ok &= sj <= cap + tol * (1.0 + cap.abs());
                margins.push(cap - sj);
            }
            b.linear_stage(label, margins, ok);
        };

        bound_stage("half-index-geodesic", &s_geo, b);
        bound_stage("half-index-arithmetic", &s_ar, b);
        bound_stage("half-index-geomean", &s_mid, b);
        Ok(())
    })
}

/// AM-GM in the Loewner order: (1-t)A + tB - A #_t B is PSD.
pub fn check_amgm(a: &PsdMatrix, b: &PsdMatrix, t: f64, tol: f64) -> CheckReport {
    run_check(AMGM, Some(t), None, |builder| {
        let blend = arithmetic_blend(a, b, t)?;
        let mean = geometric_mean(a, b, t)?;
        let diff = blend.matrix() - mean.matrix();
        let (ok, min_eig) = is_psd(&HermitianMatrix::from_symmetrized(&diff), tol)?;
        builder.linear_stage("loewner-gap", vec![min_eig], ok);
        Ok(())
    })
}

/// The three-stage chain between a weighted geometric mean and products of powers:
///   s^r(A #_t B) <=_log s^r(f_t(A,B)) <=_log s(g_{r,t}(A,B)) <=_log s(A^{(1-t)r} B^{tr}).
pub fn check_bhatia_grover(a: &PsdMatrix, b: &PsdMatrix, t: f64, r: f64, tol: f64) -> CheckReport {
    run_check(BHATIA_GROVER, Some(t), Some(r), |builder| {
        let g = geometric_mean(a, b, t)?;
        let f = log_euclidean(a, b, t)?;
        let sw = sandwich(a, b, t, r)?;
        let prod = matrix_power(a, (1.0 - t) * r)?.matrix() * matrix_power(b, t * r)?.matrix();

        let stage0 = scale_logs(&psd_log(&g)?, r);
        let stage1 = scale_logs(&psd_log(&f)?, r);
        let stage2 = psd_log(&sw)?;
        let stage3 = general_log(&prod)?;

        builder.log_stage("geomean-vs-logeuclid", &stage0, &stage1, tol);
        builder.log_stage("logeuclid-vs-sandwich", &stage1, &stage2, tol);
        builder.log_stage("sandwich-vs-powerprod", &stage2, &stage3, tol);
        Ok(())
    })
}

fn sum_of(matrices: impl Iterator<Item = ComplexMatrix>, dim: usize) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(dim);
    for m in matrices {
        acc = &acc + &m;
    }
    acc
}

/// The six-quantity chain for positive commuting pairs, ordered as the
/// constituent lemmas prove it:
///   ||sum A_j B_j|| <= ||(sum A_j^{1/2} B_j^{1/2})^2||
///                   <= ||((sum A_j) # (sum B_j))^2||
///                   <= ||exp(log-blend)^2||
///                   <= ||(sum B_j)^{1/2} (sum A_j) (sum B_j)^{1/2}||
///                   <= ||(sum A_j)(sum B_j)||,
/// plus the r-generalized pre-chain for r in {2, 3} and the convexity step
/// ||sum A_j B_j|| <= ||(sum A_j^{1/r} B_j^{1/r})^r|| for r in {1.5, 2, 3}.
pub fn check_audenaert_chain(
    pairs: &[(PsdMatrix, PsdMatrix)],
    family: &NormFamily,
    tol: f64,
) -> CheckReport {
    run_check(AUDENAERT_CHAIN, None, None, |b| {
        if pairs.is_empty() {
            return Err(LinalgError::InvalidParam("empty pair list".into()));
        }
        let n = pairs[0].0.dim();

        let sum_a = PsdMatrix::new(HermitianMatrix::from_symmetrized(&sum_of(
            pairs.iter().map(|(a, _)| a.matrix().clone()),
            n,
        )))?;
        let sum_b = PsdMatrix::new(HermitianMatrix::from_symmetrized(&sum_of(
            pairs.iter().map(|(_, p)| p.matrix().clone()),
            n,
        )))?;
        let sum_ab = sum_of(pairs.iter().map(|(a, p)| a.matrix() * p.matrix()), n);

        let q0 = family_values(family, &singular_values(&sum_ab)?)?;

        let sqrt_product_powered = |r: f64| -> Result<Vec<f64>> {
            let m = sum_of(
                pairs
                    .iter()
                    .map(|(a, p)| {
                        Ok(matrix_power(a, 1.0 / r)?.matrix() * matrix_power(p, 1.0 / r)?.matrix())
                    })
                    .collect::<Result<Vec<_>>>()?
                    .into_iter(),
                n,
            );
            let spec = singular_values_hermitian(&HermitianMatrix::from_symmetrized(&m))?;
            family_values(family, &spec.powered(r))
        };

        // Main chain at r = 2.
        let q1 = sqrt_product_powered(2.0)?;
        let g = geometric_mean(&sum_a, &sum_b, 0.5)?;
        let q2 = family_values(family, &psd_spectrum(&g)?.powered(2.0))?;
        let f = log_euclidean(&sum_a, &sum_b, 0.5)?;
        let q3 = family_values(family, &psd_spectrum(&f)?.powered(2.0))?;
        let sw = sandwich(&sum_a, &sum_b, 0.5, 2.0)?;
        let q4 = family_values(family, &psd_spectrum(&sw)?)?;
        let prod = sum_a.matrix() * sum_b.matrix();
        let q5 = family_values(family, &singular_values(&prod)?)?;

        b.norm_stage("sum-vs-sqrtprod", &q0, &q1, tol, true);
        b.norm_stage("sqrtprod-vs-geomean", &q1, &q2, tol, true);
        b.norm_stage("geomean-vs-logeuclid", &q2, &q3, tol, true);
        b.norm_stage("logeuclid-vs-sandwich", &q3, &q4, tol, true);
        b.norm_stage("sandwich-vs-product", &q4, &q5, tol, true);

        // Pre-chain with general exponent: replace each pair by its 1/r powers.
        for r_exp in [2.0, 3.0] {
            let w0 = sqrt_product_powered(r_exp)?;
            let a_pow = PsdMatrix::new(HermitianMatrix::from_symmetrized(&sum_of(
                pairs
                    .iter()
                    .map(|(a, _)| Ok(matrix_power(a, 2.0 / r_exp)?.matrix().clone()))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter(),
                n,
            )))?;
            let b_pow = PsdMatrix::new(HermitianMatrix::from_symmetrized(&sum_of(
                pairs
                    .iter()
                    .map(|(_, p)| Ok(matrix_power(p, 2.0 / r_exp)?.matrix().clone()))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter(),
                n,
            )))?;
            let g_r = geometric_mean(&a_pow, &b_pow, 0.5)?;
            let w1 = family_values(family, &psd_spectrum(&g_r)?.powered(r_exp))?;
            let f_r = log_euclidean(&a_pow, &b_pow, 0.5)?;
            let w2 = family_values(family, &psd_spectrum(&f_r)?.powered(r_exp))?;
            let sw_r = sandwich(&a_pow, &b_pow, 0.5, r_exp)?;
            let w3 = family_values(family, &psd_spectrum(&sw_r)?)?;

            b.norm_stage(&format!("prechain-r{r_exp}-sqrtprod-vs-geomean"), &w0, &w1, tol, true);
            b.norm_stage(&format!("prechain-r{r_exp}-geomean-vs-logeuclid"), &w1, &w2, tol, true);
            b.norm_stage(&format!("prechain-r{r_exp}-logeuclid-vs-sandwich"), &w2, &w3, tol, true);
        }

        // Convexity step: the sum of r-th powers against the r-th power of the sum.
        for r_exp in [1.5, 2.0, 3.0] {
            let rhs = sqrt_product_powered(r_exp)?;
            b.norm_stage(&format!("convexity-r{r_exp}"), &q0, &rhs, tol, true);
        }
        Ok(())
    })
}

/// Chain for arbitrary pairs through the polar rotation of S = sum A_j* B_j:
///   || |S|^2 || <= ||((U* (sum |A_j|^2) U) # (sum |B_j|^2))^2||
///              <= ||(sum |B_j|^2)^{1/2} U* (sum |A_j|^2) U (sum |B_j|^2)^{1/2}||
///              <= ||(sum |A_j|^2) U (sum |B_j|^2)||.
pub fn check_polar_sum_chain(
    pairs: &[(ComplexMatrix, ComplexMatrix)],
    family: &NormFamily,
    tol: f64,
) -> CheckReport {
    run_check(POLAR_SUM_CHAIN, None, None, |b| {
        if pairs.is_empty() {
            return Err(LinalgError::InvalidParam("empty pair list".into()));
        }
        let n = pairs[0].0.dim();

        let s_mat = sum_of(pairs.iter().map(|(a, p)| &a.adjoint() * p), n);
        let (u, s_abs) = polar_decompose(&s_mat)?;
        let sum_a2 = sum_of(pairs.iter().map(|(a, _)| a.gram()), n);
        let sum_b2 = PsdMatrix::new(HermitianMatrix::from_symmetrized(&sum_of(
            pairs.iter().map(|(_, p)| p.gram()),
            n,
        )))?;
        let rotated = (&(&u.adjoint() * &sum_a2) * &u).symmetrized();
        let a_rot = PsdMatrix::new(HermitianMatrix::from_symmetrized(&rotated))?;

        let s_spec = psd_spectrum(&s_abs)?;
        let g = geometric_mean(&a_rot, &sum_b2, 0.5)?;
        let g_spec = psd_spectrum(&g)?;

        let q0 = family_values(family, &s_spec.powered(2.0))?;
        let q1 = family_values(family, &g_spec.powered(2.0))?;
        let sw = sandwich(&a_rot, &sum_b2, 0.5, 2.0)?;
        let q2 = family_values(family, &psd_spectrum(&sw)?)?;
        let prod = a_rot.matrix() * sum_b2.matrix();
        let q3 = family_values(family, &singular_values(&prod)?)?;

        b.norm_stage("abs-vs-geomean", &q0, &q1, tol, true);
        b.norm_stage("geomean-vs-sandwich", &q1, &q2, tol, true);
        b.norm_stage("sandwich-vs-product", &q2, &q3, tol, true);

        // The statement is pinned at the exponent-2 midpoint, but the rotated
        // block stays PPT, so the comparison generalizes to every power.
        for r_exp in [1.0, 3.0] {
            let lhs = family_values(family, &s_spec.powered(r_exp))?;
            let rhs = family_values(family, &g_spec.powered(r_exp))?;
            b.norm_stage(&format!("generalized-r{r_exp}"), &lhs, &rhs, tol, true);
        }
        Ok(())
    })
}

/// Sum bounds: the prefix-product inequality
///   prod s_j(|A+B|^r) <= prod s_j^{r/2}(I+|A|^2) s_j^{r/2}(I+|B|^2)  (r > 0),
/// its 1 <= r <= 2 consequence with I + |A|^r on the right, and for Hermitian
/// inputs the four-stage improvement chain through (I+A^2) # (I+B^2).
pub fn check_sum_power(a_mat: &ComplexMatrix, b_mat: &ComplexMatrix, r: f64, tol: f64) -> CheckReport {
    run_check(SUM_POWER, None, Some(r), |b| {
        if !(r > 0.0) {
            return Err(LinalgError::InvalidParam(format!(
                "exponent r must be positive, got {r}"
            )));
        }
        if a_mat.dim() != b_mat.dim() {
            return Err(LinalgError::DimensionMismatch {
                left: a_mat.dim(),
                right: b_mat.dim(),
            });
        }
        let n = a_mat.dim();
        let herm_tol = |m: &ComplexMatrix| {
            m.hermitian_defect() <= tolerances::hermitian_threshold(m.frobenius_norm())
        };
        let both_hermitian = herm_tol(a_mat) && herm_tol(b_mat);

        let sum = a_mat + b_mat;
        let s_sum = if both_hermitian {
            singular_values_hermitian(&HermitianMatrix::from_symmetrized(&sum))?
        } else {
            singular_values(&sum)?
        };
        let lhs = scale_logs(&log_spectrum(&s_sum), r);

        let identity = ComplexMatrix::identity(n);
        let m_a = HermitianMatrix::from_symmetrized(&(&identity + &a_mat.gram()));
        let m_b = HermitianMatrix::from_symmetrized(&(&identity + &b_mat.gram()));
        let s_ma = singular_values_hermitian(&m_a)?;
        let s_mb = singular_values_hermitian(&m_b)?;
        let l_ma = log_spectrum(&s_ma);
        let l_mb = log_spectrum(&s_mb);

        let rhs_sq = scale_logs(&add_logs(&l_ma, &l_mb), r / 2.0);
        b.log_stage("sum-vs-squares", &lhs, &rhs_sq, tol);

        let aujla_applicable = (1.0..=2.0).contains(&r);
        let aujla_rhs = if aujla_applicable {
            let abs_pow = |m: &ComplexMatrix| -> Result<Vec<f64>> {
                let dec = hermitian_eig(&HermitianMatrix::from_symmetrized(&m.gram()))?;
                let powered = dec.apply(|l| l.max(0.0).powf(r / 2.0));
                let shifted = &identity + &powered;
                Ok(log_spectrum(&singular_values_hermitian(
                    &HermitianMatrix::from_symmetrized(&shifted),
                )?))
            };
            let rhs = add_logs(&abs_pow(a_mat)?, &abs_pow(b_mat)?);
            b.log_stage("sum-vs-shifted-powers", &lhs, &rhs, tol);
            Some(rhs)
        } else {
            None
        };

        if both_hermitian {
            let ma_psd = PsdMatrix::new(m_a.clone())?;
            let mb_psd = PsdMatrix::new(m_b.clone())?;
            let g = geometric_mean(&ma_psd, &mb_psd, 0.5)?;
            let sw = sandwich(&ma_psd, &mb_psd, 0.5, r)?;

            let h1 = scale_logs(&psd_log(&g)?, r);
            let h2 = psd_log(&sw)?;
            let h3 = scale_logs(&add_logs(&l_ma, &l_mb), r / 2.0);

            b.log_stage("herm-sum-vs-geomean", &lhs, &h1, tol);
            b.log_stage("herm-geomean-vs-sandwich", &h1, &h2, tol);
            b.log_stage("herm-sandwich-vs-powers", &h2, &h3, tol);
            if let Some(rhs) = aujla_rhs {
                b.log_stage("herm-powers-vs-shifted", &h3, &rhs, tol);
            }
        }
        Ok(())
    })
}

/// Hadamard product of Hermitian matrices against diagonal parts of squares:
/// the prefix-product inequality for every k and the norm chain ending in the
/// spectral-norm bound (||A|| ||B||)^2.
pub fn check_hadamard_pair(
    a_h: &HermitianMatrix,
    b_h: &HermitianMatrix,
    family: &NormFamily,
    tol: f64,
) -> CheckReport {
    run_check(HADAMARD_PAIR, None, None, |b| {
        let prod = hadamard(a_h.matrix(), b_h.matrix())?;
        let s_prod = singular_values_hermitian(&HermitianMatrix::from_symmetrized(&prod))?;

        let a_sq = a_h.matrix().gram();
        let b_sq = b_h.matrix().gram();
        let diag_a = diagonal_part(&a_sq);
        let diag_b = diagonal_part(&b_sq);
        let diag_prod = &diag_a * &diag_b;
        let s_dp = singular_values_hermitian(&HermitianMatrix::from_symmetrized(&diag_prod))?;

        b.log_stage(
            "prefix-products",
            &scale_logs(&log_spectrum(&s_prod), 2.0),
            &log_spectrum(&s_dp),
            tol,
        );

        let s_da = singular_values_hermitian(&HermitianMatrix::from_symmetrized(&diag_a))?;
        let s_db = singular_values_hermitian(&HermitianMatrix::from_symmetrized(&diag_b))?;
        let s_a2 = singular_values_hermitian(&HermitianMatrix::from_symmetrized(&a_sq))?;
        let s_b2 = singular_values_hermitian(&HermitianMatrix::from_symmetrized(&b_sq))?;

        let n0 = family_values(family, &s_prod.powered(2.0))?;
        let n1 = family_values(family, &s_dp)?;
        let n2 = pairwise_product(&family_values(family, &s_da)?, &family_values(family, &s_db)?);
        let n3 = pairwise_product(&family_values(family, &s_a2)?, &family_values(family, &s_b2)?);

        b.norm_stage("normchain-absq-vs-diagprod", &n0, &n1, tol, true);
        b.norm_stage("normchain-diagprod-vs-diagnorms", &n1, &n2, tol, true);
        b.norm_stage("normchain-diagnorms-vs-squares", &n2, &n3, tol, true);

        // Final Schur step pinned to the spectral norm, where s1(A^2) = s1(A)^2.
        let lhs_spec = s_a2.values()[0] * s_b2.values()[0];
        let s_a = singular_values_hermitian(a_h)?;
        let s_b = singular_values_hermitian(b_h)?;
        let rhs_spec = (s_a.values()[0] * s_b.values()[0]).powi(2);
        b.norm_stage("normchain-schur-spectral", &[lhs_spec], &[rhs_spec], tol, true);
        Ok(())
    })
}

/// Iterated Hadamard products: prefix products of s^2(A_1 o ... o A_m) against
/// s(|A_1|^2 o ... o |A_m|^2), and the norm conclusion across the family.
pub fn check_hadamard_multi(mats: &[ComplexMatrix], family: &NormFamily, tol: f64) -> CheckReport {
    run_check(HADAMARD_MULTI, None, None, |b| {
        if mats.is_empty() {
            return Err(LinalgError::InvalidParam("empty matrix list".into()));
        }
        let mut prod = mats[0].clone();
        let mut sq_prod = mats[0].gram();
        for m in &mats[1..] {
            prod = hadamard(&prod, m)?;
            sq_prod = hadamard(&sq_prod, &m.gram())?;
        }
        let s_p = singular_values(&prod)?;
        let s_q = singular_values_hermitian(&HermitianMatrix::from_symmetrized(&sq_prod))?;

        b.log_stage(
            "prefix-products",
            &scale_logs(&log_spectrum(&s_p), 2.0),
            &log_spectrum(&s_q),
            tol,
        );

        let lhs = family_values(family, &s_p.powered(2.0))?;
        let rhs = family_values(family, &s_q)?;
        b.norm_stage("norm-conclusion", &lhs, &rhs, tol, true);
        Ok(())
    })
}
