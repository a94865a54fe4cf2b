//! Closed-form scalar (n = 1) margins for every check, written straight from
//! the scalar identities — s(x) = |x|, a #_t b = a^{1-t} b^t, and so on —
//! independently of the matrix code paths they validate.

use num_complex::Complex64;
use ppt_core::verifier::CheckReport;

/// kyfan-1 + Schatten {1, 1.5, 2, 3, inf} + 20 gamma vectors (gamma_1 = 1).
/// Every norm of a one-dimensional spectrum [v] evaluates to v.
pub const FAMILY_SIZE: usize = 26;

pub type Stages = Vec<(String, Vec<f64>)>;

fn rep(v: f64) -> Vec<f64> {
    vec![v; FAMILY_SIZE]
}

fn gmean(a: f64, b: f64, t: f64) -> f64 {
    a.powf(1.0 - t) * b.powf(t)
}

fn logeuclid(a: f64, b: f64, t: f64) -> f64 {
    ((1.0 - t) * a.ln() + t * b.ln()).exp()
}

fn sandwich(a: f64, b: f64, t: f64, r: f64) -> f64 {
    b.powf(r * t / 2.0) * a.powf((1.0 - t) * r) * b.powf(r * t / 2.0)
}

fn powerprod(a: f64, b: f64, t: f64, r: f64) -> f64 {
    a.powf((1.0 - t) * r) * b.powf(t * r)
}

pub fn lemma(a: f64, x_abs: f64, b: f64, t: f64) -> Stages {
    let g_t = gmean(a, b, t);
    let g_1t = gmean(a, b, 1.0 - t);
    let mid = (g_t + g_1t) / 2.0;
    let min_eig = mid - (((g_t - g_1t) / 2.0).powi(2) + x_abs * x_abs).sqrt();
    vec![("geodesic-ppt".into(), vec![min_eig, min_eig])]
}

pub fn chain(a: f64, x_abs: f64, b: f64, t: f64, r: f64) -> Stages {
    let l0 = 2.0 * r * x_abs.ln();
    let l1 = r * (gmean(a, b, t).ln() + gmean(a, b, 1.0 - t).ln());
    let l2 = r * (logeuclid(a, b, t).ln() + logeuclid(a, b, 1.0 - t).ln());
    let l3 = sandwich(a, b, t, r).ln() + sandwich(a, b, 1.0 - t, r).ln();
    let l4 = powerprod(a, b, t, r).ln() + powerprod(a, b, 1.0 - t, r).ln();
    vec![
        ("x-vs-geomean".into(), vec![l1 - l0]),
        ("geomean-vs-logeuclid".into(), vec![l2 - l1]),
        ("logeuclid-vs-sandwich".into(), vec![l3 - l2]),
        ("sandwich-vs-powerprod".into(), vec![l4 - l3]),
    ]
}

pub fn norm_inequality(a: f64, x_abs: f64, b: f64, t: f64, r: f64) -> Stages {
    let lhs = x_abs.powf(r).powi(2);
    let g_t = gmean(a, b, t).powf(r);
    let g_1t = gmean(a, b, 1.0 - t).powf(r);
    let half_t = gmean(a, b, t).powf(r / 2.0);
    let half_1t = gmean(a, b, 1.0 - t).powf(r / 2.0);
    vec![
        ("norm-squared".into(), rep(g_t * g_1t - lhs)),
        (
            "logged-exponent-half-variant".into(),
            rep(half_t * half_1t - lhs),
        ),
        (
            "corollary-x-vs-geomean".into(),
            rep(gmean(a, b, 0.5) - x_abs),
        ),
    ]
}

pub fn half_index(a: f64, x_abs: f64, b: f64, t: f64) -> Stages {
    let geo = (gmean(a, b, t) + gmean(a, b, 1.0 - t)) / 2.0;
    vec![
        ("half-index-geodesic".into(), vec![geo - x_abs]),
        ("half-index-arithmetic".into(), vec![(a + b) / 2.0 - x_abs]),
        (
            "half-index-geomean".into(),
            vec![gmean(a, b, 0.5) - x_abs],
        ),
    ]
}

pub fn amgm(a: f64, b: f64, t: f64) -> Stages {
    vec![(
        "loewner-gap".into(),
        vec![(1.0 - t) * a + t * b - gmean(a, b, t)],
    )]
}

pub fn bhatia_grover(a: f64, b: f64, t: f64, r: f64) -> Stages {
    let s0 = r * gmean(a, b, t).ln();
    let s1 = r * logeuclid(a, b, t).ln();
    let s2 = sandwich(a, b, t, r).ln();
    let s3 = powerprod(a, b, t, r).ln();
    vec![
        ("geomean-vs-logeuclid".into(), vec![s1 - s0]),
        ("logeuclid-vs-sandwich".into(), vec![s2 - s1]),
        ("sandwich-vs-powerprod".into(), vec![s3 - s2]),
    ]
}

pub fn audenaert(pairs: &[(f64, f64)]) -> Stages {
    let sum_a: f64 = pairs.iter().map(|p| p.0).sum();
    let sum_b: f64 = pairs.iter().map(|p| p.1).sum();
    let sum_ab: f64 = pairs.iter().map(|p| p.0 * p.1).sum();
    let msqrt = |r: f64| -> f64 {
        pairs
            .iter()
            .map(|p| p.0.powf(1.0 / r) * p.1.powf(1.0 / r))
            .sum()
    };
    let pow_sum = |r: f64| -> (f64, f64) {
        (
            pairs.iter().map(|p| p.0.powf(2.0 / r)).sum(),
            pairs.iter().map(|p| p.1.powf(2.0 / r)).sum(),
        )
    };

    let q0 = sum_ab;
    let q1 = msqrt(2.0).powi(2);
    let q2 = gmean(sum_a, sum_b, 0.5).powi(2);
    let q3 = logeuclid(sum_a, sum_b, 0.5).powi(2);
    let q4 = sandwich(sum_a, sum_b, 0.5, 2.0);
    let q5 = sum_a * sum_b;

    let mut stages: Stages = vec![
        ("sum-vs-sqrtprod".into(), rep(q1 - q0)),
        ("sqrtprod-vs-geomean".into(), rep(q2 - q1)),
        ("geomean-vs-logeuclid".into(), rep(q3 - q2)),
        ("logeuclid-vs-sandwich".into(), rep(q4 - q3)),
        ("sandwich-vs-product".into(), rep(q5 - q4)),
    ];
    for r in [2.0f64, 3.0] {
        let w0 = msqrt(r).powf(r);
        let (pa, pb) = pow_sum(r);
        let w1 = gmean(pa, pb, 0.5).powf(r);
        let w2 = logeuclid(pa, pb, 0.5).powf(r);
        let w3 = sandwich(pa, pb, 0.5, r);
        stages.push((format!("prechain-r{r}-sqrtprod-vs-geomean"), rep(w1 - w0)));
        stages.push((format!("prechain-r{r}-geomean-vs-logeuclid"), rep(w2 - w1)));
        stages.push((format!("prechain-r{r}-logeuclid-vs-sandwich"), rep(w3 - w2)));
    }
    for r in [1.5f64, 2.0, 3.0] {
        stages.push((format!("convexity-r{r}"), rep(msqrt(r).powf(r) - q0)));
    }
    stages
}

pub fn polar_sum(pairs: &[(Complex64, Complex64)]) -> Stages {
    let s: Complex64 = pairs.iter().map(|(a, b)| a.conj() * b).sum();
    let sum_a2: f64 = pairs.iter().map(|(a, _)| a.norm_sqr()).sum();
    let sum_b2: f64 = pairs.iter().map(|(_, b)| b.norm_sqr()).sum();
    let q0 = s.norm_sqr();
    let g = gmean(sum_a2, sum_b2, 0.5);
    let q1 = g.powi(2);
    let q2 = sandwich(sum_a2, sum_b2, 0.5, 2.0);
    let q3 = sum_a2 * sum_b2;
    let mut stages: Stages = vec![
        ("abs-vs-geomean".into(), rep(q1 - q0)),
        ("geomean-vs-sandwich".into(), rep(q2 - q1)),
        ("sandwich-vs-product".into(), rep(q3 - q2)),
    ];
    for r in [1.0f64, 3.0] {
        stages.push((
            format!("generalized-r{r}"),
            rep(g.powf(r) - s.norm().powf(r)),
        ));
    }
    stages
}

pub fn sum_power(alpha: Complex64, beta: Complex64, r: f64, hermitian: bool) -> Stages {
    let s_sum = (alpha + beta).norm();
    let m_a = 1.0 + alpha.norm_sqr();
    let m_b = 1.0 + beta.norm_sqr();
    let lhs = r * s_sum.ln();
    let squares = (r / 2.0) * (m_a.ln() + m_b.ln());
    let mut stages: Stages = vec![("sum-vs-squares".into(), vec![squares - lhs])];
    let aujla = (1.0..=2.0).contains(&r);
    let shifted = (1.0 + alpha.norm().powf(r)).ln() + (1.0 + beta.norm().powf(r)).ln();
    if aujla {
        stages.push(("sum-vs-shifted-powers".into(), vec![shifted - lhs]));
    }
    if hermitian {
        let g = gmean(m_a, m_b, 0.5);
        let sw = sandwich(m_a, m_b, 0.5, r);
        stages.push(("herm-sum-vs-geomean".into(), vec![r * g.ln() - lhs]));
        stages.push((
            "herm-geomean-vs-sandwich".into(),
            vec![sw.ln() - r * g.ln()],
        ));
        stages.push(("herm-sandwich-vs-powers".into(), vec![squares - sw.ln()]));
        if aujla {
            stages.push(("herm-powers-vs-shifted".into(), vec![shifted - squares]));
        }
    }
    stages
}

pub fn hadamard_pair(alpha: f64, beta: f64) -> Stages {
    let sp = (alpha * beta).abs();
    let a2 = alpha * alpha;
    let b2 = beta * beta;
    let diag_prod = a2 * b2;
    // At n = 1 the diagonal parts equal the squares themselves, so the norm
    // products of both routes coincide.
    let diag_norms = a2 * b2;
    let square_norms = a2 * b2;
    vec![
        (
            "prefix-products".into(),
            vec![diag_prod.ln() - 2.0 * sp.ln()],
        ),
        ("normchain-absq-vs-diagprod".into(), rep(diag_prod - sp * sp)),
        (
            "normchain-diagprod-vs-diagnorms".into(),
            rep(diag_norms - diag_prod),
        ),
        (
            "normchain-diagnorms-vs-squares".into(),
            rep(square_norms - diag_norms),
        ),
        (
            "normchain-schur-spectral".into(),
            vec![(alpha.abs() * beta.abs()).powi(2) - square_norms],
        ),
    ]
}

pub fn hadamard_multi(mats: &[Complex64]) -> Stages {
    let p: Complex64 = mats.iter().product();
    let q: f64 = mats.iter().map(|m| m.norm_sqr()).product();
    vec![
        (
            "prefix-products".into(),
            vec![q.ln() - 2.0 * p.norm().ln()],
        ),
        ("norm-conclusion".into(), rep(q - p.norm_sqr())),
    ]
}

/// Asserts stage-by-stage, margin-by-margin agreement within `tol` and returns
/// the worst observed deviation.
pub fn assert_margins_match(report: &CheckReport, oracle: &Stages, tol: f64) -> f64 {
    assert_eq!(
        report.stages.len(),
        oracle.len(),
        "stage count for {}",
        report.check_name
    );
    let mut worst = 0.0f64;
    for (got, (name, want)) in report.stages.iter().zip(oracle) {
        assert_eq!(&got.stage, name, "stage name in {}", report.check_name);
        assert_eq!(
            got.margins.len(),
            want.len(),
            "margin count in {} / {}",
            report.check_name,
            name
        );
        for (g, w) in got.margins.iter().zip(want) {
            let d = (g - w).abs();
            assert!(
                d <= tol,
                "{} / {name}: matrix path {g} vs scalar oracle {w}",
                report.check_name
            );
            worst = worst.max(d);
        }
    }
    worst
}
