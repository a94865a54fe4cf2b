//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Tolerances are pinned in code; every criterion runs on seeded inputs.

mod scalar_oracle;

use num_complex::Complex64;
use rand::Rng;

use ppt_cli::campaign::{norm_family_for, run_campaign, CHAIN_CONDITION_CAP};
use ppt_cli::config::CampaignConfig;
use ppt_cli::witness::{replay, Witness};
use ppt_core::error::SampleError;
use ppt_core::sampling::{
    ensure_strictly_positive, floor_block_diag, random_commuting_pair, random_complex,
    random_hermitian, random_ppt_block, random_unitary, PptSampleKind, SamplerConfig, SamplerMix,
};
use ppt_core::verifier::{self, Verdict};
use ppt_core::{
    hermitian_eig, singular_values, Block2x2, ComplexMatrix, HermitianMatrix, NormFamily,
    PsdMatrix,
};

const TOL: f64 = 1e-8;
const DIMS: [usize; 4] = [2, 3, 5, 8];

fn pass_line(criterion: &str) {
    println!("[PASS] {criterion}");
}

fn cfg(dim: usize, seed: u64) -> SamplerConfig {
    SamplerConfig {
        master_seed: seed,
        dim,
        scale: 1.0,
    }
}

/// Mixed-variant PPT block with the campaign's rejection fallback.
fn sample_block(c: &SamplerConfig, mix: &SamplerMix, stream: u64) -> Block2x2 {
    let kind = mix.pick(&mut c.rng(stream, 0xB10C));
    match random_ppt_block(c, stream, kind) {
        Ok(b) => b,
        Err(SampleError::RejectionBudgetExceeded { .. }) => {
            random_ppt_block(c, stream, PptSampleKind::HermitianOffdiag).unwrap()
        }
        Err(e) => panic!("sampler failed: {e}"),
    }
}

fn scalar_block(a: f64, x: Complex64, b: f64) -> Block2x2 {
    let wrap = |v: f64| {
        HermitianMatrix::new(ComplexMatrix::from_real_diag(&[v])).expect("1x1 Hermitian")
    };
    let mut xm = ComplexMatrix::zeros(1);
    xm[(0, 0)] = x;
    Block2x2::new(wrap(a), xm, wrap(b)).expect("scalar block")
}

#[test]
fn criterion_01_lemma_geodesic_suite() {
    let mix = SamplerMix::default();
    let t_grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut trials = 0usize;
    let mut inconclusive = 0usize;
    for stream in 0..500u64 {
        let dim = DIMS[(stream % 4) as usize];
        let c = cfg(dim, 0xC1);
        let blk = sample_block(&c, &mix, stream);
        for &t in &t_grid {
            let rep = verifier::check_lemma_geodesic_ppt(&blk, t, TOL);
            trials += 1;
            match rep.verdict {
                Verdict::Pass => {}
                Verdict::Inconclusive => inconclusive += 1,
                Verdict::Fail => panic!(
                    "geodesic block lost PPT at t={t}, dim={dim}, stream={stream}, margin {}",
                    rep.min_margin
                ),
            }
        }
    }
    assert!(trials == 2_500);
    assert!(
        (inconclusive as f64) < 0.01 * trials as f64,
        "inconclusive rate too high: {inconclusive}/{trials}"
    );
    pass_line(&format!(
        "criterion 1: geodesic transform kept 500 blocks x 5 weights PPT at 1e-8 \
         ({inconclusive} inconclusive)"
    ));
}

#[test]
fn criterion_02_log_majorization_chain_suite() {
    let t_grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let r_grid = [0.5, 1.0, 2.0];
    let mix = SamplerMix::default();
    let mut checked = 0usize;
    for stream in 0..500u64 {
        let dim = DIMS[(stream % 4) as usize];
        let c = cfg(dim, 0xC2);
        let blk = floor_block_diag(&sample_block(&c, &mix, stream), CHAIN_CONDITION_CAP).unwrap();
        for &t in &t_grid {
            for &r in &r_grid {
                let rep = verifier::check_log_majorization_chain(&blk, t, r, TOL);
                assert_eq!(rep.stages.len(), 4);
                match rep.verdict {
                    Verdict::Pass => checked += 1,
                    Verdict::Inconclusive => {}
                    Verdict::Fail => panic!(
                        "chain stage failed: dim={dim} stream={stream} t={t} r={r} \
                         margin={} note={:?}",
                        rep.min_margin, rep.note
                    ),
                }
            }
        }
    }
    assert!(checked >= 7_400, "too few conclusive chain trials: {checked}");

    // Scalar boundary trials: x^2 = ab collapses every stage to an equality.
    let c = cfg(1, 0xC2C2);
    let mut rng = c.rng(0, 0x5CA1);
    for _ in 0..200 {
        let a: f64 = rng.gen_range(0.2..3.0);
        let b: f64 = rng.gen_range(0.2..3.0);
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        let x = Complex64::from_polar((a * b).sqrt(), phase);
        let blk = scalar_block(a, x, b);
        let t = rng.gen_range(0.0..=1.0);
        let r = rng.gen_range(0.3..2.5);
        let rep = verifier::check_log_majorization_chain(&blk, t, r, TOL);
        assert!(rep.passed());
        for stage in &rep.stages {
            for &m in &stage.margins {
                assert!(
                    m.abs() <= 1e-12,
                    "scalar chain equality violated: {m} in {}",
                    stage.stage
                );
            }
        }
    }
    pass_line(
        "criterion 2: four-stage log-majorization chain passed on 500 blocks x 15 grid points; \
         scalar trials reproduce equality to 1e-12",
    );
}

#[test]
fn criterion_03_norm_inequality_suite() {
    let t_grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let r_grid = [0.5, 1.0, 2.0];
    let mix = SamplerMix::default();
    for stream in 0..200u64 {
        let dim = DIMS[(stream % 4) as usize];
        let c = cfg(dim, 0xC3);
        let family = norm_family_for(0xC3, dim);
        let blk = sample_block(&c, &mix, stream);
        for &t in &t_grid {
            for &r in &r_grid {
                let rep = verifier::check_norm_inequality(&blk, t, r, &family, TOL);
                match rep.verdict {
                    Verdict::Pass => {}
                    Verdict::Inconclusive => {}
                    Verdict::Fail => panic!(
                        "norm inequality failed: dim={dim} stream={stream} t={t} r={r} \
                         margin={}",
                        rep.min_margin
                    ),
                }
                // The t = 1/2, r = 1 corollary rides along in every report.
                assert!(rep
                    .stages
                    .iter()
                    .any(|s| s.stage == "corollary-x-vs-geomean" && s.asserted));
                assert!(rep
                    .stages
                    .iter()
                    .any(|s| s.stage == "logged-exponent-half-variant" && !s.asserted));
            }
        }
    }
    pass_line(
        "criterion 3: norm inequality held over Ky Fan + Schatten + 20 gamma norms, \
         including the ||X|| <= ||A # B|| corollary",
    );
}

#[test]
fn criterion_04_half_index_suite() {
    let t_grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mix = SamplerMix::default();
    for stream in 0..200u64 {
        let dim = DIMS[(stream % 4) as usize];
        let c = cfg(dim, 0xC4);
        let blk = sample_block(&c, &mix, stream);
        for &t in &t_grid {
            let rep = verifier::check_half_index(&blk, t, TOL);
            match rep.verdict {
                Verdict::Pass => {}
                Verdict::Inconclusive => {}
                Verdict::Fail => panic!(
                    "half-index bound failed: dim={dim} stream={stream} t={t} margin={}",
                    rep.min_margin
                ),
            }
            assert_eq!(rep.stages.len(), 3, "geodesic, arithmetic and corollary forms");
        }
    }
    // Exact index map.
    for (j, expect) in [(1, 1), (2, 1), (3, 2), (4, 2), (5, 3), (6, 3)] {
        assert_eq!(verifier::half_index_map(j), expect);
    }
    pass_line("criterion 4: half-index bounds (geodesic + arithmetic forms) passed; index map exact");
}

#[test]
fn criterion_05_necessity_suite_detects_bell_violation() {
    let campaign = CampaignConfig {
        seed: 0xC5,
        dims: vec![2],
        trials_per_cell: 1,
        checks: vec!["half_index".into()],
        include_necessity_suite: true,
        ..CampaignConfig::default()
    };
    let outcome = run_campaign(&campaign);
    let agg = outcome
        .result
        .checks
        .iter()
        .find(|c| c.check == "half_index")
        .expect("half_index aggregate");
    assert!(agg.failures >= 1, "necessity suite must record a violation");
    let margin = agg.min_margin.expect("margin recorded");
    assert!(
        margin <= -0.4,
        "bell-block violation margin {margin} not below -0.4"
    );
    assert!(agg.worst_witness.is_some());

    // The serialized witness reproduces the failure.
    let (_, body) = outcome
        .witnesses
        .iter()
        .find(|(name, _)| name.starts_with("witness-half_index"))
        .expect("witness file content");
    let report = replay(&Witness::from_json(body).unwrap()).unwrap();
    assert_eq!(report.verdict, Verdict::Fail);
    pass_line(&format!(
        "criterion 5: epsilon-regularized bell block produced a recorded violation \
         (margin {margin:.4} <= -0.4) with a reproducing witness"
    ));
}

#[test]
fn criterion_06_audenaert_suite() {
    for trial in 0..200u64 {
        let n = 2 + (trial % 2) as usize;
        let m = 1 + (trial % 3) as usize;
        let c = cfg(n, 0xC6);
        let family = norm_family_for(0xC6, n);
        let pairs: Vec<(PsdMatrix, PsdMatrix)> = (0..m)
            .map(|j| {
                let (a, b) = random_commuting_pair(&c, trial * 8 + j as u64);
                (ensure_strictly_positive(&a), ensure_strictly_positive(&b))
            })
            .collect();
        let rep = verifier::check_audenaert_chain(&pairs, &family, TOL);
        match rep.verdict {
            Verdict::Pass => {}
            Verdict::Inconclusive => {}
            Verdict::Fail => panic!(
                "commuting-pair chain failed: n={n} m={m} trial={trial} margin={} note={:?}",
                rep.min_margin, rep.note
            ),
        }
        // Six chained quantities = five asserted main stages.
        let main_stages = rep
            .stages
            .iter()
            .filter(|s| !s.stage.starts_with("prechain") && !s.stage.starts_with("convexity"))
            .count();
        assert_eq!(main_stages, 5);
    }

    // Scalar m = 2 case against the closed Cauchy-type expression.
    let family = norm_family_for(0xC6, 1);
    let c = cfg(1, 0xC6C6);
    let mut rng = c.rng(9, 0x5CA2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let raw: Vec<(f64, f64)> = (0..2)
            .map(|_| (rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0)))
            .collect();
        let pairs: Vec<(PsdMatrix, PsdMatrix)> = raw
            .iter()
            .map(|&(a, b)| {
                let wrap = |v: f64| {
                    PsdMatrix::new(
                        HermitianMatrix::new(ComplexMatrix::from_real_diag(&[v])).unwrap(),
                    )
                    .unwrap()
                };
                (wrap(a), wrap(b))
            })
            .collect();
        let rep = verifier::check_audenaert_chain(&pairs, &family, TOL);
        assert!(rep.passed());
        worst = worst.max(scalar_oracle::assert_margins_match(
            &rep,
            &scalar_oracle::audenaert(&raw),
            1e-12,
        ));
    }
    pass_line(&format!(
        "criterion 6: six-quantity commuting-pair chain ordered at 1e-8 over 200 trials; \
         scalar m=2 matches the closed form (worst dev {worst:.2e})"
    ));
}

#[test]
fn criterion_07_polar_sum_and_hadamard_suites() {
    // Polar-rotated sum chain on arbitrary pairs.
    for trial in 0..200u64 {
        let n = 2 + (trial % 2) as usize;
        let c = cfg(n, 0xC7);
        let family = norm_family_for(0xC7, n);
        let m = 1 + (trial % 3) as usize;
        let pairs: Vec<(ComplexMatrix, ComplexMatrix)> = (0..m)
            .map(|j| {
                (
                    random_complex(&c, trial * 16 + 2 * j as u64),
                    random_complex(&c, trial * 16 + 2 * j as u64 + 1),
                )
            })
            .collect();
        let rep = verifier::check_polar_sum_chain(&pairs, &family, TOL);
        assert!(
            rep.verdict != Verdict::Fail,
            "polar-sum chain failed at trial {trial}: margin {}",
            rep.min_margin
        );
    }
    // Hadamard pair chain on Hermitian inputs.
    for trial in 0..200u64 {
        let n = 2 + (trial % 3) as usize;
        let c = cfg(n, 0xC7C7);
        let family = norm_family_for(0xC7C7, n);
        let a = random_hermitian(&c, trial * 4 + 1);
        let b = random_hermitian(&c, trial * 4 + 2);
        let rep = verifier::check_hadamard_pair(&a, &b, &family, TOL);
        assert!(
            rep.verdict != Verdict::Fail,
            "hadamard pair failed at trial {trial}: margin {}",
            rep.min_margin
        );
    }
    // Iterated Hadamard products.
    for trial in 0..200u64 {
        let n = 2 + (trial % 2) as usize;
        let c = cfg(n, 0xC777);
        let family = norm_family_for(0xC777, n);
        let m = 1 + (trial % 3) as usize;
        let mats: Vec<ComplexMatrix> = (0..m)
            .map(|j| random_complex(&c, trial * 8 + j as u64))
            .collect();
        let rep = verifier::check_hadamard_multi(&mats, &family, TOL);
        assert!(
            rep.verdict != Verdict::Fail,
            "hadamard multi failed at trial {trial}: margin {}",
            rep.min_margin
        );
    }
    pass_line("criterion 7: polar-sum and Hadamard suites passed 200 trials each at 1e-8");
}

#[test]
fn criterion_08_aujla_suite() {
    let r_grid = [1.0, 1.25, 1.5, 2.0];
    // Hermitian pairs carry the four-stage improvement chain.
    for trial in 0..200u64 {
        let n = 2 + (trial % 3) as usize;
        let c = cfg(n, 0xC8);
        let a = random_hermitian(&c, trial * 4 + 1).matrix().clone();
        let b = random_hermitian(&c, trial * 4 + 2).matrix().clone();
        for &r in &r_grid {
            let rep = verifier::check_sum_power(&a, &b, r, TOL);
            assert!(
                rep.verdict != Verdict::Fail,
                "hermitian sum-power failed: trial={trial} r={r} margin={}",
                rep.min_margin
            );
            assert!(rep.stages.iter().any(|s| s.stage == "herm-sum-vs-geomean"));
            assert!(rep.stages.iter().any(|s| s.stage == "herm-powers-vs-shifted"));
        }
    }
    // General pairs: the squared form and the shifted-power conclusion.
    for trial in 0..200u64 {
        let n = 2 + (trial % 3) as usize;
        let c = cfg(n, 0xC8C8);
        let a = random_complex(&c, trial * 4 + 1);
        let b = random_complex(&c, trial * 4 + 2);
        for &r in &r_grid {
            let rep = verifier::check_sum_power(&a, &b, r, TOL);
            assert!(
                rep.verdict != Verdict::Fail,
                "general sum-power failed: trial={trial} r={r} margin={}",
                rep.min_margin
            );
            assert!(rep.stages.iter().any(|s| s.stage == "sum-vs-squares"));
            assert!(rep.stages.iter().any(|s| s.stage == "sum-vs-shifted-powers"));
        }
    }
    pass_line(
        "criterion 8: squared-shift bound and 1<=r<=2 conclusion passed for 200 Hermitian \
         and 200 general pairs; Hermitian improvement chain ordered stage-by-stage",
    );
}

#[test]
fn criterion_09_infrastructure() {
    // Eigendecomposition reconstruction on 500 random Hermitian matrices.
    for stream in 0..500u64 {
        let dim = DIMS[(stream % 4) as usize];
        let c = cfg(dim, 0xC9);
        let h = HermitianMatrix::from_symmetrized(&random_complex(&c, stream));
        let dec = hermitian_eig(&h).unwrap();
        let bound = 1e-10 * dim as f64 * (1.0 + h.matrix().frobenius_norm());
        assert!(dec.eigenpair_residual(h.matrix()) <= bound);
    }
    // Unitary invariance of singular values.
    for stream in 0..200u64 {
        let dim = DIMS[(stream % 4) as usize];
        let c = cfg(dim, 0xC99);
        let x = random_complex(&c, stream);
        let u = random_unitary(&c, stream + 10_000);
        let v = random_unitary(&c, stream + 20_000);
        let s1 = singular_values(&x).unwrap();
        let s2 = singular_values(&(&(&u * &x) * &v)).unwrap();
        for (a, b) in s1.values().iter().zip(s2.values()) {
            assert!((a - b).abs() <= 1e-10);
        }
    }
    // Byte-reproducibility of a campaign for a fixed seed.
    let campaign = CampaignConfig {
        seed: 0xC999,
        dims: vec![2, 3],
        trials_per_cell: 3,
        checks: vec!["amgm".into(), "norm_inequality".into(), "sum_power".into()],
        ..CampaignConfig::default()
    };
    let first = run_campaign(&campaign).result.to_json();
    let second = run_campaign(&campaign).result.to_json();
    assert_eq!(first, second, "reports must be byte-identical");
    pass_line(
        "criterion 9: eigendecomposition residuals, singular-value unitary invariance, \
         and campaign byte-reproducibility verified",
    );
}

#[test]
fn criterion_10_scalar_oracle_equivalence() {
    let family: NormFamily = norm_family_for(0, 1);
    let c = cfg(1, 0xCA);
    let mut rng = c.rng(0, 0x5CA3);
    let mut worst = 0.0f64;
    for trial in 0..1000u64 {
        let a: f64 = rng.gen_range(0.2..3.0);
        let b: f64 = rng.gen_range(0.2..3.0);
        let theta: f64 = rng.gen_range(0.05..1.0);
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        let x = Complex64::from_polar(theta * (a * b).sqrt(), phase);
        let t = rng.gen_range(0.0..=1.0);
        let r = rng.gen_range(0.3..2.5);
        let r_aujla = rng.gen_range(1.0..=2.0);
        let blk = scalar_block(a, x, b);

        let mut check = |rep: &verifier::CheckReport, oracle: &scalar_oracle::Stages| {
            assert!(rep.verdict != Verdict::Inconclusive, "{:?}", rep.note);
            worst = worst.max(scalar_oracle::assert_margins_match(rep, oracle, 1e-12));
        };

        check(
            &verifier::check_lemma_geodesic_ppt(&blk, t, TOL),
            &scalar_oracle::lemma(a, x.norm(), b, t),
        );
        check(
            &verifier::check_log_majorization_chain(&blk, t, r, TOL),
            &scalar_oracle::chain(a, x.norm(), b, t, r),
        );
        check(
            &verifier::check_norm_inequality(&blk, t, r, &family, TOL),
            &scalar_oracle::norm_inequality(a, x.norm(), b, t, r),
        );
        check(
            &verifier::check_half_index(&blk, t, TOL),
            &scalar_oracle::half_index(a, x.norm(), b, t),
        );

        let wrap = |v: f64| {
            PsdMatrix::new(HermitianMatrix::new(ComplexMatrix::from_real_diag(&[v])).unwrap())
                .unwrap()
        };
        check(
            &verifier::check_amgm(&wrap(a), &wrap(b), t, TOL),
            &scalar_oracle::amgm(a, b, t),
        );
        check(
            &verifier::check_bhatia_grover(&wrap(a), &wrap(b), t, r, TOL),
            &scalar_oracle::bhatia_grover(a, b, t, r),
        );

        let m = 1 + (trial % 3) as usize;
        let raw_pairs: Vec<(f64, f64)> = (0..m)
            .map(|_| (rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0)))
            .collect();
        let psd_pairs: Vec<(PsdMatrix, PsdMatrix)> = raw_pairs
            .iter()
            .map(|&(p, q)| (wrap(p), wrap(q)))
            .collect();
        check(
            &verifier::check_audenaert_chain(&psd_pairs, &family, TOL),
            &scalar_oracle::audenaert(&raw_pairs),
        );

        let complex_pairs: Vec<(Complex64, Complex64)> = (0..m)
            .map(|_| {
                (
                    Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)),
                    Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)),
                )
            })
            .collect();
        let matrix_pairs: Vec<(ComplexMatrix, ComplexMatrix)> = complex_pairs
            .iter()
            .map(|&(p, q)| {
                let mk = |z: Complex64| {
                    let mut m = ComplexMatrix::zeros(1);
                    m[(0, 0)] = z;
                    m
                };
                (mk(p), mk(q))
            })
            .collect();
        check(
            &verifier::check_polar_sum_chain(&matrix_pairs, &family, TOL),
            &scalar_oracle::polar_sum(&complex_pairs),
        );

        // Hermitian scalar pair: real entries.
        let alpha = rng.gen_range(-2.0..2.0f64);
        let beta = rng.gen_range(-2.0..2.0f64);
        if (alpha + beta).abs() > 1e-3 {
            let mk = |v: f64| ComplexMatrix::from_real_diag(&[v]);
            check(
                &verifier::check_sum_power(&mk(alpha), &mk(beta), r_aujla, TOL),
                &scalar_oracle::sum_power(
                    Complex64::new(alpha, 0.0),
                    Complex64::new(beta, 0.0),
                    r_aujla,
                    true,
                ),
            );
        }

        let ha = rng.gen_range(0.2..2.0f64) * if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
        let hb = rng.gen_range(0.2..2.0f64) * if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
        let wrap_h =
            |v: f64| HermitianMatrix::new(ComplexMatrix::from_real_diag(&[v])).unwrap();
        check(
            &verifier::check_hadamard_pair(&wrap_h(ha), &wrap_h(hb), &family, TOL),
            &scalar_oracle::hadamard_pair(ha, hb),
        );

        let scalars: Vec<Complex64> = (0..m)
            .map(|_| Complex64::new(rng.gen_range(0.2..2.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mats: Vec<ComplexMatrix> = scalars
            .iter()
            .map(|&z| {
                let mut mm = ComplexMatrix::zeros(1);
                mm[(0, 0)] = z;
                mm
            })
            .collect();
        check(
            &verifier::check_hadamard_multi(&mats, &family, TOL),
            &scalar_oracle::hadamard_multi(&scalars),
        );
    }
    pass_line(&format!(
        "criterion 10: every check matched the closed-form scalar oracle on 1000 trials \
         (worst deviation {worst:.2e})"
    ));
}
