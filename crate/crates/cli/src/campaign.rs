//! Campaign execution: deterministic task enumeration, parallel trials with
//! per-trial random streams, order-independent aggregation, and witness capture
//! for every failing trial.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use ppt_core::error::SampleError;
use ppt_core::sampling::{
    self, bell_block, ensure_strictly_positive, floor_block_diag, random_commuting_pair,
    random_complex, random_gamma_weights, random_hermitian, random_psd, spectral_floor,
    PptSampleKind, SamplerConfig, SamplerMix,
};
use ppt_core::verifier::{self, CheckReport, Verdict};
use ppt_core::{Block2x2, NormFamily};

use crate::config::CampaignConfig;
use crate::witness::{MatrixData, Witness, WitnessInput};

/// Condition cap applied to the diagonal blocks (or PSD pairs) feeding the
/// per-prefix log-product chains. Prefix products reach the smallest
/// eigenvalues, where relative accuracy degrades with the fourth power of the
/// condition number; capping near 30 keeps the determinant-equality stages
/// well inside the campaign tolerance.
pub const CHAIN_CONDITION_CAP: f64 = 30.0;

const GAMMA_COUNT: usize = 20;
const NECESSITY_EPSILON: f64 = 1e-8;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Environment {
    pub package: String,
    pub version: String,
    pub os: String,
    pub arch: String,
}

impl Environment {
    pub fn current() -> Self {
        Self {
            package: "ppt-lab".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            os: std::env::consts::OS.into(),
            arch: std::env::consts::ARCH.into(),
        }
    }
}

/// Per-check aggregate; trials = passes + failures + inconclusive.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckAggregate {
    pub check: String,
    pub trials: usize,
    pub passes: usize,
    pub failures: usize,
    pub inconclusive: usize,
    pub min_margin: Option<f64>,
    pub worst_trial: Option<u64>,
    pub worst_witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CampaignResult {
    pub environment: Environment,
    pub config: CampaignConfig,
    pub checks: Vec<CheckAggregate>,
}

impl CampaignResult {
    pub fn total_failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result serializes");
        s.push('\n');
        s
    }
}

pub struct CampaignOutcome {
    pub result: CampaignResult,
    /// (file name, JSON body) for every failing trial.
    pub witnesses: Vec<(String, String)>,
}

struct TrialItem {
    trial_id: u64,
    report: CheckReport,
    witness: Option<Witness>,
}

#[derive(Clone, Copy)]
struct Task<'a> {
    check_idx: usize,
    check: &'static str,
    dim: usize,
    trial: usize,
    necessity: bool,
    family: &'a NormFamily,
}

fn base_stream(check_idx: usize, dim: usize, trial: usize) -> u64 {
    ((check_idx as u64) << 40) | ((dim as u64) << 32) | trial as u64
}

fn sub_stream(base: u64, k: u64) -> u64 {
    base | (k << 24)
}

fn mix_from(cfg: &CampaignConfig) -> SamplerMix {
    let mut weights = [0.0f64; 5];
    for (slot, &w) in weights.iter_mut().zip(&cfg.sampler_mix) {
        *slot = w;
    }
    SamplerMix { weights }
}

fn static_check_name(name: &str) -> Option<&'static str> {
    verifier::CHECK_NAMES
        .iter()
        .copied()
        .find(|&known| known == name)
}

fn sample_block(
    scfg: &SamplerConfig,
    mix: &SamplerMix,
    stream: u64,
) -> Result<Block2x2, SampleError> {
    let kind = mix.pick(&mut scfg.rng(stream, 0xB10C));
    match sampling::random_ppt_block(scfg, stream, kind) {
        Ok(blk) => Ok(blk),
        // Rejection sampling ran out of attempts: fall back to the guaranteed
        // Hermitian-off-diagonal construction for this trial.
        Err(SampleError::RejectionBudgetExceeded { .. })
            if kind == PptSampleKind::RejectionGeneral =>
        {
            sampling::random_ppt_block(scfg, stream, PptSampleKind::HermitianOffdiag)
        }
        Err(e) => Err(e),
    }
}

fn inconclusive(check: &'static str, note: String) -> CheckReport {
    CheckReport {
        check_name: check,
        t: None,
        r: None,
        verdict: Verdict::Inconclusive,
        min_margin: 0.0,
        stages: Vec::new(),
        witness_ref: None,
        note: Some(note),
    }
}

fn block_input(blk: &Block2x2) -> WitnessInput {
    WitnessInput::Block {
        a: MatrixData::from_matrix(blk.a().matrix()),
        x: MatrixData::from_matrix(blk.x()),
        b: MatrixData::from_matrix(blk.b().matrix()),
    }
}

fn gamma_lists(family: &NormFamily) -> Vec<Vec<f64>> {
    family
        .gammas()
        .iter()
        .map(|g| g.weights().to_vec())
        .collect()
}

/// Builds the norm family for one dimension from the campaign seed.
pub fn norm_family_for(seed: u64, dim: usize) -> NormFamily {
    let gcfg = SamplerConfig {
        master_seed: seed,
        dim,
        scale: 1.0,
    };
    let gammas = (0..GAMMA_COUNT)
        .map(|i| random_gamma_weights(&gcfg, 5_000 + i as u64, dim))
        .collect();
    NormFamily::standard(gammas)
}

fn run_cell(cfg: &CampaignConfig, mix: &SamplerMix, task: Task<'_>) -> Vec<TrialItem> {
    let scfg = SamplerConfig {
        master_seed: cfg.seed,
        dim: task.dim,
        scale: cfg.scale,
    };
    let base = base_stream(task.check_idx, task.dim, task.trial);
    let tol = cfg.tol;
    let mut items = Vec::new();
    let mut sub_idx: u64 = 0;
    let mut push = |items: &mut Vec<TrialItem>,
                    report: CheckReport,
                    input: Option<(WitnessInput, Option<Vec<Vec<f64>>>)>| {
        let trial_id = base * 1_000 + sub_idx;
        sub_idx += 1;
        let witness = if report.verdict == Verdict::Fail {
            input.map(|(input, gammas)| Witness {
                check: report.check_name.to_string(),
                trial_id,
                t: report.t,
                r: report.r,
                tol,
                gammas,
                input,
            })
        } else {
            None
        };
        items.push(TrialItem {
            trial_id,
            report,
            witness,
        });
    };

    if task.necessity {
        // Crafted hypothesis-violating input: the epsilon-regularized Bell
        // block is PSD but not PPT, and the half-index bound must fail on it.
        let blk = bell_block(NECESSITY_EPSILON);
        let mut report = verifier::check_half_index(&blk, 0.5, tol);
        report.note = Some("necessity-suite: bell block violates the PPT hypothesis".into());
        let input = block_input(&blk);
        push(&mut items, report, Some((input, None)));
        return items;
    }

    match task.check {
        verifier::LEMMA_GEODESIC_PPT => match sample_block(&scfg, mix, base) {
            Ok(blk) => {
                let input = block_input(&blk);
                for &t in &cfg.t_grid {
                    let report = verifier::check_lemma_geodesic_ppt(&blk, t, tol);
                    push(&mut items, report, Some((input.clone(), None)));
                }
            }
            Err(e) => push(
                &mut items,
                inconclusive(verifier::LEMMA_GEODESIC_PPT, e.to_string()),
                None,
            ),
        },
        verifier::LOG_MAJORIZATION_CHAIN => {
            let sampled = sample_block(&scfg, mix, base)
                .map_err(|e| e.to_string())
                .and_then(|blk| {
                    floor_block_diag(&blk, CHAIN_CONDITION_CAP).map_err(|e| e.to_string())
                });
            match sampled {
                Ok(blk) => {
                    let input = block_input(&blk);
                    for &t in &cfg.t_grid {
                        for &r in &cfg.r_grid {
                            let report = verifier::check_log_majorization_chain(&blk, t, r, tol);
                            push(&mut items, report, Some((input.clone(), None)));
                        }
                    }
                }
                Err(e) => push(
                    &mut items,
                    inconclusive(verifier::LOG_MAJORIZATION_CHAIN, e),
                    None,
                ),
            }
        }
        verifier::NORM_INEQUALITY => match sample_block(&scfg, mix, base) {
            Ok(blk) => {
                let input = block_input(&blk);
                let gammas = Some(gamma_lists(task.family));
                for &t in &cfg.t_grid {
                    for &r in &cfg.r_grid {
                        let report =
                            verifier::check_norm_inequality(&blk, t, r, task.family, tol);
                        push(&mut items, report, Some((input.clone(), gammas.clone())));
                    }
                }
            }
            Err(e) => push(
                &mut items,
                inconclusive(verifier::NORM_INEQUALITY, e.to_string()),
                None,
            ),
        },
        verifier::HALF_INDEX => match sample_block(&scfg, mix, base) {
            Ok(blk) => {
                let input = block_input(&blk);
                for &t in &cfg.t_grid {
                    let report = verifier::check_half_index(&blk, t, tol);
                    push(&mut items, report, Some((input.clone(), None)));
                }
            }
            Err(e) => push(
                &mut items,
                inconclusive(verifier::HALF_INDEX, e.to_string()),
                None,
            ),
        },
        verifier::AMGM => {
            // Eigenvalue-level margins: cap the first argument's condition
            // number so the A^{1/2} conjugations stay well below the PSD slack.
            let sampled = random_psd(&scfg, sub_stream(base, 1))
                .and_then(|a| Ok((spectral_floor(&a, 1e4), random_psd(&scfg, sub_stream(base, 2))?)));
            match sampled {
                Ok((a, b)) => {
                    let input = WitnessInput::PsdPair {
                        a: MatrixData::from_matrix(a.matrix()),
                        b: MatrixData::from_matrix(b.matrix()),
                    };
                    for &t in &cfg.t_grid {
                        let report = verifier::check_amgm(&a, &b, t, tol);
                        push(&mut items, report, Some((input.clone(), None)));
                    }
                }
                Err(e) => push(&mut items, inconclusive(verifier::AMGM, e.to_string()), None),
            }
        }
        verifier::BHATIA_GROVER => {
            let sampled = random_psd(&scfg, sub_stream(base, 1)).and_then(|a| {
                Ok((
                    spectral_floor(&a, CHAIN_CONDITION_CAP),
                    spectral_floor(&random_psd(&scfg, sub_stream(base, 2))?, CHAIN_CONDITION_CAP),
                ))
            });
            match sampled {
                Ok((a, b)) => {
                    let input = WitnessInput::PsdPair {
                        a: MatrixData::from_matrix(a.matrix()),
                        b: MatrixData::from_matrix(b.matrix()),
                    };
                    for &t in &cfg.t_grid {
                        for &r in &cfg.r_grid {
                            let report = verifier::check_bhatia_grover(&a, &b, t, r, tol);
                            push(&mut items, report, Some((input.clone(), None)));
                        }
                    }
                }
                Err(e) => push(
                    &mut items,
                    inconclusive(verifier::BHATIA_GROVER, e.to_string()),
                    None,
                ),
            }
        }
        verifier::AUDENAERT_CHAIN => {
            let m = 1 + task.trial % 3;
            let pairs: Vec<_> = (0..m)
                .map(|j| {
                    let (a, b) = random_commuting_pair(&scfg, sub_stream(base, 1 + j as u64));
                    (ensure_strictly_positive(&a), ensure_strictly_positive(&b))
                })
                .collect();
            let input = WitnessInput::PairList {
                pairs: pairs
                    .iter()
                    .map(|(a, b)| {
                        (
                            MatrixData::from_matrix(a.matrix()),
                            MatrixData::from_matrix(b.matrix()),
                        )
                    })
                    .collect(),
            };
            let gammas = Some(gamma_lists(task.family));
            let report = verifier::check_audenaert_chain(&pairs, task.family, tol);
            push(&mut items, report, Some((input, gammas)));
        }
        verifier::POLAR_SUM_CHAIN => {
            let m = 1 + task.trial % 3;
            let pairs: Vec<_> = (0..m)
                .map(|j| {
                    (
                        random_complex(&scfg, sub_stream(base, 1 + 2 * j as u64)),
                        random_complex(&scfg, sub_stream(base, 2 + 2 * j as u64)),
                    )
                })
                .collect();
            let input = WitnessInput::PairList {
                pairs: pairs
                    .iter()
                    .map(|(a, b)| (MatrixData::from_matrix(a), MatrixData::from_matrix(b)))
                    .collect(),
            };
            let gammas = Some(gamma_lists(task.family));
            let report = verifier::check_polar_sum_chain(&pairs, task.family, tol);
            push(&mut items, report, Some((input, gammas)));
        }
        verifier::SUM_POWER => {
            let hermitian_pair = task.trial % 2 == 0;
            let (a, b) = if hermitian_pair {
                (
                    random_hermitian(&scfg, sub_stream(base, 1)).matrix().clone(),
                    random_hermitian(&scfg, sub_stream(base, 2)).matrix().clone(),
                )
            } else {
                (
                    random_complex(&scfg, sub_stream(base, 1)),
                    random_complex(&scfg, sub_stream(base, 2)),
                )
            };
            let input = WitnessInput::GeneralPair {
                a: MatrixData::from_matrix(&a),
                b: MatrixData::from_matrix(&b),
            };
            for &r in &cfg.r_grid {
                let report = verifier::check_sum_power(&a, &b, r, tol);
                push(&mut items, report, Some((input.clone(), None)));
            }
        }
        verifier::HADAMARD_PAIR => {
            let a = random_hermitian(&scfg, sub_stream(base, 1));
            let b = random_hermitian(&scfg, sub_stream(base, 2));
            let input = WitnessInput::HermitianPair {
                a: MatrixData::from_matrix(a.matrix()),
                b: MatrixData::from_matrix(b.matrix()),
            };
            let gammas = Some(gamma_lists(task.family));
            let report = verifier::check_hadamard_pair(&a, &b, task.family, tol);
            push(&mut items, report, Some((input, gammas)));
        }
        verifier::HADAMARD_MULTI => {
            let m = 1 + task.trial % 3;
            let mats: Vec<_> = (0..m)
                .map(|j| random_complex(&scfg, sub_stream(base, 1 + j as u64)))
                .collect();
            let input = WitnessInput::MatrixList {
                mats: mats.iter().map(MatrixData::from_matrix).collect(),
            };
            let gammas = Some(gamma_lists(task.family));
            let report = verifier::check_hadamard_multi(&mats, task.family, tol);
            push(&mut items, report, Some((input, gammas)));
        }
        other => push(
            &mut items,
            inconclusive(verifier::CHECK_NAMES[0], format!("unknown check {other}")),
            None,
        ),
    }
    items
}

/// Runs the whole campaign. Trials execute concurrently up to the configured
/// job bound; aggregation folds items in deterministic task order, so reports
/// are byte-identical for identical (config, seed).
pub fn run_campaign(cfg: &CampaignConfig) -> CampaignOutcome {
    let mix = mix_from(cfg);

    let mut family_dims: Vec<usize> = cfg.dims.clone();
    if cfg.include_necessity_suite && !family_dims.contains(&2) {
        family_dims.push(2);
    }
    let families: BTreeMap<usize, NormFamily> = family_dims
        .iter()
        .map(|&d| (d, norm_family_for(cfg.seed, d)))
        .collect();

    let mut tasks: Vec<Task<'_>> = Vec::new();
    for (check_idx, check_name) in cfg.checks.iter().enumerate() {
        let check = match static_check_name(check_name) {
            Some(c) => c,
            None => continue,
        };
        for &dim in &cfg.dims {
            let family = &families[&dim];
            for trial in 0..cfg.trials_per_cell {
                tasks.push(Task {
                    check_idx,
                    check,
                    dim,
                    trial,
                    necessity: false,
                    family,
                });
            }
        }
        if cfg.include_necessity_suite && check == verifier::HALF_INDEX {
            tasks.push(Task {
                check_idx,
                check,
                dim: 2,
                trial: (1 << 24) - 1,
                necessity: true,
                family: &families[&2],
            });
        }
    }

    let run_all = || -> Vec<Vec<TrialItem>> {
        tasks
            .par_iter()
            .map(|task| run_cell(cfg, &mix, *task))
            .collect()
    };
    let outputs: Vec<Vec<TrialItem>> = if cfg.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .expect("thread pool");
        pool.install(run_all)
    } else {
        run_all()
    };

    let mut aggregates: BTreeMap<String, CheckAggregate> = BTreeMap::new();
    let mut witnesses = Vec::new();
    for (task, items) in tasks.iter().zip(outputs) {
        for item in items {
            let entry = aggregates
                .entry(task.check.to_string())
                .or_insert_with(|| CheckAggregate {
                    check: task.check.to_string(),
                    trials: 0,
                    passes: 0,
                    failures: 0,
                    inconclusive: 0,
                    min_margin: None,
                    worst_trial: None,
                    worst_witness: None,
                });
            entry.trials += 1;
            match item.report.verdict {
                Verdict::Pass => entry.passes += 1,
                Verdict::Fail => entry.failures += 1,
                Verdict::Inconclusive => entry.inconclusive += 1,
            }
            if item.report.verdict != Verdict::Inconclusive {
                let is_new_min = entry
                    .min_margin
                    .map_or(true, |m| item.report.min_margin < m);
                if is_new_min {
                    entry.min_margin = Some(item.report.min_margin);
                    entry.worst_trial = Some(item.trial_id);
                    entry.worst_witness = item
                        .witness
                        .as_ref()
                        .map(|w| witness_file_name(&w.check, w.trial_id));
                }
            }
            if let Some(w) = item.witness {
                witnesses.push((witness_file_name(&w.check, w.trial_id), w.to_json()));
            }
        }
    }

    CampaignOutcome {
        result: CampaignResult {
            environment: Environment::current(),
            config: cfg.clone(),
            checks: aggregates.into_values().collect(),
        },
        witnesses,
    }
}

pub fn witness_file_name(check: &str, trial_id: u64) -> String {
    format!("witness-{check}-{trial_id}.json")
}
