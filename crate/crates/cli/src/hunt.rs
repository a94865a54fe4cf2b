//! Violation hunting: samples PSD blocks that are *not* PPT, runs the theorem
//! checks on them, and records how often and how badly the inequalities break.
//! Hunting always succeeds as a process; the findings live in the report.

use serde::{Deserialize, Serialize};

use ppt_core::hermitian::{HermitianMatrix, PsdMatrix};
use ppt_core::matrix::ComplexMatrix;
use ppt_core::sampling::{bell_block, ensure_strictly_positive, SamplerConfig};
use ppt_core::verifier::{self, Verdict};
use ppt_core::Block2x2;

use crate::campaign::{norm_family_for, Environment};
use crate::config::CampaignConfig;

const SAMPLE_ATTEMPTS: usize = 400;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HuntCell {
    pub check: String,
    pub dim: usize,
    pub trials: usize,
    pub violations: usize,
    pub inconclusive: usize,
    pub min_margin: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CraftedFinding {
    pub name: String,
    pub check: String,
    pub margin: f64,
    pub violated: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HuntResult {
    pub environment: Environment,
    pub config: CampaignConfig,
    pub warnings: Vec<String>,
    pub cells: Vec<HuntCell>,
    pub crafted: Vec<CraftedFinding>,
}

impl HuntResult {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("hunt result serializes");
        s.push('\n');
        s
    }
}

/// A PSD-but-not-PPT block: partition a Gram matrix of size 2n and reject PPT
/// draws. Returns None when every attempt certified PPT.
fn sample_non_ppt(scfg: &SamplerConfig, stream: u64) -> Option<Block2x2> {
    let n = scfg.dim;
    let big_cfg = SamplerConfig {
        master_seed: scfg.master_seed,
        dim: 2 * n,
        scale: scfg.scale,
    };
    for attempt in 0..SAMPLE_ATTEMPTS as u64 {
        let g = ppt_core::sampling::random_complex(&big_cfg, stream * 1024 + attempt);
        let big = g.gram();
        let a = HermitianMatrix::new(ComplexMatrix::from_fn(n, |i, j| big[(i, j)])).ok()?;
        let x = ComplexMatrix::from_fn(n, |i, j| big[(i, j + n)]);
        let b =
            HermitianMatrix::new(ComplexMatrix::from_fn(n, |i, j| big[(i + n, j + n)])).ok()?;
        // Strictly positive diagonal blocks keep the means well-defined without
        // materially moving the violation margins.
        let a = ensure_strictly_positive(&PsdMatrix::new(a).ok()?);
        let b = ensure_strictly_positive(&PsdMatrix::new(b).ok()?);
        let blk = Block2x2::new(a.hermitian().clone(), x, b.hermitian().clone()).ok()?;
        let cert = blk.is_ppt(1e-9).ok()?;
        if !cert.is_ppt {
            return Some(blk);
        }
    }
    None
}

pub fn run_hunt(cfg: &CampaignConfig) -> HuntResult {
    let mut warnings = Vec::new();
    let mut cells = Vec::new();

    let hunt_checks = [
        verifier::HALF_INDEX,
        verifier::LOG_MAJORIZATION_CHAIN,
        verifier::NORM_INEQUALITY,
        verifier::LEMMA_GEODESIC_PPT,
    ];

    for &dim in &cfg.dims {
        if dim < 2 {
            warnings.push(format!(
                "dim {dim}: every PSD scalar block is PPT; nothing to hunt"
            ));
            continue;
        }
        let scfg = SamplerConfig {
            master_seed: cfg.seed,
            dim,
            scale: cfg.scale,
        };
        let family = norm_family_for(cfg.seed, dim);

        let mut stats: Vec<HuntCell> = hunt_checks
            .iter()
            .map(|&c| HuntCell {
                check: c.to_string(),
                dim,
                trials: 0,
                violations: 0,
                inconclusive: 0,
                min_margin: None,
            })
            .collect();

        let mut found_any = false;
        for trial in 0..cfg.trials_per_cell {
            let Some(blk) = sample_non_ppt(&scfg, trial as u64) else {
                continue;
            };
            found_any = true;
            let mut reports = Vec::new();
            for &t in &cfg.t_grid {
                reports.push((0usize, verifier::check_half_index(&blk, t, cfg.tol)));
                reports.push((
                    3usize,
                    verifier::check_lemma_geodesic_ppt(&blk, t, cfg.tol),
                ));
                for &r in &cfg.r_grid {
                    reports.push((
                        1usize,
                        verifier::check_log_majorization_chain(&blk, t, r, cfg.tol),
                    ));
                    reports.push((
                        2usize,
                        verifier::check_norm_inequality(&blk, t, r, &family, cfg.tol),
                    ));
                }
            }
            for (slot, report) in reports {
                let cell = &mut stats[slot];
                cell.trials += 1;
                match report.verdict {
                    Verdict::Fail => {
                        cell.violations += 1;
                        let better = cell.min_margin.map_or(true, |m| report.min_margin < m);
                        if better {
                            cell.min_margin = Some(report.min_margin);
                        }
                    }
                    Verdict::Inconclusive => cell.inconclusive += 1,
                    Verdict::Pass => {
                        let better = cell.min_margin.map_or(true, |m| report.min_margin < m);
                        if better {
                            cell.min_margin = Some(report.min_margin);
                        }
                    }
                }
            }
        }
        if !found_any {
            warnings.push(format!(
                "dim {dim}: every sampled block certified PPT; zero violations is expected \
                 under this (mis)configuration"
            ));
        }
        cells.extend(stats);
    }

    // Crafted Bell-family inputs demonstrate the detectable violation directly.
    let mut crafted = Vec::new();
    for &eps in &[1e-4, 1e-6, 1e-8] {
        let blk = bell_block(eps);
        let report = verifier::check_half_index(&blk, 0.5, cfg.tol);
        crafted.push(CraftedFinding {
            name: format!("bell-eps-{eps:e}"),
            check: verifier::HALF_INDEX.to_string(),
            margin: report.min_margin,
            violated: report.verdict == Verdict::Fail,
        });
    }

    HuntResult {
        environment: Environment::current(),
        config: cfg.clone(),
        warnings,
        cells,
        crafted,
    }
}
