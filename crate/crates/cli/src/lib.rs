//! Command front end for the PPT inequality lab: seeded verification
//! campaigns with JSON reports and witness files (`verify`), rendering of
//! saved reports (`report`), and hypothesis-violation hunting (`hunt`).
//!
//! Exit codes: 0 all checks passed, 1 at least one violation was recorded,
//! 2 configuration, parse, or I/O error.

use std::path::Path;

pub mod campaign;
pub mod config;
pub mod hunt;
pub mod report;
pub mod witness;

pub use campaign::{run_campaign, CampaignOutcome, CampaignResult};
pub use config::{CampaignConfig, ConfigError, ConfigOverlay};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Runs a campaign, writes the JSON report and any witness files beside it,
/// prints the summary table, and returns the exit code.
pub fn verify_command(cfg: &CampaignConfig, out: &Path) -> i32 {
    let outcome = run_campaign(cfg);
    let dir = out.parent().map(Path::to_path_buf).unwrap_or_default();

    for (name, body) in &outcome.witnesses {
        let path = if dir.as_os_str().is_empty() {
            std::path::PathBuf::from(name)
        } else {
            dir.join(name)
        };
        if let Err(e) = std::fs::write(&path, body) {
            eprintln!("error: cannot write witness {}: {e}", path.display());
            return EXIT_ERROR;
        }
    }
    if let Err(e) = std::fs::write(out, outcome.result.to_json()) {
        eprintln!("error: cannot write report {}: {e}", out.display());
        return EXIT_ERROR;
    }
    print!("{}", report::render_table(&outcome.result));
    println!(
        "report: {} ({} witness file{})",
        out.display(),
        outcome.witnesses.len(),
        if outcome.witnesses.len() == 1 { "" } else { "s" }
    );
    if outcome.result.total_failures() > 0 {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

/// Loads a saved report and prints the summary table.
pub fn report_command(path: &Path) -> i32 {
    match report::load_result(path) {
        Ok(result) => {
            print!("{}", report::render_table(&result));
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

/// Runs the violation hunt and writes its JSON findings.
pub fn hunt_command(cfg: &CampaignConfig, out: &Path) -> i32 {
    let result = hunt::run_hunt(cfg);
    for warning in &result.warnings {
        eprintln!("warning: {warning}");
    }
    if let Err(e) = std::fs::write(out, result.to_json()) {
        eprintln!("error: cannot write hunt report {}: {e}", out.display());
        return EXIT_ERROR;
    }
    let total_violations: usize = result.cells.iter().map(|c| c.violations).sum();
    println!(
        "hunt: {} cells, {} violations recorded, report: {}",
        result.cells.len(),
        total_violations,
        out.display()
    );
    EXIT_OK
}

/// Reads the fallback seed from `PPT_LAB_SEED` when set and parseable.
pub fn env_seed() -> Option<u64> {
    std::env::var(config::SEED_ENV_VAR)
        .ok()
        .and_then(|v| v.parse().ok())
}
