//! Loading campaign results and rendering the human-readable summary table.

use std::path::Path;

use thiserror::Error;

use crate::campaign::CampaignResult;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

pub fn load_result(path: &Path) -> Result<CampaignResult, ReportError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ReportError::Io {
        path: display.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| ReportError::Parse {
        path: display,
        source,
    })
}

/// One row per check, ordered by check name (the aggregates are stored sorted).
pub fn render_table(result: &CampaignResult) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<24} {:>7} {:>7} {:>6} {:>6} {:>9} {:>13}  {}\n",
        "check", "trials", "pass", "fail", "inc", "pass-rate", "min-margin", "worst-witness"
    ));
    for agg in &result.checks {
        let decided = agg.passes + agg.failures;
        let rate = if decided == 0 {
            "-".to_string()
        } else {
            format!("{:.1}%", 100.0 * agg.passes as f64 / decided as f64)
        };
        let margin = agg
            .min_margin
            .map(|m| format!("{m:+.3e}"))
            .unwrap_or_else(|| "-".to_string());
        let witness = agg.worst_witness.clone().unwrap_or_else(|| "-".to_string());
        out.push_str(&format!(
            "{:<24} {:>7} {:>7} {:>6} {:>6} {:>9} {:>13}  {}\n",
            agg.check, agg.trials, agg.passes, agg.failures, agg.inconclusive, rate, margin, witness
        ));
    }
    out
}
