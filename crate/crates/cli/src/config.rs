//! Campaign configuration: defaults, a flat key-value config file whose keys
//! mirror the command-line flags one-to-one, and the flag > file > environment
//! precedence chain for the seed.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use ppt_core::verifier::CHECK_NAMES;

pub const SEED_ENV_VAR: &str = "PPT_LAB_SEED";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

/// Fully resolved campaign settings; also the config echo embedded in reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub trials_per_cell: usize,
    pub t_grid: Vec<f64>,
    pub r_grid: Vec<f64>,
    pub tol: f64,
    pub checks: Vec<String>,
    pub sampler_mix: Vec<f64>,
    pub jobs: usize,
    pub include_necessity_suite: bool,
    pub scale: f64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            dims: vec![2, 3, 5, 8],
            trials_per_cell: 200,
            t_grid: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            r_grid: vec![0.5, 1.0, 2.0],
            tol: 1e-8,
            checks: CHECK_NAMES.iter().map(|s| s.to_string()).collect(),
            sampler_mix: vec![40.0, 40.0, 20.0],
            jobs: 0,
            include_necessity_suite: false,
            scale: 1.0,
        }
    }
}

/// Partial settings collected from one source (file or flags).
#[derive(Clone, Debug, Default)]
pub struct ConfigOverlay {
    pub seed: Option<u64>,
    pub dims: Option<Vec<usize>>,
    pub trials: Option<usize>,
    pub t_grid: Option<Vec<f64>>,
    pub r_grid: Option<Vec<f64>>,
    pub tol: Option<f64>,
    pub checks: Option<Vec<String>>,
    pub sampler_mix: Option<Vec<f64>>,
    pub jobs: Option<usize>,
    pub include_necessity_suite: Option<bool>,
    pub scale: Option<f64>,
    pub out: Option<String>,
}

impl ConfigOverlay {
    fn merge_under(self, base: ConfigOverlay) -> ConfigOverlay {
        ConfigOverlay {
            seed: self.seed.or(base.seed),
            dims: self.dims.or(base.dims),
            trials: self.trials.or(base.trials),
            t_grid: self.t_grid.or(base.t_grid),
            r_grid: self.r_grid.or(base.r_grid),
            tol: self.tol.or(base.tol),
            checks: self.checks.or(base.checks),
            sampler_mix: self.sampler_mix.or(base.sampler_mix),
            jobs: self.jobs.or(base.jobs),
            include_necessity_suite: self.include_necessity_suite.or(base.include_necessity_suite),
            scale: self.scale.or(base.scale),
            out: self.out.or(base.out),
        }
    }
}

/// Parses the flat `key = value` config file. Keys equal the flag names without
/// the leading dashes; `#` starts a comment.
pub fn parse_config_file(path: &Path) -> Result<ConfigOverlay, ConfigError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: display.clone(),
        source,
    })?;
    let mut overlay = ConfigOverlay::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Parse {
            path: display.clone(),
            line: line_no,
            message: "expected `key = value`".into(),
        })?;
        let key = key.trim();
        let value = value.trim();
        let err = |message: String| ConfigError::Parse {
            path: display.clone(),
            line: line_no,
            message,
        };
        match key {
            "seed" => overlay.seed = Some(value.parse().map_err(|_| err(format!("bad seed `{value}`")))?),
            "dims" => overlay.dims = Some(parse_list(value).map_err(err)?),
            "trials" => {
                overlay.trials = Some(value.parse().map_err(|_| err(format!("bad trials `{value}`")))?)
            }
            "t-grid" => overlay.t_grid = Some(parse_list(value).map_err(err)?),
            "r-grid" => overlay.r_grid = Some(parse_list(value).map_err(err)?),
            "tol" => overlay.tol = Some(value.parse().map_err(|_| err(format!("bad tol `{value}`")))?),
            "checks" => {
                overlay.checks = Some(value.split(',').map(|s| s.trim().to_string()).collect())
            }
            "sampler-mix" => overlay.sampler_mix = Some(parse_list(value).map_err(err)?),
            "jobs" => {
                overlay.jobs = Some(value.parse().map_err(|_| err(format!("bad jobs `{value}`")))?)
            }
            "include-necessity-suite" => {
                overlay.include_necessity_suite =
                    Some(value.parse().map_err(|_| err(format!("bad bool `{value}`")))?)
            }
            "scale" => {
                overlay.scale = Some(value.parse().map_err(|_| err(format!("bad scale `{value}`")))?)
            }
            "out" => overlay.out = Some(value.to_string()),
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    Ok(overlay)
}

fn parse_list<T: std::str::FromStr>(value: &str) -> Result<Vec<T>, String> {
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| format!("bad list entry `{}`", s.trim()))
        })
        .collect()
}

/// Resolves flags over file over `PPT_LAB_SEED` over defaults, then validates.
pub fn resolve(
    flags: ConfigOverlay,
    file: Option<ConfigOverlay>,
    env_seed: Option<u64>,
) -> Result<CampaignConfig, ConfigError> {
    let merged = match file {
        Some(f) => flags.merge_under(f),
        None => flags,
    };
    let defaults = CampaignConfig::default();
    let cfg = CampaignConfig {
        seed: merged.seed.or(env_seed).unwrap_or(defaults.seed),
        dims: merged.dims.unwrap_or(defaults.dims),
        trials_per_cell: merged.trials.unwrap_or(defaults.trials_per_cell),
        t_grid: merged.t_grid.unwrap_or(defaults.t_grid),
        r_grid: merged.r_grid.unwrap_or(defaults.r_grid),
        tol: merged.tol.unwrap_or(defaults.tol),
        checks: expand_checks(merged.checks.unwrap_or_else(|| vec!["all".into()]))?,
        sampler_mix: merged.sampler_mix.unwrap_or(defaults.sampler_mix),
        jobs: merged.jobs.unwrap_or(defaults.jobs),
        include_necessity_suite: merged
            .include_necessity_suite
            .unwrap_or(defaults.include_necessity_suite),
        scale: merged.scale.unwrap_or(defaults.scale),
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn expand_checks(raw: Vec<String>) -> Result<Vec<String>, ConfigError> {
    if raw.iter().any(|c| c == "all") {
        return Ok(CHECK_NAMES.iter().map(|s| s.to_string()).collect());
    }
    for name in &raw {
        if !CHECK_NAMES.contains(&name.as_str()) {
            return Err(ConfigError::Invalid(format!(
                "unknown check `{name}`; known checks: {}",
                CHECK_NAMES.join(", ")
            )));
        }
    }
    Ok(raw)
}

fn validate(cfg: &CampaignConfig) -> Result<(), ConfigError> {
    if cfg.trials_per_cell == 0 {
        return Err(ConfigError::Invalid("trials must be at least 1".into()));
    }
    if cfg.trials_per_cell > (1 << 24) {
        return Err(ConfigError::Invalid("trials must fit in 24 bits".into()));
    }
    if cfg.dims.is_empty() || cfg.dims.iter().any(|&d| d == 0 || d > 64) {
        return Err(ConfigError::Invalid(
            "dims must be nonempty with entries in 1..=64".into(),
        ));
    }
    if cfg.t_grid.is_empty() || cfg.t_grid.iter().any(|&t| !(0.0..=1.0).contains(&t)) {
        return Err(ConfigError::Invalid(
            "t-grid entries must lie in [0,1]".into(),
        ));
    }
    if cfg.r_grid.is_empty() || cfg.r_grid.iter().any(|&r| !(r > 0.0)) {
        return Err(ConfigError::Invalid("r-grid entries must be positive".into()));
    }
    if !(cfg.tol >= 0.0) {
        return Err(ConfigError::Invalid("tol must be nonnegative".into()));
    }
    if cfg.checks.is_empty() {
        return Err(ConfigError::Invalid("checks must be nonempty".into()));
    }
    if cfg.sampler_mix.is_empty()
        || cfg.sampler_mix.len() > 5
        || cfg.sampler_mix.iter().any(|&w| w < 0.0)
        || cfg.sampler_mix.iter().sum::<f64>() <= 0.0
    {
        return Err(ConfigError::Invalid(
            "sampler-mix needs 1..=5 nonnegative weights with positive sum".into(),
        ));
    }
    if !(cfg.scale > 0.0) {
        return Err(ConfigError::Invalid("scale must be positive".into()));
    }
    Ok(())
}
