use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ppt_cli::config::{parse_config_file, resolve, ConfigOverlay};
use ppt_cli::{env_seed, hunt_command, report_command, verify_command, EXIT_ERROR};

#[derive(Parser)]
#[command(
    name = "ppt-lab",
    version,
    about = "Randomized verification campaigns for PPT block inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded campaign over every configured check and write a JSON report.
    Verify(CampaignArgs),
    /// Render a saved campaign report as a table.
    Report {
        /// Path to a report written by `verify`.
        result: PathBuf,
    },
    /// Sample PSD-but-not-PPT blocks and record how the inequalities fail.
    Hunt(CampaignArgs),
}

#[derive(Args, Clone)]
struct CampaignArgs {
    /// Flat key=value config file; flags override file entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Block dimensions, comma separated.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Trials per (check, dimension) cell.
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed; falls back to $PPT_LAB_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Weights t, comma separated, each between 0 and 1.
    #[arg(long = "t-grid", value_delimiter = ',')]
    t_grid: Option<Vec<f64>>,
    /// Exponents r, comma separated, each positive.
    #[arg(long = "r-grid", value_delimiter = ',')]
    r_grid: Option<Vec<f64>>,
    /// Campaign tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Check names or `all`.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Up to five weights over the PPT sampler variants.
    #[arg(long = "sampler-mix", value_delimiter = ',')]
    sampler_mix: Option<Vec<f64>>,
    /// Concurrent trial workers (0 = automatic).
    #[arg(long)]
    jobs: Option<usize>,
    /// Output path for the JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also run the crafted hypothesis-violating inputs (expected failures).
    #[arg(long = "include-necessity-suite")]
    include_necessity_suite: bool,
    /// Gaussian entry scale of the samplers.
    #[arg(long)]
    scale: Option<f64>,
}

impl CampaignArgs {
    fn overlay(&self) -> ConfigOverlay {
        ConfigOverlay {
            seed: self.seed,
            dims: self.dims.clone(),
            trials: self.trials,
            t_grid: self.t_grid.clone(),
            r_grid: self.r_grid.clone(),
            tol: self.tol,
            checks: self.checks.clone(),
            sampler_mix: self.sampler_mix.clone(),
            jobs: self.jobs,
            include_necessity_suite: if self.include_necessity_suite {
                Some(true)
            } else {
                None
            },
            scale: self.scale,
            out: self.out.as_ref().map(|p| p.display().to_string()),
        }
    }
}

fn run_campaign_command(args: &CampaignArgs, default_out: &str, hunt: bool) -> i32 {
    let file_overlay = match &args.config {
        Some(path) => match parse_config_file(path) {
            Ok(overlay) => Some(overlay),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_ERROR;
            }
        },
        None => None,
    };
    let file_out = file_overlay.as_ref().and_then(|f| f.out.clone());
    let cfg = match resolve(args.overlay(), file_overlay, env_seed()) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let out = args
        .out
        .clone()
        .or(file_out.map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(default_out));
    if hunt {
        hunt_command(&cfg, &out)
    } else {
        verify_command(&cfg, &out)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Verify(args) => run_campaign_command(args, "report.json", false),
        Command::Report { result } => report_command(result),
        Command::Hunt(args) => run_campaign_command(args, "hunt.json", true),
    };
    ExitCode::from(code as u8)
}
