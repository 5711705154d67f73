use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pathangle::Scenario;

/// Pathangled two-quanton interferometry: joint-detection statistics, CHSH
/// correlations, critical angle and closed-form audits.
///
/// All angle flags are in degrees.
#[derive(Debug, Parser)]
#[command(name = "pathangle", version, propagate_version = true)]
pub struct Cli {
    /// Output file, or `-` for standard output.
    #[arg(long, global = true, default_value = "-")]
    pub out: PathBuf,

    /// Output format. Defaults to csv for `scan`, json otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads for scans and audits; output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Joint probabilities and expectation value at one configuration,
    /// simulated and closed-form.
    #[command(allow_negative_numbers = true)]
    Probe(ProbeArgs),
    /// CHSH value over an (alpha, gamma) grid.
    #[command(allow_negative_numbers = true)]
    Scan(ScanArgs),
    /// Production angle at which S = 2 for gamma = 0.
    CriticalAngle(CriticalArgs),
    /// Search the retarder settings for the largest S.
    #[command(allow_negative_numbers = true)]
    Optimize(OptimizeArgs),
    /// Compare closed forms against the unitary pipeline on a grid.
    Audit(AuditArgs),
    /// Enumerate deterministic local strategies.
    LhvBound,
}

fn parse_scenario(s: &str) -> Result<Scenario, String> {
    s.parse::<Scenario>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct ScenarioArg {
    /// `I` (single beam splitter) or `II` (double beam splitter).
    #[arg(long, default_value = "I", value_parser = parse_scenario)]
    pub scenario: Scenario,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[command(flatten)]
    pub scenario: ScenarioArg,
    /// Production angle, degrees in [0, 90].
    #[arg(long)]
    pub alpha: f64,
    /// Berry phase, degrees.
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Left retarder angle, degrees.
    #[arg(long, default_value_t = 0.0)]
    pub theta_l: f64,
    /// Right retarder angle, degrees.
    #[arg(long, default_value_t = 0.0)]
    pub theta_r: f64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub scenario: ScenarioArg,
    #[arg(long, alias = "alpha", default_value_t = 0.0)]
    pub alpha_start: f64,
    /// Defaults to `--alpha-start`.
    #[arg(long)]
    pub alpha_stop: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub alpha_step: f64,
    #[arg(long, alias = "gamma", default_value_t = 0.0)]
    pub gamma_start: f64,
    /// Defaults to `--gamma-start`.
    #[arg(long)]
    pub gamma_stop: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub gamma_step: f64,
    /// Retarder quad `theta_l,theta_r,theta_l',theta_r'` in degrees.
    #[arg(long, value_delimiter = ',', num_args = 4, default_values_t = [0.0, 45.0, 90.0, 135.0])]
    pub settings: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    /// Bisection bracket width in radians, in (0, 1e-3).
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub scenario: ScenarioArg,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Grid points per settings axis.
    #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u32).range(8..=256))]
    pub coarse: u32,
    /// Golden-section refinement sweeps.
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(1..))]
    pub rounds: u32,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[command(flatten)]
    pub scenario: ScenarioArg,
    /// Grid points per axis (alpha, gamma, theta_l, theta_r).
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(8..=200))]
    pub steps: u32,
}
