use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Game statistics
    Analyze,
    /// Optimal price at a riskless rate
    Price,
    /// Price of the translated game, with the invariance report
    Translate,
    /// Shift at which full investment becomes optimal
    Threshold,
    /// Large-shift asymptotics over a list of shifts
    Sweep,
    /// Cross-check the solver against independent oracles
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Growth-optimal pricing of stochastic payoff games.
#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "gamepricing", version)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Game document (JSON)
    #[arg(long)]
    pub game: PathBuf,
    /// Riskless continuously compounded rate per period
    #[arg(long, allow_hyphen_values = true)]
    pub rate: Option<f64>,
    /// Parallel shift n of the payout
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<f64>,
    /// Comma-separated increasing shifts
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub shifts: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = 200)]
    pub max_iter: usize,
    /// Seed for Monte Carlo checks
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Rescale probabilities to sum to one
    #[arg(long)]
    pub normalize: bool,
}

impl RunConfig {
    /// Flags each command needs beyond `--game`.
    pub fn check(&self) -> Result<(), String> {
        let need_rate = matches!(
            self.command,
            Command::Price | Command::Translate | Command::Threshold | Command::Sweep
        );
        if need_rate && self.rate.is_none() {
            return Err(format!("{:?} requires --rate", self.command).to_lowercase());
        }
        if self.command == Command::Translate && self.shift.is_none() {
            return Err("translate requires --shift".into());
        }
        if self.command == Command::Sweep && self.shifts.as_ref().is_none_or(|s| s.is_empty()) {
            return Err("sweep requires --shifts n1,n2,...".into());
        }
        if self.format == Format::Csv && self.command != Command::Sweep {
            return Err("--format csv is only available for sweep".into());
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(format!("--tol must be positive, got {}", self.tol));
        }
        if self.max_iter == 0 {
            return Err("--max-iter must be at least 1".into());
        }
        Ok(())
    }
}
