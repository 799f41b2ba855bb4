//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moonvol::sentiment::Thresholds;
use moonvol::signals::{LogBase, MergeDirection, SentimentAggregator};
use moonvol::volatility::{RsForm, VolConfig};

#[derive(Parser)]
#[command(name = "moonvol", version, about = "Social-media activity and stock volatility analytics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Validate input files and print a summary
    Ingest(IngestArgs),
    /// Score tweets with a lexicon; emit id,compound,ternary CSV
    Score(ScoreArgs),
    /// Compute range-based variance estimators from OHLC bars
    Vol(VolArgs),
    /// Build the per-day signal table (features.csv + drops.log)
    Features(FeaturesArgs),
    /// Fit the M1-M8 model suite and correlation matrix from features.csv
    Fit(FitArgs),
    /// Render r2.csv / correlations.csv as aligned text tables
    Report(ReportArgs),
    /// Generate a synthetic scenario dataset
    Simulate(SimulateArgs),
    /// Run the whole pipeline end to end into an output directory
    Pipeline(PipelineArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum RsFormArg {
    Standard,
    PaperMinus,
}

impl From<RsFormArg> for RsForm {
    fn from(v: RsFormArg) -> Self {
        match v {
            RsFormArg::Standard => RsForm::Standard,
            RsFormArg::PaperMinus => RsForm::PaperMinus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum AggregatorArg {
    Std,
    Mean,
    Weighted,
    Ratio,
}

impl From<AggregatorArg> for SentimentAggregator {
    fn from(v: AggregatorArg) -> Self {
        match v {
            AggregatorArg::Std => SentimentAggregator::Std,
            AggregatorArg::Mean => SentimentAggregator::Mean,
            AggregatorArg::Weighted => SentimentAggregator::Weighted,
            AggregatorArg::Ratio => SentimentAggregator::Ratio,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum LogBaseArg {
    E,
    #[value(name = "10")]
    Ten,
}

impl From<LogBaseArg> for LogBase {
    fn from(v: LogBaseArg) -> Self {
        match v {
            LogBaseArg::E => LogBase::Natural,
            LogBaseArg::Ten => LogBase::Base10,
        }
    }
}

/// Estimator toggles shared by `vol`, `features`, and `pipeline`.
#[derive(Args, Clone, Copy)]
pub struct VolFlags {
    /// Rogers-Satchell wiring
    #[arg(long, value_enum, default_value = "standard")]
    pub rs_form: RsFormArg,
    /// Add the squared overnight return to the composite variance
    #[arg(long)]
    pub include_overnight: bool,
}

impl VolFlags {
    pub fn to_config(self) -> VolConfig {
        VolConfig {
            rs_form: self.rs_form.into(),
            include_overnight: self.include_overnight,
        }
    }
}

/// Feature-stage toggles shared by `features` and `pipeline`.
#[derive(Args, Clone)]
pub struct FeatureFlags {
    /// Merge non-trading days into the next trading day instead of the previous
    #[arg(long)]
    pub merge_forward: bool,
    /// Daily sentiment aggregation rule
    #[arg(long, value_enum, default_value = "std")]
    pub aggregator: AggregatorArg,
    /// Ternary classification thresholds: <NEG> <POS>
    #[arg(long, num_args = 2, value_names = ["NEG", "POS"], default_values = ["-0.05", "0.05"], allow_negative_numbers = true)]
    pub thresholds: Vec<f64>,
    /// Logarithm base for the activity feature
    #[arg(long, value_enum, default_value = "e")]
    pub log_base: LogBaseArg,
}

impl FeatureFlags {
    pub fn merge_direction(&self) -> MergeDirection {
        if self.merge_forward {
            MergeDirection::Forward
        } else {
            MergeDirection::Previous
        }
    }

    pub fn thresholds(&self) -> Thresholds {
        Thresholds {
            negative: self.thresholds[0],
            positive: self.thresholds[1],
        }
    }
}

/// The external input files the feature pipeline consumes.
#[derive(Args, Clone)]
pub struct InputArgs {
    /// OHLC bars CSV (date,open,high,low,close)
    #[arg(long)]
    pub ohlc: PathBuf,
    /// Tweets JSONL archive
    #[arg(long)]
    pub tweets: PathBuf,
    /// Sentiment lexicon TSV
    #[arg(long)]
    pub lexicon: PathBuf,
    /// Reddit activity series CSV (date,value)
    #[arg(long)]
    pub yolo1: PathBuf,
    /// Stock-specific search activity series CSV (date,value)
    #[arg(long)]
    pub yolo2: PathBuf,
    /// General search activity series CSV (date,value)
    #[arg(long)]
    pub m: PathBuf,
    /// Volatility index series CSV (date,value)
    #[arg(long)]
    pub vix: PathBuf,
    /// Trading calendar override: one YYYY-MM-DD per line
    #[arg(long)]
    pub calendar: Option<PathBuf>,
}

#[derive(Args)]
pub struct IngestArgs {
    /// OHLC bars CSV
    #[arg(long)]
    pub ohlc: Option<PathBuf>,
    /// Tweets JSONL archive
    #[arg(long)]
    pub tweets: Option<PathBuf>,
    /// Trading calendar file
    #[arg(long)]
    pub calendar: Option<PathBuf>,
}

#[derive(Args)]
pub struct ScoreArgs {
    /// Tweets JSONL archive
    #[arg(long)]
    pub tweets: PathBuf,
    /// Sentiment lexicon TSV
    #[arg(long)]
    pub lexicon: PathBuf,
    /// Ternary classification thresholds: <NEG> <POS>
    #[arg(long, num_args = 2, value_names = ["NEG", "POS"], default_values = ["-0.05", "0.05"], allow_negative_numbers = true)]
    pub thresholds: Vec<f64>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VolArgs {
    /// OHLC bars CSV
    #[arg(long)]
    pub ohlc: PathBuf,
    #[command(flatten)]
    pub vol: VolFlags,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct FeaturesArgs {
    #[command(flatten)]
    pub inputs: InputArgs,
    #[command(flatten)]
    pub vol: VolFlags,
    #[command(flatten)]
    pub features: FeatureFlags,
    /// Output directory
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct FitArgs {
    /// Signal table produced by `features`
    #[arg(long)]
    pub features: PathBuf,
    /// Stock symbol label for the output grid
    #[arg(long, default_value = "STOCK")]
    pub symbol: String,
    /// Also write fitted coefficients as JSON
    #[arg(long)]
    pub coefficients: bool,
    /// Output directory
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct ReportArgs {
    /// R^2 grid CSV
    #[arg(long)]
    pub r2: PathBuf,
    /// Correlation matrix CSV
    #[arg(long)]
    pub correlations: PathBuf,
}

#[derive(Args)]
pub struct SimulateArgs {
    /// Scenario config JSON
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct PipelineArgs {
    #[command(flatten)]
    pub inputs: InputArgs,
    #[command(flatten)]
    pub vol: VolFlags,
    #[command(flatten)]
    pub features: FeatureFlags,
    /// Stock symbol label for outputs
    #[arg(long, default_value = "STOCK")]
    pub symbol: String,
    /// Also write fitted coefficients as JSON
    #[arg(long)]
    pub coefficients: bool,
    /// Output directory
    #[arg(long)]
    pub out: PathBuf,
}
