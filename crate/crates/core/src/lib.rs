//! Social-media activity and stock volatility analytics.
//!
//! The crate covers the full path from raw inputs to fitted models:
//!
//! - [`market_data`] — OHLC bars, archived tweets, exogenous daily series,
//!   trading-calendar alignment.
//! - [`volatility`] — range-based daily variance estimators (Parkinson,
//!   Garman-Klass, Rogers-Satchell) and the annualized log-volatility proxy.
//! - [`sentiment`] — lexicon-based compound scoring of tweet text with a
//!   ternary discretization.
//! - [`signals`] — per-trading-day MOON activity/polarity features and the
//!   regression-ready signal table.
//! - [`regress`] — the nested OLS model suite M1-M8, R^2 reporting, and
//!   Pearson correlation matrices.
//! - [`synth`] — deterministic synthetic scenarios (GBM bars plus coupled
//!   tweet streams) for verifying the pipeline at desk scale.

pub mod market_data;
pub mod regress;
pub mod sentiment;
pub mod signals;
pub mod synth;
pub mod volatility;

pub use market_data::{ExogenousSeries, OhlcBar, SeriesName, TradingCalendar, TweetRecord};
pub use regress::{FitResult, ModelSpec};
pub use sentiment::{Lexicon, SentimentScore};
pub use signals::DailySignalRow;
pub use synth::ScenarioConfig;
