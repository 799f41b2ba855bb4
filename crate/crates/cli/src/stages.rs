//! Shared pipeline stages: loading inputs, building the signal table, and
//! writing the standard output files.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use chrono::NaiveDate;

use moonvol::market_data::{
    align_to_calendar, filter_for_sentiment, parse_exogenous_csv, parse_ohlc_csv,
    parse_tweets_jsonl, ExogenousSeries, OhlcBar, SeriesName, TradingCalendar, TweetRecord,
};
use moonvol::regress::{fit_suite, pearson_matrix, Column, FitResult, MODEL_NAMES};
use moonvol::sentiment::{score_batch, Lexicon, Thresholds};
use moonvol::signals::{
    aggregate_sentiment, assemble_table, bucket_by_day, daily_counts, moon1,
    normalize_unit_interval, DailySignalRow, DropEntry, LogBase, MergeDirection, ScoredObs,
    SentimentAggregator,
};
use moonvol::volatility::{daily_series, VolConfig};

use crate::args::InputArgs;
use crate::InternalError;

pub struct LoadedInputs {
    pub bars: Vec<OhlcBar>,
    pub tweets: Vec<TweetRecord>,
    pub lexicon: Lexicon,
    pub exogenous: Vec<ExogenousSeries>,
    pub calendar: TradingCalendar,
}

pub fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(
        File::open(path).with_context(|| format!("cannot open {}", path.display()))?,
    ))
}

pub fn read_calendar_file(path: &Path) -> Result<TradingCalendar> {
    let mut days = Vec::new();
    for (idx, line) in open(path)?.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let date = NaiveDate::parse_from_str(trimmed, "%Y-%m-%d")
            .with_context(|| format!("{}: line {}: bad date `{trimmed}`", path.display(), idx + 1))?;
        days.push(date);
    }
    Ok(TradingCalendar::from_dates(days)?)
}

pub fn load_inputs(args: &InputArgs) -> Result<LoadedInputs> {
    let bars = parse_ohlc_csv(open(&args.ohlc)?)
        .with_context(|| format!("parsing {}", args.ohlc.display()))?;
    let tweets = parse_tweets_jsonl(open(&args.tweets)?)
        .with_context(|| format!("parsing {}", args.tweets.display()))?;
    let lexicon = Lexicon::from_tsv(open(&args.lexicon)?)
        .with_context(|| format!("parsing {}", args.lexicon.display()))?;
    let calendar = match &args.calendar {
        Some(path) => {
            let calendar = read_calendar_file(path)?;
            calendar.validate_bars(&bars)?;
            calendar
        }
        None => TradingCalendar::from_bars(&bars),
    };
    let mut exogenous = Vec::new();
    for (name, path) in [
        (SeriesName::Yolo1, &args.yolo1),
        (SeriesName::Yolo2, &args.yolo2),
        (SeriesName::M, &args.m),
        (SeriesName::Vix, &args.vix),
    ] {
        let series = parse_exogenous_csv(open(path)?, name)
            .with_context(|| format!("parsing {}", path.display()))?;
        exogenous.push(series);
    }
    Ok(LoadedInputs { bars, tweets, lexicon, exogenous, calendar })
}

pub struct FeatureSettings {
    pub vol: VolConfig,
    pub merge: MergeDirection,
    pub aggregator: SentimentAggregator,
    pub thresholds: Thresholds,
    pub log_base: LogBase,
}

pub struct FeatureTable {
    pub rows: Vec<DailySignalRow>,
    pub drops: Vec<DropEntry>,
}

/// The heart of the pipeline: bars and tweets to the regression-ready table.
pub fn build_features(inputs: &LoadedInputs, settings: &FeatureSettings) -> Result<FeatureTable> {
    let (variances, vol_dropped) = daily_series(&inputs.bars, &settings.vol);
    let v: BTreeMap<NaiveDate, f64> = variances.iter().map(|(&d, dv)| (d, dv.log_vol)).collect();
    let mut drops: Vec<DropEntry> = vol_dropped
        .into_iter()
        .map(|date| DropEntry {
            date,
            column: "v".to_string(),
            reason: "degenerate bar (zero-range)".to_string(),
        })
        .collect();

    // Activity counts include every tweet; sentiment uses the filtered set.
    let counts = daily_counts(&inputs.tweets);
    let (m1, m1_drops) = moon1(&counts, &inputs.calendar, settings.merge, settings.log_base);
    drops.extend(m1_drops);

    let filtered = filter_for_sentiment(&inputs.tweets);
    let scores = score_batch(&filtered, &inputs.lexicon, &settings.thresholds);
    let buckets = bucket_by_day(&filtered, &inputs.calendar, settings.merge);
    let score_by_id: BTreeMap<&str, i8> = filtered
        .iter()
        .zip(&scores)
        .map(|(record, (_, score))| (record.id.as_str(), score.ternary))
        .collect();
    let obs_buckets: BTreeMap<NaiveDate, Vec<ScoredObs>> = buckets
        .iter()
        .map(|(&day, records)| {
            let obs = records
                .iter()
                .map(|r| ScoredObs {
                    ternary: score_by_id[r.id.as_str()],
                    weight: 1.0 + r.engagement() as f64,
                })
                .collect();
            (day, obs)
        })
        .collect();
    let m2 = aggregate_sentiment(&obs_buckets, settings.aggregator);

    let mut aligned = Vec::new();
    for series in &inputs.exogenous {
        aligned.push(align_to_calendar(series, &inputs.calendar)?);
    }

    let (rows, join_drops) = assemble_table(&inputs.calendar, &v, &m1, &m2, &aligned)?;
    drops.extend(join_drops);
    drops.sort_by(|a, b| (a.date, &a.column).cmp(&(b.date, &b.column)));
    Ok(FeatureTable { rows, drops })
}

pub fn write_drops_log(path: &Path, drops: &[DropEntry]) -> Result<()> {
    let mut f = File::create(path)?;
    for d in drops {
        writeln!(f, "{d}")?;
    }
    Ok(())
}

/// Fit the suite, verify the residual-sum invariant, and return results in
/// model order.
pub fn fit_all(rows: &[DailySignalRow]) -> Result<BTreeMap<&'static str, FitResult>> {
    let fits = fit_suite(rows)?;
    for (name, fit) in &fits {
        let sum: f64 = fit.residuals.iter().sum();
        if sum.abs() > 1e-9 * fit.n_obs as f64 {
            return Err(InternalError(format!(
                "{name}: residuals sum to {sum}, beyond tolerance"
            ))
            .into());
        }
    }
    Ok(fits)
}

pub fn write_r2_csv(path: &Path, symbol: &str, fits: &BTreeMap<&'static str, FitResult>) -> Result<()> {
    let mut f = File::create(path)?;
    writeln!(f, "symbol,{}", MODEL_NAMES.join(","))?;
    let cells: Vec<String> = MODEL_NAMES
        .iter()
        .map(|name| fits[name].r_squared.to_string())
        .collect();
    writeln!(f, "{symbol},{}", cells.join(","))?;
    Ok(())
}

/// Upper-triangular contemporaneous correlation grid over
/// V, MOON1, MOON2, YOLO1, YOLO2.
pub fn write_correlations_csv(path: &Path, rows: &[DailySignalRow]) -> Result<()> {
    let columns = Column::correlation_set();
    let matrix = pearson_matrix(rows, &columns)?;
    let mut f = File::create(path)?;
    let header: Vec<&str> = columns[1..].iter().map(|c| c.as_str()).collect();
    writeln!(f, ",{}", header.join(","))?;
    for i in 0..columns.len() - 1 {
        let mut cells = Vec::new();
        for j in 1..columns.len() {
            if j > i {
                cells.push(matrix[i][j].to_string());
            } else {
                cells.push(String::new());
            }
        }
        writeln!(f, "{},{}", columns[i].as_str(), cells.join(","))?;
    }
    Ok(())
}

pub fn write_coefficients_json(path: &Path, fits: &BTreeMap<&'static str, FitResult>) -> Result<()> {
    let mut models = serde_json::Map::new();
    for name in MODEL_NAMES {
        let fit = &fits[name];
        let mut entry = serde_json::Map::new();
        entry.insert("intercept".to_string(), serde_json::json!(fit.intercept));
        for (reg, beta) in &fit.coefficients {
            entry.insert(reg.as_str().to_string(), serde_json::json!(beta));
        }
        entry.insert("r_squared".to_string(), serde_json::json!(fit.r_squared));
        entry.insert("n_obs".to_string(), serde_json::json!(fit.n_obs));
        models.insert(name.to_string(), serde_json::Value::Object(entry));
    }
    let mut f = File::create(path)?;
    serde_json::to_writer_pretty(&mut f, &serde_json::Value::Object(models))?;
    writeln!(f)?;
    Ok(())
}

/// Figure-style plot data: normalized MOON features alongside raw V.
pub fn write_plotdata_csv(path: &Path, rows: &[DailySignalRow]) -> Result<()> {
    let moon1: Vec<f64> = rows.iter().map(|r| r.moon1).collect();
    let moon2: Vec<f64> = rows.iter().map(|r| r.moon2).collect();
    let m1n = normalize_unit_interval(&moon1).context("normalizing moon1")?;
    let m2n = normalize_unit_interval(&moon2).context("normalizing moon2")?;
    let mut f = File::create(path)?;
    writeln!(f, "date,moon1_norm,moon2_norm,v")?;
    for (row, (a, b)) in rows.iter().zip(m1n.iter().zip(&m2n)) {
        writeln!(f, "{},{},{},{}", row.date, a, b, row.v)?;
    }
    Ok(())
}

/// Tracks files created by a run so a failed stage can remove its partial
/// outputs.
pub struct OutputTracker {
    created: Vec<PathBuf>,
    committed: bool,
}

impl OutputTracker {
    pub fn new() -> Self {
        OutputTracker { created: Vec::new(), committed: false }
    }

    pub fn track(&mut self, path: PathBuf) -> PathBuf {
        self.created.push(path.clone());
        path
    }

    pub fn commit(mut self) {
        self.committed = true;
    }
}

impl Drop for OutputTracker {
    fn drop(&mut self) {
        if !self.committed {
            for path in &self.created {
                let _ = std::fs::remove_file(path);
            }
        }
    }
}
