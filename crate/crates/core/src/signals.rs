//! Per-trading-day feature construction: tweet bucketing with non-trading
//! day merging, the MOON activity/polarity features, and the join into the
//! regression-ready signal table.
//!
//! Non-trading dates merge into the *previous* trading day by default
//! ([`MergeDirection::Previous`]); `MergeDirection::Forward` attaches them
//! to the next trading day instead.

use std::collections::BTreeMap;

use chrono::{Days, NaiveDate};
use thiserror::Error;

use crate::market_data::{exchange_local_date, ExogenousSeries, SeriesName, TradingCalendar, TweetRecord};

#[derive(Debug, Error)]
pub enum SignalsError {
    #[error("missing exogenous series {0}")]
    MissingSeries(SeriesName),
    #[error("series {0} supplied more than once")]
    DuplicateSeries(SeriesName),
    #[error("empty table: no date has every required column")]
    EmptyTable,
    #[error("degenerate range: series has fewer than 2 distinct values")]
    DegenerateRange,
}

/// One regression-ready row. `v` is the log-volatility; `moon1`/`moon2` the
/// activity and polarity features; the rest are aligned exogenous values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DailySignalRow {
    pub date: NaiveDate,
    pub v: f64,
    pub moon1: f64,
    pub moon2: f64,
    pub yolo1: f64,
    pub yolo2: f64,
    pub m: f64,
    pub vix: f64,
}

/// A dropped date with the column(s) that caused the drop.
#[derive(Debug, Clone, PartialEq)]
pub struct DropEntry {
    pub date: NaiveDate,
    pub column: String,
    pub reason: String,
}

impl std::fmt::Display for DropEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}: {}", self.date, self.column, self.reason)
    }
}

/// Which trading day absorbs non-trading dates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MergeDirection {
    /// Merge into the most recent preceding trading day.
    #[default]
    Previous,
    /// Merge into the next trading day.
    Forward,
}

/// Logarithm used for the activity feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Natural,
    Base10,
}

impl LogBase {
    fn apply(&self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Base10 => x.log10(),
        }
    }
}

/// Trading day a local calendar date belongs to under the merge rule.
/// Dates outside the calendar entirely attach to the nearest end.
pub fn merge_target(
    date: NaiveDate,
    calendar: &TradingCalendar,
    direction: MergeDirection,
) -> Option<NaiveDate> {
    if calendar.is_empty() {
        return None;
    }
    match direction {
        MergeDirection::Previous => calendar
            .on_or_before(date)
            .or_else(|| calendar.days().first().copied()),
        MergeDirection::Forward => calendar
            .on_or_after(date)
            .or_else(|| calendar.days().last().copied()),
    }
}

/// Partition tweets into per-trading-day buckets: each tweet is keyed by its
/// exchange-local calendar date, and non-trading dates merge per the rule.
/// Every tweet lands in exactly one bucket.
pub fn bucket_by_day<'a>(
    records: &'a [TweetRecord],
    calendar: &TradingCalendar,
    direction: MergeDirection,
) -> BTreeMap<NaiveDate, Vec<&'a TweetRecord>> {
    let mut buckets: BTreeMap<NaiveDate, Vec<&TweetRecord>> = BTreeMap::new();
    for record in records {
        let local = exchange_local_date(record.created_at);
        if let Some(day) = merge_target(local, calendar, direction) {
            buckets.entry(day).or_default().push(record);
        }
    }
    buckets
}

/// Tweet counts per exchange-local calendar date (all tweets, including
/// media and retweets).
pub fn daily_counts(records: &[TweetRecord]) -> BTreeMap<NaiveDate, u64> {
    let mut counts = BTreeMap::new();
    for record in records {
        *counts.entry(exchange_local_date(record.created_at)).or_insert(0) += 1;
    }
    counts
}

/// Activity feature: for each trading day, the mean tweet count over the day
/// and its merged non-trading dates, logged. Days whose merged count is zero
/// are dropped and reported.
pub fn moon1(
    counts: &BTreeMap<NaiveDate, u64>,
    calendar: &TradingCalendar,
    direction: MergeDirection,
    base: LogBase,
) -> (BTreeMap<NaiveDate, f64>, Vec<DropEntry>) {
    let mut out = BTreeMap::new();
    let mut drops = Vec::new();
    let days = calendar.days();
    if days.is_empty() {
        return (out, drops);
    }
    let first_count = counts.keys().next().copied();
    let last_count = counts.keys().next_back().copied();

    for (i, &day) in days.iter().enumerate() {
        // Window of calendar dates merged into this trading day. Interior
        // windows span [day, next) or (prev, day] depending on direction;
        // the outermost windows extend to cover any observed dates beyond
        // the calendar.
        let (start, end) = match direction {
            MergeDirection::Previous => {
                let start = if i == 0 {
                    first_count.map_or(day, |f| f.min(day))
                } else {
                    day
                };
                let end = if i + 1 < days.len() {
                    days[i + 1] - Days::new(1)
                } else {
                    last_count.map_or(day, |l| l.max(day))
                };
                (start, end)
            }
            MergeDirection::Forward => {
                let start = if i == 0 {
                    first_count.map_or(day, |f| f.min(day))
                } else {
                    days[i - 1] + Days::new(1)
                };
                let end = if i + 1 < days.len() {
                    day
                } else {
                    last_count.map_or(day, |l| l.max(day))
                };
                (start, end)
            }
        };
        let n_days = (end - start).num_days() + 1;
        let total: u64 = counts.range(start..=end).map(|(_, &c)| c).sum();
        let merged = total as f64 / n_days as f64;
        if merged > 0.0 {
            out.insert(day, base.apply(merged));
        } else {
            drops.push(DropEntry {
                date: day,
                column: "moon1".to_string(),
                reason: "zero tweet activity in merged window".to_string(),
            });
        }
    }
    (out, drops)
}

/// Population standard deviation (divisor n); defined for a single element.
pub fn population_std(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    var.sqrt()
}

/// Polarity feature: population standard deviation of the ternary scores in
/// each (merged) bucket. Empty buckets yield no entry.
pub fn moon2(buckets: &BTreeMap<NaiveDate, Vec<i8>>) -> BTreeMap<NaiveDate, f64> {
    buckets
        .iter()
        .filter(|(_, scores)| !scores.is_empty())
        .map(|(&day, scores)| {
            let vals: Vec<f64> = scores.iter().map(|&t| t as f64).collect();
            (day, population_std(&vals))
        })
        .collect()
}

/// A scored observation for the alternative aggregators: the ternary label
/// plus an engagement weight.
#[derive(Debug, Clone, Copy)]
pub struct ScoredObs {
    pub ternary: i8,
    pub weight: f64,
}

/// Daily sentiment aggregation rule. `Std` is the default polarity feature;
/// the others are the documented alternatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SentimentAggregator {
    /// Population standard deviation of ternary labels.
    #[default]
    Std,
    /// Mean ternary label.
    Mean,
    /// Engagement-weighted mean ternary label; weight = 1 + likes +
    /// retweets + quotes + replies so zero-engagement tweets still count.
    Weighted,
    /// Net balance (positives - negatives) / n, in [-1, 1].
    Ratio,
}

/// Aggregate per-bucket sentiment under the chosen rule.
pub fn aggregate_sentiment(
    buckets: &BTreeMap<NaiveDate, Vec<ScoredObs>>,
    aggregator: SentimentAggregator,
) -> BTreeMap<NaiveDate, f64> {
    buckets
        .iter()
        .filter(|(_, obs)| !obs.is_empty())
        .map(|(&day, obs)| {
            let value = match aggregator {
                SentimentAggregator::Std => {
                    let vals: Vec<f64> = obs.iter().map(|o| o.ternary as f64).collect();
                    population_std(&vals)
                }
                SentimentAggregator::Mean => {
                    obs.iter().map(|o| o.ternary as f64).sum::<f64>() / obs.len() as f64
                }
                SentimentAggregator::Weighted => {
                    let total: f64 = obs.iter().map(|o| o.weight).sum();
                    obs.iter().map(|o| o.ternary as f64 * o.weight).sum::<f64>() / total
                }
                SentimentAggregator::Ratio => {
                    let pos = obs.iter().filter(|o| o.ternary > 0).count() as f64;
                    let neg = obs.iter().filter(|o| o.ternary < 0).count() as f64;
                    (pos - neg) / obs.len() as f64
                }
            };
            (day, value)
        })
        .collect()
}

/// Join the per-day series into signal rows. A row is emitted only for
/// trading days (within the common overlap window) where every column is
/// present; omitted days are reported, one entry per day, naming the
/// missing columns.
pub fn assemble_table(
    calendar: &TradingCalendar,
    v: &BTreeMap<NaiveDate, f64>,
    moon1: &BTreeMap<NaiveDate, f64>,
    moon2: &BTreeMap<NaiveDate, f64>,
    exogenous: &[ExogenousSeries],
) -> Result<(Vec<DailySignalRow>, Vec<DropEntry>), SignalsError> {
    let mut exo_maps: BTreeMap<SeriesName, BTreeMap<NaiveDate, f64>> = BTreeMap::new();
    for series in exogenous {
        if exo_maps
            .insert(series.name, series.points.iter().copied().collect())
            .is_some()
        {
            return Err(SignalsError::DuplicateSeries(series.name));
        }
    }
    let mut exo = |name: SeriesName| -> Result<BTreeMap<NaiveDate, f64>, SignalsError> {
        exo_maps.remove(&name).ok_or(SignalsError::MissingSeries(name))
    };
    let yolo1 = exo(SeriesName::Yolo1)?;
    let yolo2 = exo(SeriesName::Yolo2)?;
    let m = exo(SeriesName::M)?;
    let vix = exo(SeriesName::Vix)?;

    let columns: [(&str, &BTreeMap<NaiveDate, f64>); 7] = [
        ("v", v),
        ("moon1", moon1),
        ("moon2", moon2),
        ("yolo1", &yolo1),
        ("yolo2", &yolo2),
        ("m", &m),
        ("vix", &vix),
    ];

    // Overlap window: from the latest first-date to the earliest last-date
    // across all columns.
    let mut start = NaiveDate::MIN;
    let mut end = NaiveDate::MAX;
    for (_, map) in &columns {
        match (map.keys().next(), map.keys().next_back()) {
            (Some(&first), Some(&last)) => {
                start = start.max(first);
                end = end.min(last);
            }
            _ => return Err(SignalsError::EmptyTable),
        }
    }

    let mut rows = Vec::new();
    let mut drops = Vec::new();
    for &day in calendar.days() {
        if day < start || day > end {
            continue;
        }
        let missing: Vec<&str> = columns
            .iter()
            .filter(|(_, map)| !map.contains_key(&day))
            .map(|(name, _)| *name)
            .collect();
        if missing.is_empty() {
            rows.push(DailySignalRow {
                date: day,
                v: v[&day],
                moon1: moon1[&day],
                moon2: moon2[&day],
                yolo1: yolo1[&day],
                yolo2: yolo2[&day],
                m: m[&day],
                vix: vix[&day],
            });
        } else {
            drops.push(DropEntry {
                date: day,
                column: missing.join("+"),
                reason: "missing value".to_string(),
            });
        }
    }
    if rows.is_empty() {
        return Err(SignalsError::EmptyTable);
    }
    Ok((rows, drops))
}

/// Write the signal table in its CSV schema:
/// `date,v,moon1,moon2,yolo1,yolo2,m,vix`.
pub fn write_features_csv<W: std::io::Write>(
    mut writer: W,
    rows: &[DailySignalRow],
) -> std::io::Result<()> {
    writeln!(writer, "date,v,moon1,moon2,yolo1,yolo2,m,vix")?;
    for r in rows {
        writeln!(
            writer,
            "{},{},{},{},{},{},{},{}",
            r.date, r.v, r.moon1, r.moon2, r.yolo1, r.yolo2, r.m, r.vix
        )?;
    }
    Ok(())
}

/// Parse a signal table written by [`write_features_csv`].
pub fn parse_features_csv<R: std::io::BufRead>(
    reader: R,
) -> Result<Vec<DailySignalRow>, String> {
    let mut rows = Vec::new();
    let mut lines = reader.lines().enumerate();
    match lines.next() {
        Some((_, Ok(header))) if header.trim() == "date,v,moon1,moon2,yolo1,yolo2,m,vix" => {}
        Some((_, Ok(header))) => return Err(format!("bad features header `{header}`")),
        Some((_, Err(e))) => return Err(e.to_string()),
        None => return Err("empty features file".to_string()),
    }
    for (idx, line) in lines {
        let line = line.map_err(|e| e.to_string())?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(format!("line {}: expected 8 fields", idx + 1));
        }
        let date = NaiveDate::parse_from_str(fields[0], "%Y-%m-%d")
            .map_err(|e| format!("line {}: bad date: {e}", idx + 1))?;
        let mut nums = [0.0f64; 7];
        for (k, slot) in nums.iter_mut().enumerate() {
            *slot = fields[k + 1]
                .parse()
                .map_err(|_| format!("line {}: bad number `{}`", idx + 1, fields[k + 1]))?;
        }
        rows.push(DailySignalRow {
            date,
            v: nums[0],
            moon1: nums[1],
            moon2: nums[2],
            yolo1: nums[3],
            yolo2: nums[4],
            m: nums[5],
            vix: nums[6],
        });
    }
    Ok(rows)
}

/// Map a series linearly onto [0, 1]: min to 0, max to 1.
pub fn normalize_unit_interval(series: &[f64]) -> Result<Vec<f64>, SignalsError> {
    let min = series.iter().copied().fold(f64::INFINITY, f64::min);
    let max = series.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(max > min) {
        return Err(SignalsError::DegenerateRange);
    }
    let span = max - min;
    Ok(series.iter().map(|&x| (x - min) / span).collect())
}
