//! Parsing, validation, and calendar alignment of external inputs.
//!
//! All timestamps are stored in UTC; daily bucketing converts to the
//! exchange-local calendar date (America/New_York) because a "trading day"
//! only makes sense in the exchange's own time zone.

use std::collections::BTreeMap;
use std::io::{BufRead, Read, Write};

use chrono::{DateTime, NaiveDate, Utc};
use chrono_tz::America::New_York;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MarketDataError {
    #[error("line {line}: {reason}")]
    InvalidOhlcRow { line: u64, reason: String },
    #[error("duplicate date {0}")]
    DuplicateDate(NaiveDate),
    #[error("bad header: expected `{expected}`, got `{got}`")]
    BadHeader { expected: String, got: String },
    #[error("line {line}: {message}")]
    InvalidTweetLine { line: usize, message: String },
    #[error("{name}: no value on or before trading day {date}")]
    LeadingGap { name: String, date: NaiveDate },
    #[error("invalid bar: {0}")]
    InvalidBar(String),
    #[error("calendar dates must be strictly increasing near {0}")]
    UnorderedCalendar(NaiveDate),
    #[error("bar date {0} is not a trading day of the supplied calendar")]
    BarOffCalendar(NaiveDate),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// One trading day's open/high/low/close prices.
#[derive(Debug, Clone, PartialEq)]
pub struct OhlcBar {
    pub date: NaiveDate,
    pub open: f64,
    pub high: f64,
    pub low: f64,
    pub close: f64,
}

impl OhlcBar {
    /// Construct a bar, enforcing positivity and the range invariants
    /// low <= min(open, close) and high >= max(open, close).
    pub fn new(
        date: NaiveDate,
        open: f64,
        high: f64,
        low: f64,
        close: f64,
    ) -> Result<Self, MarketDataError> {
        let bar = OhlcBar {
            date,
            open,
            high,
            low,
            close,
        };
        bar.check().map_err(MarketDataError::InvalidBar)?;
        Ok(bar)
    }

    fn check(&self) -> Result<(), String> {
        for (name, v) in [
            ("open", self.open),
            ("high", self.high),
            ("low", self.low),
            ("close", self.close),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(format!("{name} must be a positive number, got {v}"));
            }
        }
        if self.high < self.low {
            return Err("high < low".to_string());
        }
        if self.low > self.open.min(self.close) {
            return Err("low > min(open, close)".to_string());
        }
        if self.high < self.open.max(self.close) {
            return Err("high < max(open, close)".to_string());
        }
        Ok(())
    }
}

/// One archived tweet with the attributes the pipeline consumes.
#[derive(Debug, Clone, PartialEq)]
pub struct TweetRecord {
    pub id: String,
    pub created_at: DateTime<Utc>,
    pub text: String,
    pub has_media: bool,
    pub is_retweet: bool,
    pub like_count: u64,
    pub retweet_count: u64,
    pub quote_count: u64,
    pub reply_count: u64,
}

impl TweetRecord {
    /// Sum of the public engagement metrics (likes, retweets, quotes, replies).
    pub fn engagement(&self) -> u64 {
        self.like_count + self.retweet_count + self.quote_count + self.reply_count
    }
}

/// JSONL wire format for tweets: one object per line with nested
/// `public_metrics`; missing counts default to zero.
#[derive(Debug, Serialize, Deserialize)]
struct TweetWire {
    id: String,
    created_at: DateTime<Utc>,
    text: String,
    #[serde(default)]
    has_media: bool,
    #[serde(default)]
    is_retweet: bool,
    #[serde(default)]
    public_metrics: MetricsWire,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct MetricsWire {
    #[serde(default)]
    like_count: u64,
    #[serde(default)]
    retweet_count: u64,
    #[serde(default)]
    quote_count: u64,
    #[serde(default)]
    reply_count: u64,
}

impl From<TweetWire> for TweetRecord {
    fn from(w: TweetWire) -> Self {
        TweetRecord {
            id: w.id,
            created_at: w.created_at,
            text: w.text,
            has_media: w.has_media,
            is_retweet: w.is_retweet,
            like_count: w.public_metrics.like_count,
            retweet_count: w.public_metrics.retweet_count,
            quote_count: w.public_metrics.quote_count,
            reply_count: w.public_metrics.reply_count,
        }
    }
}

impl From<&TweetRecord> for TweetWire {
    fn from(r: &TweetRecord) -> Self {
        TweetWire {
            id: r.id.clone(),
            created_at: r.created_at,
            text: r.text.clone(),
            has_media: r.has_media,
            is_retweet: r.is_retweet,
            public_metrics: MetricsWire {
                like_count: r.like_count,
                retweet_count: r.retweet_count,
                quote_count: r.quote_count,
                reply_count: r.reply_count,
            },
        }
    }
}

/// Identifier of an ingested exogenous daily series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeriesName {
    Vix,
    M,
    Yolo1,
    Yolo2,
}

impl SeriesName {
    pub fn as_str(&self) -> &'static str {
        match self {
            SeriesName::Vix => "VIX",
            SeriesName::M => "M",
            SeriesName::Yolo1 => "YOLO1",
            SeriesName::Yolo2 => "YOLO2",
        }
    }
}

impl std::fmt::Display for SeriesName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SeriesName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "VIX" => Ok(SeriesName::Vix),
            "M" => Ok(SeriesName::M),
            "YOLO1" => Ok(SeriesName::Yolo1),
            "YOLO2" => Ok(SeriesName::Yolo2),
            other => Err(format!("unknown series name `{other}`")),
        }
    }
}

/// A daily exogenous series (VIX, M, YOLO1, YOLO2) with strictly
/// increasing dates.
#[derive(Debug, Clone, PartialEq)]
pub struct ExogenousSeries {
    pub name: SeriesName,
    pub points: Vec<(NaiveDate, f64)>,
}

impl ExogenousSeries {
    pub fn new(
        name: SeriesName,
        mut points: Vec<(NaiveDate, f64)>,
    ) -> Result<Self, MarketDataError> {
        points.sort_by_key(|(d, _)| *d);
        for w in points.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(MarketDataError::DuplicateDate(w[0].0));
            }
        }
        Ok(ExogenousSeries { name, points })
    }
}

/// Ordered set of trading days. Derived from the OHLC file by default,
/// overridable with an explicit date list.
#[derive(Debug, Clone, PartialEq)]
pub struct TradingCalendar {
    days: Vec<NaiveDate>,
}

impl TradingCalendar {
    pub fn from_dates(mut days: Vec<NaiveDate>) -> Result<Self, MarketDataError> {
        days.sort();
        for w in days.windows(2) {
            if w[0] == w[1] {
                return Err(MarketDataError::UnorderedCalendar(w[0]));
            }
        }
        Ok(TradingCalendar { days })
    }

    pub fn from_bars(bars: &[OhlcBar]) -> Self {
        // bar parsing already guarantees sorted unique dates
        TradingCalendar {
            days: bars.iter().map(|b| b.date).collect(),
        }
    }

    /// Check that every bar date is a calendar member.
    pub fn validate_bars(&self, bars: &[OhlcBar]) -> Result<(), MarketDataError> {
        for bar in bars {
            if !self.contains(bar.date) {
                return Err(MarketDataError::BarOffCalendar(bar.date));
            }
        }
        Ok(())
    }

    pub fn days(&self) -> &[NaiveDate] {
        &self.days
    }

    pub fn len(&self) -> usize {
        self.days.len()
    }

    pub fn is_empty(&self) -> bool {
        self.days.is_empty()
    }

    pub fn contains(&self, date: NaiveDate) -> bool {
        self.days.binary_search(&date).is_ok()
    }

    /// Latest trading day <= `date`, or None when `date` precedes the
    /// calendar entirely.
    pub fn on_or_before(&self, date: NaiveDate) -> Option<NaiveDate> {
        match self.days.binary_search(&date) {
            Ok(i) => Some(self.days[i]),
            Err(0) => None,
            Err(i) => Some(self.days[i - 1]),
        }
    }

    /// Earliest trading day >= `date`, or None when `date` is past the end.
    pub fn on_or_after(&self, date: NaiveDate) -> Option<NaiveDate> {
        match self.days.binary_search(&date) {
            Ok(i) => Some(self.days[i]),
            Err(i) if i < self.days.len() => Some(self.days[i]),
            Err(_) => None,
        }
    }
}

/// Calendar date of a UTC instant in the exchange's time zone.
pub fn exchange_local_date(ts: DateTime<Utc>) -> NaiveDate {
    ts.with_timezone(&New_York).date_naive()
}

const OHLC_HEADER: [&str; 5] = ["date", "open", "high", "low", "close"];

/// Parse an OHLC CSV (`date,open,high,low,close`) into validated bars in
/// ascending date order. Rows violating bar invariants are reported with
/// their line number; duplicate dates are rejected.
pub fn parse_ohlc_csv<R: Read>(reader: R) -> Result<Vec<OhlcBar>, MarketDataError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != OHLC_HEADER {
        return Err(MarketDataError::BadHeader {
            expected: OHLC_HEADER.join(","),
            got: headers.iter().collect::<Vec<_>>().join(","),
        });
    }

    let mut bars = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let err = |reason: String| MarketDataError::InvalidOhlcRow { line, reason };
        if record.len() != 5 {
            return Err(err(format!("expected 5 fields, got {}", record.len())));
        }
        let date = NaiveDate::parse_from_str(&record[0], "%Y-%m-%d")
            .map_err(|e| err(format!("bad date `{}`: {e}", &record[0])))?;
        let mut nums = [0f64; 4];
        for (i, slot) in nums.iter_mut().enumerate() {
            *slot = record[i + 1]
                .parse::<f64>()
                .map_err(|_| err(format!("bad {} `{}`", OHLC_HEADER[i + 1], &record[i + 1])))?;
        }
        let bar = OhlcBar::new(date, nums[0], nums[1], nums[2], nums[3]).map_err(|e| match e {
            MarketDataError::InvalidBar(reason) => err(reason),
            other => other,
        })?;
        bars.push(bar);
    }

    bars.sort_by_key(|b| b.date);
    for w in bars.windows(2) {
        if w[0].date == w[1].date {
            return Err(MarketDataError::DuplicateDate(w[0].date));
        }
    }
    Ok(bars)
}

/// Serialize bars back to the same CSV schema `parse_ohlc_csv` reads.
pub fn write_ohlc_csv<W: Write>(mut writer: W, bars: &[OhlcBar]) -> std::io::Result<()> {
    writeln!(writer, "{}", OHLC_HEADER.join(","))?;
    for b in bars {
        writeln!(writer, "{},{},{},{},{}", b.date, b.open, b.high, b.low, b.close)?;
    }
    Ok(())
}

/// Parse a tweets JSONL stream; records come back sorted by `created_at`.
pub fn parse_tweets_jsonl<R: BufRead>(reader: R) -> Result<Vec<TweetRecord>, MarketDataError> {
    let mut records = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let wire: TweetWire = serde_json::from_str(&line).map_err(|e| {
            MarketDataError::InvalidTweetLine {
                line: idx + 1,
                message: e.to_string(),
            }
        })?;
        records.push(TweetRecord::from(wire));
    }
    records.sort_by_key(|r| r.created_at);
    Ok(records)
}

/// Serialize tweets to the JSONL schema `parse_tweets_jsonl` reads.
pub fn write_tweets_jsonl<W: Write>(
    mut writer: W,
    records: &[TweetRecord],
) -> std::io::Result<()> {
    for r in records {
        let wire = TweetWire::from(r);
        serde_json::to_writer(&mut writer, &wire)?;
        writeln!(writer)?;
    }
    Ok(())
}

/// Keep only the records eligible for sentiment scoring: no media, not a
/// retweet. Order is preserved; the operation is idempotent.
pub fn filter_for_sentiment(records: &[TweetRecord]) -> Vec<TweetRecord> {
    records
        .iter()
        .filter(|r| !r.has_media && !r.is_retweet)
        .cloned()
        .collect()
}

/// Parse an exogenous series CSV (`date,value`).
pub fn parse_exogenous_csv<R: Read>(
    reader: R,
    name: SeriesName,
) -> Result<ExogenousSeries, MarketDataError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["date", "value"] {
        return Err(MarketDataError::BadHeader {
            expected: "date,value".to_string(),
            got: headers.iter().collect::<Vec<_>>().join(","),
        });
    }
    let mut points = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let err = |reason: String| MarketDataError::InvalidOhlcRow { line, reason };
        let date = NaiveDate::parse_from_str(&record[0], "%Y-%m-%d")
            .map_err(|e| err(format!("bad date `{}`: {e}", &record[0])))?;
        let value = record[1]
            .parse::<f64>()
            .map_err(|_| err(format!("bad value `{}`", &record[1])))?;
        points.push((date, value));
    }
    ExogenousSeries::new(name, points)
}

/// Write an exogenous series in the `date,value` schema.
pub fn write_exogenous_csv<W: Write>(
    mut writer: W,
    series: &ExogenousSeries,
) -> std::io::Result<()> {
    writeln!(writer, "date,value")?;
    for (d, v) in &series.points {
        writeln!(writer, "{d},{v}")?;
    }
    Ok(())
}

/// Align a series to a trading calendar: values on non-trading dates are
/// dropped, and a trading day without its own value is forward-filled from
/// the most recent prior trading-day value. A trading day before the first
/// usable value is an error rather than a silent truncation.
pub fn align_to_calendar(
    series: &ExogenousSeries,
    calendar: &TradingCalendar,
) -> Result<ExogenousSeries, MarketDataError> {
    let on_calendar: BTreeMap<NaiveDate, f64> = series
        .points
        .iter()
        .filter(|(d, _)| calendar.contains(*d))
        .map(|&(d, v)| (d, v))
        .collect();

    let mut points = Vec::with_capacity(calendar.len());
    let mut last: Option<f64> = None;
    for &day in calendar.days() {
        match on_calendar.get(&day) {
            Some(&v) => {
                last = Some(v);
                points.push((day, v));
            }
            None => match last {
                Some(v) => points.push((day, v)),
                None => {
                    return Err(MarketDataError::LeadingGap {
                        name: series.name.to_string(),
                        date: day,
                    })
                }
            },
        }
    }
    Ok(ExogenousSeries {
        name: series.name,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;

    fn d(s: &str) -> NaiveDate {
        NaiveDate::parse_from_str(s, "%Y-%m-%d").unwrap()
    }

    fn tweet(id: &str, ts: &str, media: bool, retweet: bool) -> TweetRecord {
        TweetRecord {
            id: id.to_string(),
            created_at: ts.parse().unwrap(),
            text: "text".to_string(),
            has_media: media,
            is_retweet: retweet,
            like_count: 0,
            retweet_count: 0,
            quote_count: 0,
            reply_count: 0,
        }
    }

    #[test]
    fn parse_ohlc_basic_row() {
        let csv = "date,open,high,low,close\n2021-01-27,354.83,380.00,249.00,347.51\n";
        let bars = parse_ohlc_csv(csv.as_bytes()).unwrap();
        assert_eq!(bars.len(), 1);
        assert_eq!(bars[0].date, d("2021-01-27"));
        assert_eq!(bars[0].open, 354.83);
        assert_eq!(bars[0].high, 380.00);
        assert_eq!(bars[0].low, 249.00);
        assert_eq!(bars[0].close, 347.51);
    }

    #[test]
    fn parse_ohlc_high_below_low_reports_line() {
        let csv = "date,open,high,low,close\n2021-01-27,95,90,100,95\n";
        let err = parse_ohlc_csv(csv.as_bytes()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("high < low"), "{msg}");
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn parse_ohlc_duplicate_date() {
        let csv = "date,open,high,low,close\n\
                   2021-01-27,10,11,9,10\n\
                   2021-01-27,10,11,9,10\n";
        let err = parse_ohlc_csv(csv.as_bytes()).unwrap_err();
        assert!(matches!(err, MarketDataError::DuplicateDate(date) if date == d("2021-01-27")));
    }

    #[test]
    fn parse_ohlc_sorts_by_date() {
        let csv = "date,open,high,low,close\n\
                   2021-01-28,10,11,9,10\n\
                   2021-01-27,10,11,9,10\n";
        let bars = parse_ohlc_csv(csv.as_bytes()).unwrap();
        assert_eq!(bars[0].date, d("2021-01-27"));
    }

    #[test]
    fn parse_ohlc_rejects_nonpositive_price() {
        let csv = "date,open,high,low,close\n2021-01-27,0,11,9,10\n";
        let err = parse_ohlc_csv(csv.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("open"));
    }

    #[test]
    fn ohlc_round_trip() {
        let csv = "date,open,high,low,close\n\
                   2021-01-27,354.83,380.0,249.0,347.51\n\
                   2021-01-28,265.0,483.0,112.25,193.6\n";
        let bars = parse_ohlc_csv(csv.as_bytes()).unwrap();
        let mut out = Vec::new();
        write_ohlc_csv(&mut out, &bars).unwrap();
        let reparsed = parse_ohlc_csv(out.as_slice()).unwrap();
        assert_eq!(bars, reparsed);
    }

    #[test]
    fn parse_tweets_single_line() {
        let line = r#"{"id":"1","created_at":"2021-01-27T14:00:00Z","text":"GME to the moon","has_media":false,"is_retweet":false}"#;
        let records = parse_tweets_jsonl(line.as_bytes()).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].id, "1");
        assert_eq!(records[0].text, "GME to the moon");
        assert_eq!(records[0].like_count, 0);
    }

    #[test]
    fn parse_tweets_missing_text_errors() {
        let line = r#"{"id":"1","created_at":"2021-01-27T14:00:00Z"}"#;
        let err = parse_tweets_jsonl(line.as_bytes()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 1"), "{msg}");
        assert!(msg.contains("text"), "{msg}");
    }

    #[test]
    fn parse_tweets_empty_stream() {
        assert!(parse_tweets_jsonl(&b""[..]).unwrap().is_empty());
    }

    #[test]
    fn parse_tweets_sorts_by_time() {
        let lines = r#"{"id":"b","created_at":"2021-01-27T15:00:00Z","text":"later"}
{"id":"a","created_at":"2021-01-27T14:00:00Z","text":"earlier"}"#;
        let records = parse_tweets_jsonl(lines.as_bytes()).unwrap();
        assert_eq!(records[0].id, "a");
    }

    #[test]
    fn filter_drops_media_and_retweets() {
        let records = vec![
            tweet("media", "2021-01-27T14:00:00Z", true, false),
            tweet("plain", "2021-01-27T14:01:00Z", false, false),
            tweet("rt", "2021-01-27T14:02:00Z", false, true),
        ];
        let kept = filter_for_sentiment(&records);
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].id, "plain");
    }

    #[test]
    fn filter_identity_on_plain_tweets() {
        let records = vec![
            tweet("a", "2021-01-27T14:00:00Z", false, false),
            tweet("b", "2021-01-27T14:01:00Z", false, false),
        ];
        assert_eq!(filter_for_sentiment(&records), records);
    }

    #[test]
    fn filter_all_retweets_empty() {
        let records = vec![tweet("a", "2021-01-27T14:00:00Z", false, true)];
        assert!(filter_for_sentiment(&records).is_empty());
    }

    #[test]
    fn filter_is_idempotent() {
        let records = vec![
            tweet("a", "2021-01-27T14:00:00Z", true, false),
            tweet("b", "2021-01-27T14:01:00Z", false, false),
            tweet("c", "2021-01-27T14:02:00Z", false, true),
        ];
        let once = filter_for_sentiment(&records);
        let twice = filter_for_sentiment(&once);
        assert_eq!(once, twice);
    }

    #[test]
    fn align_drops_nontrading_values() {
        // Mon 2021-01-25, Sat 2021-01-30, Tue 2021-01-26
        let series = ExogenousSeries::new(
            SeriesName::Vix,
            vec![(d("2021-01-25"), 1.0), (d("2021-01-30"), 9.0), (d("2021-01-26"), 2.0)],
        )
        .unwrap();
        let cal = TradingCalendar::from_dates(vec![d("2021-01-25"), d("2021-01-26")]).unwrap();
        let aligned = align_to_calendar(&series, &cal).unwrap();
        assert_eq!(aligned.points, vec![(d("2021-01-25"), 1.0), (d("2021-01-26"), 2.0)]);
    }

    #[test]
    fn align_forward_fills() {
        let series = ExogenousSeries::new(SeriesName::M, vec![(d("2021-01-25"), 1.0)]).unwrap();
        let cal = TradingCalendar::from_dates(vec![d("2021-01-25"), d("2021-01-26")]).unwrap();
        let aligned = align_to_calendar(&series, &cal).unwrap();
        assert_eq!(aligned.points, vec![(d("2021-01-25"), 1.0), (d("2021-01-26"), 1.0)]);
    }

    #[test]
    fn align_leading_gap_errors() {
        let series = ExogenousSeries::new(SeriesName::Yolo1, vec![(d("2021-01-26"), 2.0)]).unwrap();
        let cal = TradingCalendar::from_dates(vec![d("2021-01-25"), d("2021-01-26")]).unwrap();
        let err = align_to_calendar(&series, &cal).unwrap_err();
        assert!(matches!(
            err,
            MarketDataError::LeadingGap { date, .. } if date == d("2021-01-25")
        ));
    }

    #[test]
    fn align_output_covers_every_calendar_day() {
        let series = ExogenousSeries::new(
            SeriesName::Yolo2,
            vec![(d("2021-01-22"), 5.0), (d("2021-01-26"), 7.0)],
        )
        .unwrap();
        let cal = TradingCalendar::from_dates(vec![
            d("2021-01-22"),
            d("2021-01-25"),
            d("2021-01-26"),
            d("2021-01-27"),
        ])
        .unwrap();
        let aligned = align_to_calendar(&series, &cal).unwrap();
        assert_eq!(aligned.points.len(), cal.len());
    }

    #[test]
    fn exchange_local_date_handles_utc_offsets() {
        // 2021-01-28 02:00 UTC is 21:00 on the 27th in New York (EST).
        let ts = Utc.with_ymd_and_hms(2021, 1, 28, 2, 0, 0).unwrap();
        assert_eq!(exchange_local_date(ts), d("2021-01-27"));
        // 2021-06-28 02:00 UTC is 22:00 on the 27th in New York (EDT).
        let ts = Utc.with_ymd_and_hms(2021, 6, 28, 2, 0, 0).unwrap();
        assert_eq!(exchange_local_date(ts), d("2021-06-27"));
        // Midday UTC is the same calendar date.
        let ts = Utc.with_ymd_and_hms(2021, 1, 28, 16, 0, 0).unwrap();
        assert_eq!(exchange_local_date(ts), d("2021-01-28"));
    }

    #[test]
    fn calendar_lookups() {
        let cal = TradingCalendar::from_dates(vec![d("2021-01-22"), d("2021-01-25")]).unwrap();
        assert_eq!(cal.on_or_before(d("2021-01-24")), Some(d("2021-01-22")));
        assert_eq!(cal.on_or_before(d("2021-01-21")), None);
        assert_eq!(cal.on_or_after(d("2021-01-23")), Some(d("2021-01-25")));
        assert_eq!(cal.on_or_after(d("2021-01-26")), None);
        assert!(cal.contains(d("2021-01-22")));
    }
}
