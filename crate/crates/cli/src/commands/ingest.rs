//! Validate inputs and print a JSON summary (counts, date ranges).

use anyhow::{bail, Result};
use moonvol::market_data::{parse_ohlc_csv, parse_tweets_jsonl};

use crate::args::IngestArgs;
use crate::stages::{open, read_calendar_file};

pub fn run(args: IngestArgs) -> Result<()> {
    if args.ohlc.is_none() && args.tweets.is_none() && args.calendar.is_none() {
        bail!("nothing to ingest: pass --ohlc, --tweets, and/or --calendar");
    }
    let mut summary = serde_json::Map::new();

    let bars = match &args.ohlc {
        Some(path) => {
            let bars = parse_ohlc_csv(open(path)?)?;
            let mut entry = serde_json::Map::new();
            entry.insert("rows".into(), serde_json::json!(bars.len()));
            if let (Some(first), Some(last)) = (bars.first(), bars.last()) {
                entry.insert("first_date".into(), serde_json::json!(first.date.to_string()));
                entry.insert("last_date".into(), serde_json::json!(last.date.to_string()));
            }
            summary.insert("ohlc".into(), serde_json::Value::Object(entry));
            Some(bars)
        }
        None => None,
    };

    if let Some(path) = &args.tweets {
        let tweets = parse_tweets_jsonl(open(path)?)?;
        let text_only = tweets.iter().filter(|t| !t.has_media && !t.is_retweet).count();
        let mut entry = serde_json::Map::new();
        entry.insert("records".into(), serde_json::json!(tweets.len()));
        entry.insert("text_only".into(), serde_json::json!(text_only));
        if let (Some(first), Some(last)) = (tweets.first(), tweets.last()) {
            entry.insert("first_at".into(), serde_json::json!(first.created_at.to_rfc3339()));
            entry.insert("last_at".into(), serde_json::json!(last.created_at.to_rfc3339()));
        }
        summary.insert("tweets".into(), serde_json::Value::Object(entry));
    }

    if let Some(path) = &args.calendar {
        let calendar = read_calendar_file(path)?;
        if let Some(bars) = &bars {
            calendar.validate_bars(bars)?;
        }
        summary.insert(
            "calendar".into(),
            serde_json::json!({ "trading_days": calendar.len() }),
        );
    }

    println!("{}", serde_json::to_string_pretty(&serde_json::Value::Object(summary))?);
    Ok(())
}
