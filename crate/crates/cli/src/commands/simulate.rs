//! Generate a synthetic dataset in exactly the formats the parsers read,
//! plus a copy of the demo lexicon so the output directory is immediately
//! runnable through the pipeline.

use std::fs::File;

use anyhow::{Context, Result};
use moonvol::market_data::{write_exogenous_csv, write_ohlc_csv, write_tweets_jsonl, SeriesName};
use moonvol::synth::{simulate_scenario, ScenarioConfig};

use crate::args::SimulateArgs;
use crate::stages::{open, OutputTracker};

const DEMO_LEXICON: &str = include_str!("../../../core/src/data/demo_lexicon.tsv");

pub fn run(args: SimulateArgs) -> Result<()> {
    let config: ScenarioConfig = serde_json::from_reader(open(&args.config)?)
        .with_context(|| format!("parsing {}", args.config.display()))?;
    let data = simulate_scenario(&config)?;

    std::fs::create_dir_all(&args.out)?;
    let mut tracker = OutputTracker::new();

    let ohlc_path = tracker.track(args.out.join("ohlc.csv"));
    write_ohlc_csv(File::create(&ohlc_path)?, &data.bars)?;

    let tweets_path = tracker.track(args.out.join("tweets.jsonl"));
    write_tweets_jsonl(File::create(&tweets_path)?, &data.tweets)?;

    for series in &data.exogenous {
        let file_name = match series.name {
            SeriesName::Yolo1 => "yolo1.csv",
            SeriesName::Yolo2 => "yolo2.csv",
            SeriesName::M => "m.csv",
            SeriesName::Vix => "vix.csv",
        };
        let path = tracker.track(args.out.join(file_name));
        write_exogenous_csv(File::create(&path)?, series)?;
    }

    let lexicon_path = tracker.track(args.out.join("lexicon.tsv"));
    std::fs::write(&lexicon_path, DEMO_LEXICON)?;

    tracker.commit();
    eprintln!(
        "wrote {} bars, {} tweets, 4 exogenous series to {}",
        data.bars.len(),
        data.tweets.len(),
        args.out.display()
    );
    Ok(())
}
