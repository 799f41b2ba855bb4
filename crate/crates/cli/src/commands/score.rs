//! Score a tweet archive: media/retweet records are filtered out, the rest
//! get `id,compound,ternary` rows.

use std::io::Write;

use anyhow::Result;
use moonvol::market_data::{filter_for_sentiment, parse_tweets_jsonl};
use moonvol::sentiment::{score_batch, Lexicon, Thresholds};

use crate::args::ScoreArgs;
use crate::stages::open;

pub fn run(args: ScoreArgs) -> Result<()> {
    let tweets = parse_tweets_jsonl(open(&args.tweets)?)?;
    let lexicon = Lexicon::from_tsv(open(&args.lexicon)?)?;
    let thresholds = Thresholds {
        negative: args.thresholds[0],
        positive: args.thresholds[1],
    };
    let kept = filter_for_sentiment(&tweets);
    let scores = score_batch(&kept, &lexicon, &thresholds);

    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(std::io::stdout().lock()),
    };
    writeln!(out, "id,compound,ternary")?;
    for (id, score) in &scores {
        writeln!(out, "{id},{},{}", score.compound, score.ternary)?;
    }
    Ok(())
}
