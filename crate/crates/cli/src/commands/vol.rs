//! Emit per-day variance estimates: `date,parkinson,gk,rs,composite,log_vol`.
//! Dropped (degenerate) bars are reported on stderr.

use std::io::Write;

use anyhow::Result;
use moonvol::market_data::parse_ohlc_csv;
use moonvol::volatility::daily_series;

use crate::args::VolArgs;
use crate::stages::open;

pub fn run(args: VolArgs) -> Result<()> {
    let bars = parse_ohlc_csv(open(&args.ohlc)?)?;
    let config = args.vol.to_config();
    let (series, dropped) = daily_series(&bars, &config);

    let mut out: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(std::io::stdout().lock()),
    };
    writeln!(out, "date,parkinson,gk,rs,composite,log_vol")?;
    for (date, dv) in &series {
        writeln!(
            out,
            "{date},{},{},{},{},{}",
            dv.parkinson, dv.garman_klass, dv.rogers_satchell, dv.composite, dv.log_vol
        )?;
    }
    for date in dropped {
        eprintln!("dropped {date}: degenerate bar");
    }
    Ok(())
}
