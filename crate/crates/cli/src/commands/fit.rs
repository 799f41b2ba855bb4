//! Fit the model suite and correlations from an existing features.csv.

use anyhow::{anyhow, Result};
use moonvol::signals::parse_features_csv;

use crate::args::FitArgs;
use crate::stages::{
    fit_all, open, write_coefficients_json, write_correlations_csv, write_r2_csv, OutputTracker,
};

pub fn run(args: FitArgs) -> Result<()> {
    let rows = parse_features_csv(open(&args.features)?).map_err(|e| anyhow!(e))?;
    let fits = fit_all(&rows)?;

    std::fs::create_dir_all(&args.out)?;
    let mut tracker = OutputTracker::new();
    let r2_path = tracker.track(args.out.join("r2.csv"));
    let corr_path = tracker.track(args.out.join("correlations.csv"));
    write_r2_csv(&r2_path, &args.symbol, &fits)?;
    write_correlations_csv(&corr_path, &rows)?;
    if args.coefficients {
        let coeff_path = tracker.track(args.out.join("coefficients.json"));
        write_coefficients_json(&coeff_path, &fits)?;
    }
    tracker.commit();
    Ok(())
}
