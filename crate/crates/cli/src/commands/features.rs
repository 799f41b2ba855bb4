//! Build and write the signal table plus its drop log.

use anyhow::Result;
use moonvol::signals::write_features_csv;

use crate::args::FeaturesArgs;
use crate::stages::{build_features, load_inputs, write_drops_log, FeatureSettings, OutputTracker};

pub fn run(args: FeaturesArgs) -> Result<()> {
    let inputs = load_inputs(&args.inputs)?;
    let settings = FeatureSettings {
        vol: args.vol.to_config(),
        merge: args.features.merge_direction(),
        aggregator: args.features.aggregator.into(),
        thresholds: args.features.thresholds(),
        log_base: args.features.log_base.into(),
    };
    let table = build_features(&inputs, &settings)?;

    std::fs::create_dir_all(&args.out)?;
    let mut tracker = OutputTracker::new();
    let features_path = tracker.track(args.out.join("features.csv"));
    let drops_path = tracker.track(args.out.join("drops.log"));
    write_features_csv(std::fs::File::create(&features_path)?, &table.rows)?;
    write_drops_log(&drops_path, &table.drops)?;
    tracker.commit();
    Ok(())
}
