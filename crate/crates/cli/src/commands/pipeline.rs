//! End-to-end run: features, fits, correlations, plot data, drop log, and
//! the reproducibility manifest. On failure every file created by this run
//! is removed.

use anyhow::{Context, Result};
use moonvol::signals::write_features_csv;

use crate::args::PipelineArgs;
use crate::manifest::RunManifest;
use crate::stages::{
    build_features, fit_all, load_inputs, write_coefficients_json, write_correlations_csv,
    write_drops_log, write_plotdata_csv, write_r2_csv, FeatureSettings, OutputTracker,
};

pub fn run(args: PipelineArgs) -> Result<()> {
    let inputs = load_inputs(&args.inputs).context("ingest stage")?;
    let settings = FeatureSettings {
        vol: args.vol.to_config(),
        merge: args.features.merge_direction(),
        aggregator: args.features.aggregator.into(),
        thresholds: args.features.thresholds(),
        log_base: args.features.log_base.into(),
    };
    let table = build_features(&inputs, &settings).context("feature stage")?;
    let fits = fit_all(&table.rows).context("fit stage")?;

    std::fs::create_dir_all(&args.out)?;
    let mut tracker = OutputTracker::new();

    let features_path = tracker.track(args.out.join("features.csv"));
    write_features_csv(std::fs::File::create(&features_path)?, &table.rows)?;

    let drops_path = tracker.track(args.out.join("drops.log"));
    write_drops_log(&drops_path, &table.drops)?;

    let r2_path = tracker.track(args.out.join("r2.csv"));
    write_r2_csv(&r2_path, &args.symbol, &fits)?;

    let corr_path = tracker.track(args.out.join("correlations.csv"));
    write_correlations_csv(&corr_path, &table.rows).context("correlation stage")?;

    let plot_path = tracker.track(args.out.join(format!("plotdata_{}.csv", args.symbol)));
    write_plotdata_csv(&plot_path, &table.rows).context("plot stage")?;

    if args.coefficients {
        let coeff_path = tracker.track(args.out.join("coefficients.json"));
        write_coefficients_json(&coeff_path, &fits)?;
    }

    let mut manifest = RunManifest::new("pipeline");
    manifest.set("symbol", &args.symbol);
    manifest.set("rs_form", match args.vol.rs_form {
        crate::args::RsFormArg::Standard => "standard",
        crate::args::RsFormArg::PaperMinus => "paper-minus",
    });
    manifest.set("include_overnight", args.vol.include_overnight);
    manifest.set("merge_forward", args.features.merge_forward);
    manifest.set("aggregator", match args.features.aggregator {
        crate::args::AggregatorArg::Std => "std",
        crate::args::AggregatorArg::Mean => "mean",
        crate::args::AggregatorArg::Weighted => "weighted",
        crate::args::AggregatorArg::Ratio => "ratio",
    });
    manifest.set(
        "thresholds",
        format!("{} {}", args.features.thresholds[0], args.features.thresholds[1]),
    );
    manifest.set("log_base", match args.features.log_base {
        crate::args::LogBaseArg::E => "e",
        crate::args::LogBaseArg::Ten => "10",
    });
    manifest.set("scorer_rules", "lexicon+boosters+negation3+caps+exclamations, alpha=15");
    for path in [
        &args.inputs.ohlc,
        &args.inputs.tweets,
        &args.inputs.lexicon,
        &args.inputs.yolo1,
        &args.inputs.yolo2,
        &args.inputs.m,
        &args.inputs.vix,
    ] {
        manifest.digest_input(path)?;
    }
    if let Some(cal) = &args.inputs.calendar {
        manifest.digest_input(cal)?;
    }
    let manifest_path = tracker.track(args.out.join("manifest.json"));
    manifest.write(&manifest_path)?;

    tracker.commit();
    eprintln!(
        "pipeline complete: {} rows, {} dropped days, outputs in {}",
        table.rows.len(),
        table.drops.len(),
        args.out.display()
    );
    Ok(())
}
