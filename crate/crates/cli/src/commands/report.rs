//! Render the R^2 grid and correlation matrix as aligned text tables.
//! Values print at 3 decimals; the CSVs hold full precision.

use std::io::BufRead;
use std::path::Path;

use anyhow::{bail, Context, Result};

use crate::args::ReportArgs;
use crate::stages::open;

fn read_csv_lines(path: &Path) -> Result<Vec<Vec<String>>> {
    let mut rows = Vec::new();
    for line in open(path)?.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        rows.push(line.split(',').map(|s| s.to_string()).collect());
    }
    Ok(rows)
}

pub fn run(args: ReportArgs) -> Result<()> {
    let r2 = read_csv_lines(&args.r2).with_context(|| format!("reading {}", args.r2.display()))?;
    if r2.len() < 2 {
        bail!("{}: no data rows", args.r2.display());
    }
    let header = &r2[0];
    let model_names = &header[1..];

    println!("R^2 by model");
    print!("{:<10}", header[0]);
    for name in model_names {
        print!("{name:>8}");
    }
    println!("  best");
    for row in &r2[1..] {
        if row.len() != header.len() {
            bail!("{}: ragged row for `{}`", args.r2.display(), row[0]);
        }
        let values: Vec<f64> = row[1..]
            .iter()
            .map(|cell| cell.parse::<f64>().with_context(|| format!("bad R^2 value `{cell}`")))
            .collect::<Result<_>>()?;
        print!("{:<10}", row[0]);
        for v in &values {
            print!("{v:>8.3}");
        }
        // Best at displayed precision; ties are flagged together.
        let rounded: Vec<i64> = values.iter().map(|v| (v * 1000.0).round() as i64).collect();
        let best = *rounded.iter().max().expect("non-empty");
        let winners: Vec<&str> = model_names
            .iter()
            .zip(&rounded)
            .filter(|(_, &r)| r == best)
            .map(|(name, _)| name.as_str())
            .collect();
        if winners.len() == 1 {
            println!("  best: {}", winners[0]);
        } else {
            println!("  best: {} (tie)", winners.join(", "));
        }
    }

    let corr = read_csv_lines(&args.correlations)
        .with_context(|| format!("reading {}", args.correlations.display()))?;
    if corr.len() < 2 {
        bail!("{}: no data rows", args.correlations.display());
    }
    println!();
    println!("Correlations (contemporaneous)");
    let cheader = &corr[0];
    print!("{:<10}", "");
    for name in &cheader[1..] {
        print!("{name:>8}");
    }
    println!();
    for row in &corr[1..] {
        print!("{:<10}", row[0]);
        for cell in &row[1..] {
            if cell.is_empty() {
                print!("{:>8}", "");
            } else {
                let v: f64 = cell.parse().with_context(|| format!("bad correlation `{cell}`"))?;
                print!("{v:>8.3}");
            }
        }
        println!();
    }
    Ok(())
}
