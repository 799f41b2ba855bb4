//! Range-based daily variance estimators and the composite log-volatility.
//!
//! From a bar's log-ranges h = ln(H/O), l = ln(L/O), c = ln(C/O) and the
//! squared overnight return J = ln(O/C_prev)^2 the module computes the
//! Parkinson, Garman-Klass, and Rogers-Satchell daily variance estimates,
//! averages them, and maps the result to an annualized log scale:
//! V = ln(100^2 * 252 * composite).
//!
//! The Rogers-Satchell estimator ships in two wirings: the standard form
//! h(h-c) + l(l-c), which is non-negative on every valid bar, and a
//! compatibility form h(h-c) - l(l-c) selectable via [`RsForm::PaperMinus`].
//! The overnight term J is excluded from the composite by default and added
//! when [`VolConfig::include_overnight`] is set.

use std::collections::BTreeMap;

use chrono::NaiveDate;
use thiserror::Error;

use crate::market_data::OhlcBar;

#[derive(Debug, Error)]
pub enum VolatilityError {
    #[error("degenerate bar: composite variance {0} is not positive")]
    DegenerateBar(f64),
}

/// Dimensionless log-ranges of one bar relative to its open, plus the
/// squared overnight log-return.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogRanges {
    pub h: f64,
    pub l: f64,
    pub c: f64,
    pub j: f64,
}

/// Which Rogers-Satchell wiring to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RsForm {
    /// h(h-c) + l(l-c); non-negative for any bar with l <= c <= h.
    #[default]
    Standard,
    /// h(h-c) - l(l-c); compatibility form, negative on ordinary bars.
    PaperMinus,
}

/// Estimator configuration shared across a run.
#[derive(Debug, Clone, Copy, Default)]
pub struct VolConfig {
    pub rs_form: RsForm,
    pub include_overnight: bool,
}

/// The per-day variance estimates and the annualized log-volatility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DailyVariance {
    pub parkinson: f64,
    pub garman_klass: f64,
    pub rogers_satchell: f64,
    pub composite: f64,
    pub log_vol: f64,
}

const FOUR_LN_2: f64 = 4.0 * std::f64::consts::LN_2;
const ANNUALIZATION: f64 = 100.0 * 100.0 * 252.0;

/// Log-ranges of a bar. Without a previous close the overnight term is 0.
pub fn log_ranges(bar: &OhlcBar, prev_close: Option<f64>) -> LogRanges {
    let h = (bar.high / bar.open).ln();
    let l = (bar.low / bar.open).ln();
    let c = (bar.close / bar.open).ln();
    let j = match prev_close {
        Some(pc) => {
            let r = (bar.open / pc).ln();
            r * r
        }
        None => 0.0,
    };
    LogRanges { h, l, c, j }
}

/// Parkinson estimator: (h - l)^2 / (4 ln 2).
pub fn parkinson(r: &LogRanges) -> f64 {
    let range = r.h - r.l;
    range * range / FOUR_LN_2
}

/// Garman-Klass estimator:
/// 0.511 (h-l)^2 - 0.383 c^2 - 0.019 (c(h+l) - 2hl).
pub fn garman_klass(r: &LogRanges) -> f64 {
    let range = r.h - r.l;
    0.511 * range * range - 0.383 * r.c * r.c - 0.019 * (r.c * (r.h + r.l) - 2.0 * r.h * r.l)
}

/// Rogers-Satchell estimator in the configured form.
pub fn rogers_satchell(r: &LogRanges, form: RsForm) -> f64 {
    let t1 = r.h * (r.h - r.c);
    let t2 = r.l * (r.l - r.c);
    match form {
        RsForm::Standard => t1 + t2,
        RsForm::PaperMinus => t1 - t2,
    }
}

/// Composite daily variance and annualized log-volatility. Degenerate bars
/// (non-positive composite) are an error; the caller decides row-drop policy.
pub fn log_volatility(r: &LogRanges, config: &VolConfig) -> Result<DailyVariance, VolatilityError> {
    let p = parkinson(r);
    let g = garman_klass(r);
    let rs = rogers_satchell(r, config.rs_form);
    let mut composite = (p + g + rs) / 3.0;
    if config.include_overnight {
        composite += r.j;
    }
    if !(composite > 0.0) {
        return Err(VolatilityError::DegenerateBar(composite));
    }
    Ok(DailyVariance {
        parkinson: p,
        garman_klass: g,
        rogers_satchell: rs,
        composite,
        log_vol: (ANNUALIZATION * composite).ln(),
    })
}

/// Run the estimators over a bar sequence, chaining previous closes for the
/// overnight term. Degenerate bars are dropped and reported.
pub fn daily_series(
    bars: &[OhlcBar],
    config: &VolConfig,
) -> (BTreeMap<NaiveDate, DailyVariance>, Vec<NaiveDate>) {
    let mut out = BTreeMap::new();
    let mut dropped = Vec::new();
    let mut prev_close = None;
    for bar in bars {
        let r = log_ranges(bar, prev_close);
        match log_volatility(&r, config) {
            Ok(v) => {
                out.insert(bar.date, v);
            }
            Err(_) => dropped.push(bar.date),
        }
        prev_close = Some(bar.close);
    }
    (out, dropped)
}
