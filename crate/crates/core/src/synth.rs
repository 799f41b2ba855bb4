//! Deterministic synthetic scenarios: GBM-driven OHLC bars plus tweet and
//! exogenous streams whose couplings are calibrated so the *pipeline-
//! measured* correlations hit configured targets.
//!
//! # Randomness contract
//!
//! Fixtures generated by this module are golden files, so every random
//! transform is pinned:
//!
//! - generator: `ChaCha8Rng` seeded with `seed_from_u64`; the master seed
//!   spawns one independent sub-stream each for the latent process, market
//!   paths, tweets, and exogenous series (in that order);
//! - uniforms: `((next_u64 >> 11) + 0.5) * 2^-53`, open interval (0, 1);
//! - normals: inverse-CDF transform of one uniform (Acklam's rational
//!   approximation, relative error < 1.15e-9);
//! - Poisson: Knuth's product method, split into chunks of rate <= 500.
//!
//! # Scenario shape
//!
//! A latent attention factor z follows a stationary AR(1) with the
//! configured persistence. Per trading day t:
//!
//! - daily variance: `daily_vol_base * exp(0.8 * z_t)`, realized by a
//!   driftless GBM path with `intraday_steps` steps;
//! - tweet rate: `base_tweet_rate * exp(a*z_t + b*w_d)` per calendar date,
//!   with (a, b) calibrated against the estimator noise so the pipeline's
//!   Pearson(V, MOON1) lands on `activity_vol_corr`;
//! - per-tweet ternary sentiment: symmetric around neutral with day-level
//!   dispersion `q_t = logistic(0.4 + 0.6*(c*z_t + f*u_t))`; (c, f) are
//!   calibrated empirically (secant search over a pilot simulation of the
//!   full measurement chain) so Pearson(V, MOON2) lands on
//!   `sentiment_vol_corr`;
//! - exogenous series: VIX, M, YOLO1, YOLO2 as log-linear couplings to z
//!   with fixed loadings.
//!
//! Trading days are consecutive weekdays from 2021-01-04; tweets are also
//! emitted on the weekends in between (timestamps 11:00-23:00 UTC, which is
//! always the same exchange-local date). Tweet texts are drawn from pools
//! that score to the intended ternary label under the bundled demo lexicon.

use chrono::{DateTime, Datelike, Days, NaiveDate, TimeZone, Utc, Weekday};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::market_data::{ExogenousSeries, OhlcBar, SeriesName, TweetRecord};

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid scenario config: {0}")]
    InvalidConfig(String),
    #[error("{name} target {requested} infeasible: |max achievable| ~ {max:.3}")]
    InfeasibleCorrelation {
        name: &'static str,
        requested: f64,
        max: f64,
    },
}

/// Scenario parameters. Correlation targets refer to what the real pipeline
/// measures contemporaneously between V and the MOON features.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ScenarioConfig {
    pub seed: u64,
    pub n_days: u32,
    pub daily_vol_base: f64,
    pub vol_persistence: f64,
    pub activity_vol_corr: f64,
    pub sentiment_vol_corr: f64,
    pub base_tweet_rate: f64,
    pub intraday_steps: u32,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), SynthError> {
        let err = |m: String| Err(SynthError::InvalidConfig(m));
        if self.n_days < 2 {
            return err(format!("n_days must be >= 2, got {}", self.n_days));
        }
        if !(self.daily_vol_base > 0.0) {
            return err(format!("daily_vol_base must be > 0, got {}", self.daily_vol_base));
        }
        if !(0.0..1.0).contains(&self.vol_persistence) {
            return err(format!(
                "vol_persistence must be in [0, 1), got {}",
                self.vol_persistence
            ));
        }
        for (name, v) in [
            ("activity_vol_corr", self.activity_vol_corr),
            ("sentiment_vol_corr", self.sentiment_vol_corr),
        ] {
            if !(-1.0..1.0).contains(&v) || v.abs() >= 1.0 {
                return err(format!("{name} must be in (-1, 1), got {v}"));
            }
        }
        if !(self.base_tweet_rate > 0.0) {
            return err(format!("base_tweet_rate must be > 0, got {}", self.base_tweet_rate));
        }
        if self.intraday_steps < 100 {
            return err(format!("intraday_steps must be >= 100, got {}", self.intraday_steps));
        }
        Ok(())
    }
}

/// Everything one scenario produces, in the same shapes the parsers read.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioData {
    pub bars: Vec<OhlcBar>,
    pub tweets: Vec<TweetRecord>,
    pub exogenous: Vec<ExogenousSeries>,
}

// Fixed generation constants; part of the scenario contract.
const VOL_LOG_SD: f64 = 0.8;
const ACTIVITY_LOG_SD: f64 = 0.5;
const SENTIMENT_LOC: f64 = 0.4;
const SENTIMENT_SCALE: f64 = 0.6;
const RETWEET_FRACTION: f64 = 0.10;
const MEDIA_FRACTION: f64 = 0.10;
const START_PRICE: f64 = 100.0;
const SCENARIO_START: (i32, u32, u32) = (2021, 1, 4); // a Monday

const MARKET_PILOT_SEED: u64 = 0x6d6f_6f6e_0001;
const SENTIMENT_PILOT_SEED: u64 = 0x6d6f_6f6e_0002;
const MARKET_PILOT_DAYS: usize = 4000;
const SENTIMENT_PILOT_CHAINS: usize = 20_000;

/// Uniform draw in the open interval (0, 1).
pub fn uniform_open01(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
}

/// Standard normal via the inverse-CDF transform of one uniform.
pub fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    inverse_normal_cdf(uniform_open01(rng))
}

/// Acklam's rational approximation of the standard normal quantile.
/// Relative error below 1.15e-9 over (0, 1).
pub fn inverse_normal_cdf(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "quantile argument must be in (0, 1)");
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

/// Poisson draw by Knuth's product method, chunked so exp(-rate) never
/// underflows (chunks of rate <= 500).
pub fn poisson(rng: &mut ChaCha8Rng, mut rate: f64) -> u64 {
    assert!(rate >= 0.0 && rate.is_finite());
    let mut total = 0u64;
    while rate > 500.0 {
        total += poisson_knuth(rng, 500.0);
        rate -= 500.0;
    }
    total + poisson_knuth(rng, rate)
}

fn poisson_knuth(rng: &mut ChaCha8Rng, rate: f64) -> u64 {
    if rate <= 0.0 {
        return 0;
    }
    let limit = (-rate).exp();
    let mut k = 0u64;
    let mut product = 1.0;
    loop {
        product *= uniform_open01(rng);
        if product <= limit {
            return k;
        }
        k += 1;
    }
}

/// One driftless GBM day: log-price increments are N(0, daily_variance /
/// steps); high/low are the path extrema including the open, close is the
/// final point. The bar satisfies the OHLC invariants by construction.
pub fn gbm_day(
    rng: &mut ChaCha8Rng,
    date: NaiveDate,
    open: f64,
    daily_variance: f64,
    steps: u32,
) -> OhlcBar {
    assert!(open > 0.0 && daily_variance >= 0.0 && steps >= 1);
    let step_sd = (daily_variance / steps as f64).sqrt();
    let mut x = 0.0f64;
    let mut max = 0.0f64;
    let mut min = 0.0f64;
    for _ in 0..steps {
        x += step_sd * standard_normal(rng);
        if x > max {
            max = x;
        }
        if x < min {
            min = x;
        }
    }
    OhlcBar::new(
        date,
        open,
        open * max.exp(),
        open * min.exp(),
        open * x.exp(),
    )
    .expect("GBM bar satisfies invariants by construction")
}

fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

fn population_std(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n).sqrt()
}

/// Variance of the log composite estimator at unit daily variance, measured
/// on a pilot GBM sample at the configured step count. This is the  noise
/// floor that caps achievable V-feature correlations.
fn pilot_estimator_log_variance(steps: u32) -> f64 {
    use crate::volatility::{log_ranges, parkinson, garman_klass, rogers_satchell, RsForm};
    let mut rng = ChaCha8Rng::seed_from_u64(MARKET_PILOT_SEED);
    let date = NaiveDate::from_ymd_opt(2021, 1, 4).unwrap();
    let mut lns = Vec::with_capacity(MARKET_PILOT_DAYS);
    for _ in 0..MARKET_PILOT_DAYS {
        let bar = gbm_day(&mut rng, date, 100.0, 1.0, steps);
        let r = log_ranges(&bar, None);
        let composite =
            (parkinson(&r) + garman_klass(&r) + rogers_satchell(&r, RsForm::Standard)) / 3.0;
        if composite > 0.0 {
            lns.push(composite.ln());
        }
    }
    let s = population_std(&lns);
    s * s
}

struct Couplings {
    activity_z: f64,    // a: z loading of the log tweet rate
    activity_own: f64,  // b: idiosyncratic loading
    sentiment_z: f64,   // c: z loading of the dispersion latent
    sentiment_own: f64, // f: idiosyncratic loading
}

/// Sentiment pilot: simulate the full MOON2 measurement chain (Poisson
/// count, media filter, ternary draws, population std) for a candidate z
/// loading and report the implied Pearson(V, MOON2).
fn sentiment_chain_rho(c: f64, a: f64, b: f64, rate: f64, var_v: f64) -> f64 {
    let f = (1.0 - c * c).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(SENTIMENT_PILOT_SEED);
    let mut zs = Vec::with_capacity(SENTIMENT_PILOT_CHAINS);
    let mut m2s = Vec::with_capacity(SENTIMENT_PILOT_CHAINS);
    for _ in 0..SENTIMENT_PILOT_CHAINS {
        let z = standard_normal(&mut rng);
        let w = standard_normal(&mut rng);
        let n_all = poisson(&mut rng, rate * (a * z + b * w).exp());
        let mut n_text = 0u64;
        for _ in 0..n_all {
            if uniform_open01(&mut rng) >= RETWEET_FRACTION + MEDIA_FRACTION {
                n_text += 1;
            }
        }
        let u = standard_normal(&mut rng);
        let q = logistic(SENTIMENT_LOC + SENTIMENT_SCALE * (c * z + f * u));
        if n_text == 0 {
            continue;
        }
        let mut ternary = Vec::with_capacity(n_text as usize);
        for _ in 0..n_text {
            let v = uniform_open01(&mut rng);
            ternary.push(if v < q / 2.0 {
                1.0
            } else if v < q {
                -1.0
            } else {
                0.0
            });
        }
        zs.push(z);
        m2s.push(population_std(&ternary));
    }
    let n = zs.len() as f64;
    let mz = zs.iter().sum::<f64>() / n;
    let mm = m2s.iter().sum::<f64>() / n;
    let cov = zs
        .iter()
        .zip(&m2s)
        .map(|(z, m)| (z - mz) * (m - mm))
        .sum::<f64>()
        / n;
    let var_m = m2s.iter().map(|m| (m - mm) * (m - mm)).sum::<f64>() / n;
    VOL_LOG_SD * cov / (var_v * var_m).sqrt()
}

fn calibrate(config: &ScenarioConfig) -> Result<Couplings, SynthError> {
    let ce = pilot_estimator_log_variance(config.intraday_steps);
    let var_v = VOL_LOG_SD * VOL_LOG_SD + ce;
    let g2 = ACTIVITY_LOG_SD * ACTIVITY_LOG_SD;

    // Activity: analytic solve. MOON1 ~ a*z + b*w + Poisson log noise, so
    // rho = a*s / sqrt(var_v * (g^2 + v_p)).
    let v_p = (g2 / 2.0).exp() / config.base_tweet_rate;
    let a = config.activity_vol_corr * (var_v * (g2 + v_p)).sqrt() / VOL_LOG_SD;
    if a.abs() > ACTIVITY_LOG_SD {
        let max = VOL_LOG_SD * ACTIVITY_LOG_SD / (var_v * (g2 + v_p)).sqrt();
        return Err(SynthError::InfeasibleCorrelation {
            name: "activity_vol_corr",
            requested: config.activity_vol_corr,
            max,
        });
    }
    let b = (g2 - a * a).sqrt();

    // Sentiment: the std estimator's small-sample bias couples to activity
    // through the bucket size, so solve the loading empirically against a
    // pilot of the whole measurement chain (common random numbers make the
    // response smooth in c).
    let target = config.sentiment_vol_corr;
    let rho = |c: f64| sentiment_chain_rho(c, a, b, config.base_tweet_rate, var_v);
    let c_max = if target >= 0.0 { 0.99 } else { -0.99 };
    let r_extreme = rho(c_max);
    if target.abs() > r_extreme.abs() {
        return Err(SynthError::InfeasibleCorrelation {
            name: "sentiment_vol_corr",
            requested: target,
            max: r_extreme.abs(),
        });
    }
    // Secant iteration; common random numbers in the pilot keep rho(c)
    // smooth, so a handful of steps suffices.
    let mut c0 = 0.0;
    let mut r0 = rho(c0);
    let mut c1 = if (r_extreme - r0).abs() > 1e-12 {
        (c_max * (target - r0) / (r_extreme - r0)).clamp(-0.99, 0.99)
    } else {
        c_max
    };
    let mut c = c1;
    for _ in 0..8 {
        let r1 = rho(c1);
        if (r1 - target).abs() < 0.002 || (r1 - r0).abs() < 1e-12 {
            c = c1;
            break;
        }
        let next = (c1 - (r1 - target) * (c1 - c0) / (r1 - r0)).clamp(-0.99, 0.99);
        c0 = c1;
        r0 = r1;
        c1 = next;
        c = next;
    }

    Ok(Couplings {
        activity_z: a,
        activity_own: b,
        sentiment_z: c,
        sentiment_own: (1.0 - c * c).sqrt(),
    })
}

/// Text pools per ternary label; every entry scores to its label under the
/// bundled demo lexicon and default thresholds (pinned by unit test).
pub const POSITIVE_TEXTS: [&str; 8] = [
    "to the moon",
    "diamond hands we win",
    "huge gains today",
    "rocket fuel loaded",
    "bullish and holding",
    "buy the dip for profit",
    "tendies incoming",
    "this squeeze looks great",
];
pub const NEGATIVE_TEXTS: [&str; 8] = [
    "this will crash",
    "dump it before the drop",
    "bagholder panic setting in",
    "bearish signal today",
    "total scam and fraud",
    "massive losses again",
    "sell or it will tank",
    "red day fear everywhere",
];
pub const NEUTRAL_TEXTS: [&str; 8] = [
    "watching the ticker today",
    "what time does the market open",
    "any news on earnings",
    "volume looks flat this session",
    "waiting for the closing bell",
    "ticker chatter all afternoon",
    "checking the daily chart",
    "market hours feel long today",
];

fn is_weekday(date: NaiveDate) -> bool {
    !matches!(date.weekday(), Weekday::Sat | Weekday::Sun)
}

/// Generate one full scenario. Deterministic: identical configs (including
/// the seed) produce identical outputs.
pub fn simulate_scenario(config: &ScenarioConfig) -> Result<ScenarioData, SynthError> {
    config.validate()?;
    let couplings = calibrate(config)?;

    let mut master = ChaCha8Rng::seed_from_u64(config.seed);
    let mut latent_rng = ChaCha8Rng::seed_from_u64(master.next_u64());
    let mut market_rng = ChaCha8Rng::seed_from_u64(master.next_u64());
    let mut tweet_rng = ChaCha8Rng::seed_from_u64(master.next_u64());
    let mut exog_rng = ChaCha8Rng::seed_from_u64(master.next_u64());

    // Trading days: consecutive weekdays.
    let start = NaiveDate::from_ymd_opt(SCENARIO_START.0, SCENARIO_START.1, SCENARIO_START.2)
        .expect("valid start date");
    let mut trading_days = Vec::with_capacity(config.n_days as usize);
    let mut cursor = start;
    while trading_days.len() < config.n_days as usize {
        if is_weekday(cursor) {
            trading_days.push(cursor);
        }
        cursor = cursor + Days::new(1);
    }
    let last_day = *trading_days.last().expect("n_days >= 2");

    // Latent AR(1) (stationary, unit marginal variance) plus the per-day
    // sentiment dispersion draw.
    let phi = config.vol_persistence;
    let innovation_sd = (1.0 - phi * phi).sqrt();
    let mut z = Vec::with_capacity(trading_days.len());
    let mut dispersion = Vec::with_capacity(trading_days.len());
    for t in 0..trading_days.len() {
        let eta = standard_normal(&mut latent_rng);
        let zt = if t == 0 { eta } else { phi * z[t - 1] + innovation_sd * eta };
        z.push(zt);
        let u = standard_normal(&mut latent_rng);
        let q = logistic(
            SENTIMENT_LOC
                + SENTIMENT_SCALE
                    * (couplings.sentiment_z * zt + couplings.sentiment_own * u),
        );
        dispersion.push(q);
    }

    // Market: one GBM day per trading day, opening at the previous close.
    let mut bars = Vec::with_capacity(trading_days.len());
    let mut open = START_PRICE;
    for (t, &date) in trading_days.iter().enumerate() {
        let variance = config.daily_vol_base * (VOL_LOG_SD * z[t]).exp();
        let bar = gbm_day(&mut market_rng, date, open, variance, config.intraday_steps);
        open = bar.close;
        bars.push(bar);
    }

    // Tweets: every calendar date from start through the last trading day;
    // weekends inherit the governing (previous) trading day's z and q.
    let mut tweets = Vec::new();
    let mut id_counter: u64 = 0;
    let mut governing = 0usize;
    let mut date = start;
    while date <= last_day {
        if governing + 1 < trading_days.len() && trading_days[governing + 1] == date {
            governing += 1;
        }
        let w = standard_normal(&mut tweet_rng);
        let rate = config.base_tweet_rate
            * (couplings.activity_z * z[governing] + couplings.activity_own * w).exp();
        let count = poisson(&mut tweet_rng, rate);
        let q = dispersion[governing];

        let mut day_tweets = Vec::with_capacity(count as usize);
        for _ in 0..count {
            // 11:00-23:00 UTC is always the same exchange-local date.
            let offset_secs = (uniform_open01(&mut tweet_rng) * 43_200.0) as u32;
            let ts: DateTime<Utc> = Utc
                .from_utc_datetime(&date.and_hms_opt(11, 0, 0).expect("valid time"))
                + chrono::Duration::seconds(offset_secs as i64);
            let label_draw = uniform_open01(&mut tweet_rng);
            let ternary: i8 = if label_draw < q / 2.0 {
                1
            } else if label_draw < q {
                -1
            } else {
                0
            };
            let media_draw = uniform_open01(&mut tweet_rng);
            let (is_retweet, has_media) = if media_draw < RETWEET_FRACTION {
                (true, false)
            } else if media_draw < RETWEET_FRACTION + MEDIA_FRACTION {
                (false, true)
            } else {
                (false, false)
            };
            let pool = match ternary {
                1 => &POSITIVE_TEXTS,
                -1 => &NEGATIVE_TEXTS,
                _ => &NEUTRAL_TEXTS,
            };
            let text = pool[(uniform_open01(&mut tweet_rng) * pool.len() as f64) as usize % pool.len()];
            let like_count = poisson(&mut tweet_rng, 2.0);
            let retweet_count = poisson(&mut tweet_rng, 0.5);
            let quote_count = poisson(&mut tweet_rng, 0.2);
            let reply_count = poisson(&mut tweet_rng, 0.4);
            day_tweets.push(TweetRecord {
                id: String::new(), // assigned after the chronological sort
                created_at: ts,
                text: text.to_string(),
                has_media,
                is_retweet,
                like_count,
                retweet_count,
                quote_count,
                reply_count,
            });
        }
        day_tweets.sort_by_key(|t| t.created_at);
        for mut t in day_tweets {
            id_counter += 1;
            t.id = format!("t{id_counter:09}");
            tweets.push(t);
        }
        date = date + Days::new(1);
    }

    // Exogenous series on trading days: fixed log-linear couplings to z.
    let mut vix = Vec::new();
    let mut m = Vec::new();
    let mut yolo1 = Vec::new();
    let mut yolo2 = Vec::new();
    for (t, &day) in trading_days.iter().enumerate() {
        let w1 = standard_normal(&mut exog_rng);
        let w2 = standard_normal(&mut exog_rng);
        let w3 = standard_normal(&mut exog_rng);
        let w4 = standard_normal(&mut exog_rng);
        vix.push((day, 20.0 * (0.35 * z[t] + 0.15 * w1).exp()));
        m.push((day, 50.0 * (0.30 * z[t] + 0.30 * w2).exp()));
        yolo1.push((day, 1000.0 * (0.75 * z[t] + 0.35 * w3).exp()));
        yolo2.push((day, 40.0 * (0.45 * z[t] + 0.45 * w4).exp()));
    }
    let exogenous = vec![
        ExogenousSeries { name: SeriesName::Yolo1, points: yolo1 },
        ExogenousSeries { name: SeriesName::Yolo2, points: yolo2 },
        ExogenousSeries { name: SeriesName::M, points: m },
        ExogenousSeries { name: SeriesName::Vix, points: vix },
    ];

    Ok(ScenarioData { bars, tweets, exogenous })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sentiment::{score_compound, Lexicon, Thresholds};

    fn small_config() -> ScenarioConfig {
        ScenarioConfig {
            seed: 7,
            n_days: 12,
            daily_vol_base: 4e-4,
            vol_persistence: 0.9,
            activity_vol_corr: 0.65,
            sentiment_vol_corr: -0.1,
            base_tweet_rate: 15.0,
            intraday_steps: 100,
        }
    }

    #[test]
    fn inverse_cdf_matches_reference_quantiles() {
        // Reference values from a 25-digit evaluation of the normal quantile.
        let cases = [
            (0.5, 0.0),
            (0.975, 1.959963984540054),
            (0.025, -1.959963984540054),
            (0.99, 2.3263478740408408),
            (1e-6, -4.753424308822899),
        ];
        for (p, expected) in cases {
            let got = inverse_normal_cdf(p);
            assert!(
                (got - expected).abs() <= 1.2e-9 * expected.abs().max(1.0),
                "p={p}: got {got}, want {expected}"
            );
        }
    }

    #[test]
    fn uniform_stays_in_open_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let u = uniform_open01(&mut rng);
            assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn poisson_mean_roughly_matches_rate() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for rate in [0.5, 7.0, 40.0, 1200.0] {
            let n = 20_000;
            let total: u64 = (0..n).map(|_| poisson(&mut rng, rate)).sum();
            let mean = total as f64 / n as f64;
            assert!(
                (mean - rate).abs() < 5.0 * (rate / n as f64).sqrt().max(0.01),
                "rate {rate}: mean {mean}"
            );
        }
    }

    #[test]
    fn gbm_day_zero_variance_is_flat() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let date = NaiveDate::from_ymd_opt(2021, 1, 4).unwrap();
        let bar = gbm_day(&mut rng, date, 120.0, 0.0, 500);
        assert_eq!((bar.open, bar.high, bar.low, bar.close), (120.0, 120.0, 120.0, 120.0));
    }

    #[test]
    fn gbm_day_single_step_extremes() {
        let date = NaiveDate::from_ymd_opt(2021, 1, 4).unwrap();
        for seed in 0..50 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let bar = gbm_day(&mut rng, date, 100.0, 0.01, 1);
            assert_eq!(bar.high, bar.open.max(bar.close));
            assert_eq!(bar.low, bar.open.min(bar.close));
        }
    }

    #[test]
    fn scenario_is_deterministic() {
        let config = small_config();
        let a = simulate_scenario(&config).unwrap();
        let b = simulate_scenario(&config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn different_seeds_differ() {
        let config = small_config();
        let a = simulate_scenario(&config).unwrap();
        let b = simulate_scenario(&ScenarioConfig { seed: 8, ..config }).unwrap();
        assert_ne!(a.bars, b.bars);
    }

    #[test]
    fn generated_bars_pass_validation() {
        let data = simulate_scenario(&small_config()).unwrap();
        assert_eq!(data.bars.len(), 12);
        for bar in &data.bars {
            OhlcBar::new(bar.date, bar.open, bar.high, bar.low, bar.close).unwrap();
        }
        // chained opens
        for w in data.bars.windows(2) {
            assert_eq!(w[0].close, w[1].open);
        }
    }

    #[test]
    fn tweets_fall_inside_scenario_range() {
        let data = simulate_scenario(&small_config()).unwrap();
        assert!(!data.tweets.is_empty());
        let first = data.bars.first().unwrap().date;
        let last = data.bars.last().unwrap().date;
        for t in &data.tweets {
            let local = crate::market_data::exchange_local_date(t.created_at);
            assert!(local >= first && local <= last);
        }
        // ids are unique
        let mut ids: Vec<&str> = data.tweets.iter().map(|t| t.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), data.tweets.len());
    }

    #[test]
    fn infeasible_activity_target_errors() {
        let config = ScenarioConfig { activity_vol_corr: 0.95, ..small_config() };
        assert!(matches!(
            simulate_scenario(&config),
            Err(SynthError::InfeasibleCorrelation { name: "activity_vol_corr", .. })
        ));
    }

    #[test]
    fn invalid_config_rejected() {
        let config = ScenarioConfig { n_days: 1, ..small_config() };
        assert!(matches!(simulate_scenario(&config), Err(SynthError::InvalidConfig(_))));
        let config = ScenarioConfig { intraday_steps: 10, ..small_config() };
        assert!(matches!(simulate_scenario(&config), Err(SynthError::InvalidConfig(_))));
    }

    #[test]
    fn text_pools_score_their_labels() {
        let lexicon = Lexicon::demo();
        let thresholds = Thresholds::default();
        for text in POSITIVE_TEXTS {
            assert_eq!(score_compound(text, &lexicon, &thresholds).ternary, 1, "{text}");
        }
        for text in NEGATIVE_TEXTS {
            assert_eq!(score_compound(text, &lexicon, &thresholds).ternary, -1, "{text}");
        }
        for text in NEUTRAL_TEXTS {
            assert_eq!(score_compound(text, &lexicon, &thresholds).ternary, 0, "{text}");
        }
    }

    #[test]
    fn serialized_scenario_parses_back_identically() {
        use crate::market_data::{
            parse_ohlc_csv, parse_tweets_jsonl, write_ohlc_csv, write_tweets_jsonl,
        };
        let data = simulate_scenario(&small_config()).unwrap();
        let mut csv = Vec::new();
        write_ohlc_csv(&mut csv, &data.bars).unwrap();
        assert_eq!(parse_ohlc_csv(csv.as_slice()).unwrap(), data.bars);
        let mut jsonl = Vec::new();
        write_tweets_jsonl(&mut jsonl, &data.tweets).unwrap();
        assert_eq!(parse_tweets_jsonl(jsonl.as_slice()).unwrap(), data.tweets);
    }

    #[test]
    fn scenario_config_round_trips_through_json() {
        let config = small_config();
        let json = serde_json::to_string(&config).unwrap();
        let back: ScenarioConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(config, back);
    }
}
