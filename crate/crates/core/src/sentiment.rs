//! Lexicon-based tweet sentiment: a compound score in [-1, 1] plus a
//! ternary discretization.
//!
//! The scorer implements a fixed, documented rule set over a valence
//! lexicon. Per valenced token, in this order:
//!
//! 1. base valence from the lexicon;
//! 2. each booster among the 3 preceding tokens adds its increment,
//!    aligned with the sign of the base valence;
//! 3. a negator among the 3 preceding tokens multiplies the value by -0.74;
//! 4. an all-caps source word adds 0.733, aligned with the current sign;
//! 5. trailing exclamation marks add 0.292 each (at most 3), aligned with
//!    the current sign.
//!
//! The token valences are summed and normalized to
//! `compound = sum / sqrt(sum^2 + 15)`, then discretized: positive when
//! compound >= +0.05, negative when compound <= -0.05, neutral otherwise
//! (thresholds configurable).

use std::collections::{HashMap, HashSet};
use std::io::BufRead;

use thiserror::Error;

use crate::market_data::TweetRecord;

const BOOSTER_WINDOW: usize = 3;
const NEGATION_WINDOW: usize = 3;
const NEGATION_SCALAR: f64 = -0.74;
const CAPS_EMPHASIS: f64 = 0.733;
const EXCLAMATION_EMPHASIS: f64 = 0.292;
const MAX_EXCLAMATIONS: u32 = 3;
const NORMALIZATION_ALPHA: f64 = 15.0;

const DEMO_LEXICON_TSV: &str = include_str!("data/demo_lexicon.tsv");

#[derive(Debug, Error)]
pub enum SentimentError {
    #[error("lexicon line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("token `{0}` appears in more than one lexicon table")]
    DuplicateToken(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Token valences plus modifier tables. Immutable after load and shareable
/// across threads.
#[derive(Debug, Clone)]
pub struct Lexicon {
    valences: HashMap<String, f64>,
    boosters: HashMap<String, f64>,
    negators: HashSet<String>,
}

impl Lexicon {
    /// Parse the TSV lexicon format: `token<TAB>valence` rows (extra
    /// columns ignored, so full-size published lexicon files load
    /// unchanged), with optional `[boosters]` and `[negators]` sections.
    /// `#` lines and blank lines are skipped; tokens are lower-cased.
    pub fn from_tsv<R: BufRead>(reader: R) -> Result<Self, SentimentError> {
        #[derive(PartialEq)]
        enum Section {
            Valences,
            Boosters,
            Negators,
        }
        let mut section = Section::Valences;
        let mut lex = Lexicon {
            valences: HashMap::new(),
            boosters: HashMap::new(),
            negators: HashSet::new(),
        };
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            match trimmed {
                "[boosters]" => {
                    section = Section::Boosters;
                    continue;
                }
                "[negators]" => {
                    section = Section::Negators;
                    continue;
                }
                _ => {}
            }
            let mut fields = trimmed.split('\t');
            let token = fields
                .next()
                .unwrap_or("")
                .trim()
                .to_lowercase();
            if token.is_empty() {
                return Err(SentimentError::Parse {
                    line: line_no,
                    message: "empty token".to_string(),
                });
            }
            let value = |required: bool| -> Result<f64, SentimentError> {
                match fields.clone().next() {
                    Some(v) => v.trim().parse::<f64>().map_err(|_| SentimentError::Parse {
                        line: line_no,
                        message: format!("bad valence `{v}`"),
                    }),
                    None if required => Err(SentimentError::Parse {
                        line: line_no,
                        message: "missing valence".to_string(),
                    }),
                    None => Ok(0.0),
                }
            };
            match section {
                Section::Valences => {
                    lex.valences.insert(token, value(true)?);
                }
                Section::Boosters => {
                    lex.boosters.insert(token, value(true)?);
                }
                Section::Negators => {
                    lex.negators.insert(token);
                }
            }
        }
        for token in lex.boosters.keys() {
            if lex.valences.contains_key(token) || lex.negators.contains(token) {
                return Err(SentimentError::DuplicateToken(token.clone()));
            }
        }
        for token in &lex.negators {
            if lex.valences.contains_key(token) {
                return Err(SentimentError::DuplicateToken(token.clone()));
            }
        }
        Ok(lex)
    }

    /// The small bundled demo lexicon.
    pub fn demo() -> Self {
        Self::from_tsv(DEMO_LEXICON_TSV.as_bytes()).expect("bundled lexicon is valid")
    }

    pub fn valence(&self, token: &str) -> Option<f64> {
        self.valences.get(token).copied()
    }

    pub fn len(&self) -> usize {
        self.valences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valences.is_empty()
    }

    /// Mirror image: every valence negated (modifier tables unchanged).
    pub fn negated(&self) -> Self {
        Lexicon {
            valences: self.valences.iter().map(|(k, v)| (k.clone(), -v)).collect(),
            boosters: self.boosters.clone(),
            negators: self.negators.clone(),
        }
    }
}

/// Classification thresholds on the compound score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub negative: f64,
    pub positive: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { negative: -0.05, positive: 0.05 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Positive,
    Neutral,
    Negative,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Label::Positive => "positive",
            Label::Neutral => "neutral",
            Label::Negative => "negative",
        })
    }
}

/// Compound score plus its discretization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SentimentScore {
    pub compound: f64,
    pub label: Label,
    pub ternary: i8,
}

/// A lower-cased word token with its emphasis flags.
#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub text: String,
    pub all_caps: bool,
    pub exclamations: u32,
}

/// Whitespace-split tokens, lower-cased, with leading/trailing punctuation
/// stripped. All-caps source words and trailing `!` counts are recorded as
/// per-token emphasis flags; internal punctuation (don't) is preserved.
pub fn tokenize(text: &str) -> Vec<Token> {
    text.split_whitespace()
        .filter_map(|word| {
            let stripped_front = word.trim_start_matches(|ch: char| !ch.is_alphanumeric());
            let core = stripped_front.trim_end_matches(|ch: char| !ch.is_alphanumeric());
            if core.is_empty() {
                return None;
            }
            let trailing = &stripped_front[core.len()..];
            let exclamations = trailing.chars().filter(|&ch| ch == '!').count() as u32;
            let all_caps = core.chars().any(char::is_alphabetic)
                && !core.chars().any(char::is_lowercase);
            Some(Token {
                text: core.to_lowercase(),
                all_caps,
                exclamations,
            })
        })
        .collect()
}

/// Score one text. Texts with no lexicon hits score compound 0, neutral.
pub fn score_compound(text: &str, lexicon: &Lexicon, thresholds: &Thresholds) -> SentimentScore {
    let tokens = tokenize(text);
    let mut sum = 0.0;
    for (i, tok) in tokens.iter().enumerate() {
        let Some(base) = lexicon.valence(&tok.text) else {
            continue;
        };
        if base == 0.0 {
            continue;
        }
        let mut v = base;
        let base_sign = if base > 0.0 { 1.0 } else { -1.0 };
        let window_start = i.saturating_sub(BOOSTER_WINDOW.max(NEGATION_WINDOW));
        for prior in &tokens[window_start..i] {
            if let Some(&incr) = lexicon.boosters.get(&prior.text) {
                v += base_sign * incr;
            }
        }
        if tokens[i.saturating_sub(NEGATION_WINDOW)..i]
            .iter()
            .any(|t| lexicon.negators.contains(&t.text))
        {
            v *= NEGATION_SCALAR;
        }
        if tok.all_caps && v != 0.0 {
            v += if v > 0.0 { CAPS_EMPHASIS } else { -CAPS_EMPHASIS };
        }
        if tok.exclamations > 0 && v != 0.0 {
            let bumps = tok.exclamations.min(MAX_EXCLAMATIONS) as f64;
            let emphasis = EXCLAMATION_EMPHASIS * bumps;
            v += if v > 0.0 { emphasis } else { -emphasis };
        }
        sum += v;
    }
    let compound = (sum / (sum * sum + NORMALIZATION_ALPHA).sqrt()).clamp(-1.0, 1.0);
    classify(compound, thresholds)
}

/// Attach label/ternary to a compound value under the given thresholds.
pub fn classify(compound: f64, thresholds: &Thresholds) -> SentimentScore {
    let (label, ternary) = if compound >= thresholds.positive {
        (Label::Positive, 1)
    } else if compound <= thresholds.negative {
        (Label::Negative, -1)
    } else {
        (Label::Neutral, 0)
    };
    SentimentScore { compound, label, ternary }
}

/// Score a batch of records (already media/retweet filtered): one score per
/// record, input order preserved.
pub fn score_batch(
    records: &[TweetRecord],
    lexicon: &Lexicon,
    thresholds: &Thresholds,
) -> Vec<(String, SentimentScore)> {
    records
        .iter()
        .map(|r| (r.id.clone(), score_compound(&r.text, lexicon, thresholds)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lexicon_with(valences: &[(&str, f64)]) -> Lexicon {
        let mut tsv = String::new();
        for (t, v) in valences {
            tsv.push_str(&format!("{t}\t{v}\n"));
        }
        tsv.push_str("[boosters]\nvery\t0.293\n[negators]\nnot\n");
        Lexicon::from_tsv(tsv.as_bytes()).unwrap()
    }

    #[test]
    fn tokenize_caps_and_exclamations() {
        let tokens = tokenize("GME to the MOON!!");
        let texts: Vec<&str> = tokens.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, vec!["gme", "to", "the", "moon"]);
        let moon = &tokens[3];
        assert!(moon.all_caps);
        assert_eq!(moon.exclamations, 2);
        assert!(tokens[0].all_caps);
        assert!(!tokens[1].all_caps);
        assert_eq!(tokens[0].exclamations, 0);
    }

    #[test]
    fn tokenize_empty() {
        assert!(tokenize("").is_empty());
        assert!(tokenize("   ").is_empty());
    }

    #[test]
    fn tokenize_keeps_internal_apostrophe() {
        let tokens = tokenize("don't sell");
        let texts: Vec<&str> = tokens.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, vec!["don't", "sell"]);
    }

    #[test]
    fn tokenize_strips_leading_punctuation() {
        let tokens = tokenize("$GME (moon)");
        let texts: Vec<&str> = tokens.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, vec!["gme", "moon"]);
    }

    #[test]
    fn single_token_no_modifiers() {
        let lex = lexicon_with(&[("gain", 2.0)]);
        let s = score_compound("gain", &lex, &Thresholds::default());
        // 2 / sqrt(19), frozen from a 40-digit evaluation
        assert!((s.compound - 0.45883146774112353).abs() < 1e-15);
        assert_eq!(s.label, Label::Positive);
        assert_eq!(s.ternary, 1);
    }

    #[test]
    fn no_lexicon_hits_is_neutral() {
        let lex = lexicon_with(&[("gain", 2.0)]);
        let s = score_compound("nothing to see here", &lex, &Thresholds::default());
        assert_eq!(s.compound, 0.0);
        assert_eq!(s.label, Label::Neutral);
        assert_eq!(s.ternary, 0);
    }

    #[test]
    fn negated_token() {
        let lex = lexicon_with(&[("gain", 2.0)]);
        let s = score_compound("not a gain", &lex, &Thresholds::default());
        // 2 * -0.74 = -1.48; -1.48/sqrt(1.48^2 + 15), frozen
        assert!((s.compound - (-0.3569593188640713)).abs() < 1e-15);
        assert_eq!(s.label, Label::Negative);
        assert_eq!(s.ternary, -1);
    }

    #[test]
    fn negator_outside_window_ignored() {
        let lex = lexicon_with(&[("gain", 2.0)]);
        let s = score_compound("not w x y gain", &lex, &Thresholds::default());
        assert!(s.compound > 0.0);
    }

    #[test]
    fn booster_increases_magnitude() {
        let lex = lexicon_with(&[("gain", 2.0)]);
        let plain = score_compound("gain", &lex, &Thresholds::default());
        let boosted = score_compound("very gain", &lex, &Thresholds::default());
        assert!(boosted.compound > plain.compound);
    }

    #[test]
    fn caps_and_exclamations_amplify() {
        let lex = lexicon_with(&[("moon", 3.1)]);
        let plain = score_compound("moon", &lex, &Thresholds::default());
        let caps = score_compound("MOON", &lex, &Thresholds::default());
        let shouted = score_compound("MOON!!", &lex, &Thresholds::default());
        assert!(caps.compound > plain.compound);
        assert!(shouted.compound > caps.compound);
    }

    #[test]
    fn exclamations_capped_at_three() {
        let lex = lexicon_with(&[("moon", 3.1)]);
        let three = score_compound("moon!!!", &lex, &Thresholds::default());
        let five = score_compound("moon!!!!!", &lex, &Thresholds::default());
        assert_eq!(three.compound, five.compound);
    }

    #[test]
    fn score_batch_is_elementwise() {
        use chrono::TimeZone;
        let lex = lexicon_with(&[("gain", 2.0), ("loss", -2.0)]);
        let records: Vec<TweetRecord> = ["big gain today", "such a loss", "nothing"]
            .iter()
            .enumerate()
            .map(|(i, text)| TweetRecord {
                id: format!("{i}"),
                created_at: chrono::Utc.with_ymd_and_hms(2021, 1, 27, 14, 0, i as u32).unwrap(),
                text: text.to_string(),
                has_media: false,
                is_retweet: false,
                like_count: 0,
                retweet_count: 0,
                quote_count: 0,
                reply_count: 0,
            })
            .collect();
        let batch = score_batch(&records, &lex, &Thresholds::default());
        assert_eq!(batch.len(), 3);
        for (record, (id, score)) in records.iter().zip(&batch) {
            assert_eq!(&record.id, id);
            assert_eq!(
                score,
                &score_compound(&record.text, &lex, &Thresholds::default())
            );
        }
        assert!(score_batch(&[], &lex, &Thresholds::default()).is_empty());
    }

    #[test]
    fn demo_lexicon_loads() {
        let lex = Lexicon::demo();
        assert!(lex.len() >= 30);
        assert!(lex.valence("moon").unwrap() > 0.0);
        assert!(lex.valence("crash").unwrap() < 0.0);
    }

    #[test]
    fn duplicate_across_tables_rejected() {
        let tsv = "gain\t2.0\n[negators]\ngain\n";
        assert!(matches!(
            Lexicon::from_tsv(tsv.as_bytes()),
            Err(SentimentError::DuplicateToken(t)) if t == "gain"
        ));
    }

    #[test]
    fn extra_columns_ignored() {
        let tsv = "gain\t2.0\t0.5\t[2, 2, 3]\n";
        let lex = Lexicon::from_tsv(tsv.as_bytes()).unwrap();
        assert_eq!(lex.valence("gain"), Some(2.0));
    }

    #[test]
    fn threshold_changes_never_alter_compound() {
        let lex = lexicon_with(&[("up", 0.4)]);
        let loose = score_compound("up", &lex, &Thresholds { negative: -0.2, positive: 0.2 });
        let tight = score_compound("up", &lex, &Thresholds::default());
        assert_eq!(loose.compound, tight.compound);
        assert_ne!(loose.ternary, tight.ternary);
    }

    fn arb_text() -> impl Strategy<Value = String> {
        let word = prop_oneof![
            Just("gain".to_string()),
            Just("loss".to_string()),
            Just("GAIN!!".to_string()),
            Just("LOSS!".to_string()),
            Just("very".to_string()),
            Just("not".to_string()),
            Just("the".to_string()),
            "[a-z]{1,8}",
        ];
        proptest::collection::vec(word, 0..12).prop_map(|ws| ws.join(" "))
    }

    proptest! {
        #[test]
        fn compound_bounded(text in arb_text()) {
            let lex = lexicon_with(&[("gain", 2.0), ("loss", -2.0)]);
            let s = score_compound(&text, &lex, &Thresholds::default());
            prop_assert!((-1.0..=1.0).contains(&s.compound));
        }

        #[test]
        fn sign_symmetry_exact(text in arb_text()) {
            let lex = lexicon_with(&[("gain", 2.0), ("loss", -2.0)]);
            let s = score_compound(&text, &lex, &Thresholds::default());
            let mirrored = score_compound(&text, &lex.negated(), &Thresholds::default());
            prop_assert_eq!(mirrored.compound, -s.compound);
        }

        #[test]
        fn normalizer_monotone(a in -50.0f64..50.0, b in -50.0f64..50.0) {
            let f = |x: f64| x / (x * x + NORMALIZATION_ALPHA).sqrt();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(f(lo) <= f(hi));
        }
    }
}
