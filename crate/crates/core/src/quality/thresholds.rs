//! Threshold configuration and pass/fail filtering.
//!
//! Configuration is a flat key-value text format:
//!
//! ```text
//! alpha_ratio.min = 0.7
//! duplicate_line_fraction.max = 0.3
//! contains.lorem ipsum = false
//! stop_words = the, a, an
//! symbols = #, …
//! probes = lorem ipsum, {
//! ```
//!
//! A metric passes when its value lies within `[min, max]` (a missing bound
//! is unbounded); a null value fails any bounded check. `contains.<probe>`
//! passes when the probe verdict equals the configured boolean. Lines whose
//! first non-blank character is `#` are comments; inline comments are not
//! supported because `#` is a measurable symbol.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::quality::QualityValues;
use crate::stopwords;

/// The profile shipped with the crate (see `data/default_thresholds.conf`).
static DEFAULT_PROFILE: &str = include_str!("../../data/default_thresholds.conf");

/// A named symbol counted as one or more literal patterns. The ellipsis
/// symbol counts both "…" and "...".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolSpec {
    pub name: String,
    pub patterns: Vec<String>,
}

impl SymbolSpec {
    fn named(name: &str) -> Self {
        let patterns = if name == "\u{2026}" {
            vec!["\u{2026}".to_string(), "...".to_string()]
        } else {
            vec![name.to_string()]
        };
        SymbolSpec {
            name: name.to_string(),
            patterns,
        }
    }
}

/// Interval bound on a numeric metric.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Bound {
    pub min: Option<f64>,
    pub max: Option<f64>,
}

/// Quality configuration: measured lists (stop words, probes, symbols) plus
/// optional per-metric bounds and required probe verdicts.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdConfig {
    /// Lowercase stop-word list.
    pub stop_words: HashSet<String>,
    /// Probe strings tested case-insensitively against the text.
    pub probes: Vec<String>,
    /// Symbols measured by `symbol_to_word_ratio`.
    pub symbols: Vec<SymbolSpec>,
    /// Bounds per flat metric name.
    pub bounds: BTreeMap<String, Bound>,
    /// Required verdict per probe.
    pub required_contains: BTreeMap<String, bool>,
}

impl Default for ThresholdConfig {
    /// Default measured lists with no bounds: every document passes.
    fn default() -> Self {
        ThresholdConfig {
            stop_words: stopwords::english().map(str::to_string).collect(),
            probes: vec!["lorem ipsum".to_string(), "{".to_string()],
            symbols: vec![SymbolSpec::named("#"), SymbolSpec::named("\u{2026}")],
            bounds: BTreeMap::new(),
            required_contains: BTreeMap::new(),
        }
    }
}

impl ThresholdConfig {
    /// The Gopher-modeled filter profile embedded as data.
    pub fn default_profile() -> Self {
        Self::parse(DEFAULT_PROFILE).expect("embedded profile must parse")
    }

    /// Parses the key-value format on top of the default measured lists.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ThresholdConfig::default();
        for (index, raw) in text.lines().enumerate() {
            let line_no = index + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {line_no}: expected `key = value`, got {line:?}"))
            })?;
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(Error::Config(format!("line {line_no}: empty key")));
            }
            match key {
                "stop_words" => {
                    cfg.stop_words = split_list(value)
                        .into_iter()
                        .map(|w| w.to_lowercase())
                        .collect();
                }
                "probes" => {
                    cfg.probes = split_list(value);
                }
                "symbols" => {
                    cfg.symbols = split_list(value)
                        .iter()
                        .map(|s| SymbolSpec::named(s))
                        .collect();
                }
                _ if key.starts_with("contains.") => {
                    let probe = key["contains.".len()..].trim().to_string();
                    if probe.is_empty() {
                        return Err(Error::Config(format!("line {line_no}: empty probe")));
                    }
                    let required = parse_bool(value).ok_or_else(|| {
                        Error::Config(format!(
                            "line {line_no}: expected true or false, got {value:?}"
                        ))
                    })?;
                    if !cfg.probes.contains(&probe) {
                        cfg.probes.push(probe.clone());
                    }
                    cfg.required_contains.insert(probe, required);
                }
                _ if key.ends_with(".min") || key.ends_with(".max") => {
                    let metric = key[..key.len() - 4].trim().to_string();
                    let number: f64 = value.parse().map_err(|_| {
                        Error::Config(format!(
                            "line {line_no}: expected a decimal value, got {value:?}"
                        ))
                    })?;
                    let bound = cfg.bounds.entry(metric).or_default();
                    if key.ends_with(".min") {
                        bound.min = Some(number);
                    } else {
                        bound.max = Some(number);
                    }
                }
                _ => {
                    return Err(Error::Config(format!(
                        "line {line_no}: unknown key {key:?}"
                    )));
                }
            }
        }
        cfg.finalize()?;
        Ok(cfg)
    }

    /// Validates bounds and auto-registers symbols referenced only through a
    /// `symbol_to_word_ratio_*` bound.
    fn finalize(&mut self) -> Result<()> {
        let metrics: Vec<String> = self.bounds.keys().cloned().collect();
        for metric in metrics {
            if let Some(symbol) = metric.strip_prefix("symbol_to_word_ratio_") {
                if !self.symbols.iter().any(|s| s.name == symbol) {
                    self.symbols.push(SymbolSpec::named(symbol));
                }
            } else if !known_metric(&metric) {
                return Err(Error::Config(format!("unknown metric {metric:?}")));
            }
        }
        self.validate()
    }

    /// Checks bound consistency (min <= max).
    pub fn validate(&self) -> Result<()> {
        for (metric, bound) in &self.bounds {
            if let (Some(min), Some(max)) = (bound.min, bound.max) {
                if min > max {
                    return Err(Error::Config(format!(
                        "metric {metric:?}: min {min} exceeds max {max}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn split_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|item| !item.is_empty())
        .map(str::to_string)
        .collect()
}

fn parse_bool(value: &str) -> Option<bool> {
    match value {
        "true" => Some(true),
        "false" => Some(false),
        _ => None,
    }
}

fn known_metric(name: &str) -> bool {
    const FIXED: [&str; 10] = [
        "n_stop_words",
        "alpha_ratio",
        "mean_word_length",
        "doc_length",
        "proportion_ellipsis_lines",
        "proportion_bullet_lines",
        "duplicate_line_fraction",
        "duplicate_paragraph_fraction",
        "duplicate_line_chr_fraction",
        "duplicate_paragraph_chr_fraction",
    ];
    if FIXED.contains(&name) {
        return true;
    }
    if let Some(n) = name.strip_prefix("top_ngram_chr_fraction_") {
        return matches!(n.parse::<usize>(), Ok(2..=4));
    }
    if let Some(n) = name.strip_prefix("duplicate_ngram_chr_fraction_") {
        return matches!(n.parse::<usize>(), Ok(5..=10));
    }
    false
}

/// Per-document filter outcome: the measured values, one verdict per
/// configured check, and the conjunction.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityResult {
    pub values: QualityValues,
    pub verdicts: BTreeMap<String, bool>,
    pub passed: bool,
}

/// Applies the configured bounds and probe requirements. A metric passes
/// when its value lies in `[min, max]`; null values fail bounded checks;
/// an empty configuration passes everything.
pub fn apply_thresholds(values: QualityValues, cfg: &ThresholdConfig) -> Result<QualityResult> {
    cfg.validate()?;
    let numeric: HashMap<String, Option<f64>> = values.numeric_metrics().into_iter().collect();
    let mut verdicts = BTreeMap::new();
    for (metric, bound) in &cfg.bounds {
        let pass = match numeric.get(metric.as_str()).copied().flatten() {
            Some(value) => {
                bound.min.is_none_or(|min| value >= min)
                    && bound.max.is_none_or(|max| value <= max)
            }
            None => false,
        };
        verdicts.insert(metric.clone(), pass);
    }
    let measured: HashMap<&str, bool> = values
        .contains
        .iter()
        .map(|(probe, verdict)| (probe.as_str(), *verdict))
        .collect();
    for (probe, required) in &cfg.required_contains {
        let pass = measured.get(probe.as_str()) == Some(required);
        verdicts.insert(format!("contains_{probe}"), pass);
    }
    let passed = verdicts.values().all(|v| *v);
    Ok(QualityResult {
        values,
        verdicts,
        passed,
    })
}
