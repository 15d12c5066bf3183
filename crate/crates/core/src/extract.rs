//! Joint extraction of selected metric groups into flat records.
//!
//! Record keys follow a frozen snake_case scheme: summary statistics flatten
//! to `<field>_{mean,median,std}`, POS proportions to `pos_prop_<TAG>` over
//! the 17 Universal POS tags, per-n fractions to
//! `top_ngram_chr_fraction_<n>` / `duplicate_ngram_chr_fraction_<n>`,
//! symbols to `symbol_to_word_ratio_<symbol>`, and probes to
//! `contains_<probe>`. Key order is deterministic and identical for every
//! record of a run; metrics a document cannot provide are null, never
//! absent.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::coherence::{coherence, EmbeddingTable};
use crate::conllu::UPOS_TAGS;
use crate::descriptive::{descriptive_stats, SummaryStats};
use crate::doc::Document;
use crate::error::{Error, Result};
use crate::quality::{compute_quality_values, ThresholdConfig};
use crate::readability::{compute_readability, readability_counts};
use crate::syllable::SyllableRuleSet;
use crate::syntax::{document_dependency_stats, pos_proportions};

/// The six metric groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MetricKind {
    Descriptive,
    Readability,
    Dependency,
    Pos,
    Coherence,
    Quality,
}

impl MetricKind {
    pub const ALL: [MetricKind; 6] = [
        MetricKind::Descriptive,
        MetricKind::Readability,
        MetricKind::Dependency,
        MetricKind::Pos,
        MetricKind::Coherence,
        MetricKind::Quality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Descriptive => "descriptive",
            MetricKind::Readability => "readability",
            MetricKind::Dependency => "dependency",
            MetricKind::Pos => "pos",
            MetricKind::Coherence => "coherence",
            MetricKind::Quality => "quality",
        }
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricKind::ALL
            .into_iter()
            .find(|kind| kind.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown metric group {s:?}")))
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Non-empty set of metric groups. Iteration follows the canonical order of
/// [`MetricKind::ALL`] regardless of how the selection was written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSelection {
    kinds: BTreeSet<MetricKind>,
}

impl MetricSelection {
    pub fn new(kinds: impl IntoIterator<Item = MetricKind>) -> Result<Self> {
        let kinds: BTreeSet<MetricKind> = kinds.into_iter().collect();
        if kinds.is_empty() {
            return Err(Error::Config("metric selection must be non-empty".into()));
        }
        Ok(MetricSelection { kinds })
    }

    /// Parses a comma-separated list such as "descriptive,readability".
    pub fn parse_list(list: &str) -> Result<Self> {
        let kinds = list
            .split(',')
            .map(str::trim)
            .filter(|name| !name.is_empty())
            .map(MetricKind::from_str)
            .collect::<Result<Vec<_>>>()?;
        Self::new(kinds)
    }

    pub fn contains(&self, kind: MetricKind) -> bool {
        self.kinds.contains(&kind)
    }

    pub fn iter(&self) -> impl Iterator<Item = MetricKind> + '_ {
        self.kinds.iter().copied()
    }

    /// Dependency and POS metrics need annotated documents.
    pub fn requires_syntax(&self) -> bool {
        self.contains(MetricKind::Dependency) || self.contains(MetricKind::Pos)
    }

    pub fn requires_embeddings(&self) -> bool {
        self.contains(MetricKind::Coherence)
    }
}

/// A single metric value in a record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricValue {
    Int(i64),
    Float(f64),
    Bool(bool),
    Null,
}

impl MetricValue {
    fn from_option(value: Option<f64>) -> Self {
        match value {
            Some(v) => MetricValue::Float(v),
            None => MetricValue::Null,
        }
    }

    pub fn is_null(self) -> bool {
        matches!(self, MetricValue::Null)
    }

    pub fn as_f64(self) -> Option<f64> {
        match self {
            MetricValue::Int(v) => Some(v as f64),
            MetricValue::Float(v) => Some(v),
            _ => None,
        }
    }
}

/// One extraction row: the document id plus ordered metric fields.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRecord {
    pub id: String,
    pub fields: Vec<(String, MetricValue)>,
}

impl MetricsRecord {
    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.fields.iter().map(|(key, _)| key.as_str())
    }

    pub fn get(&self, key: &str) -> Option<MetricValue> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
    }
}

/// Shared read-only resources for extraction.
#[derive(Debug, Clone, Copy)]
pub struct Resources<'a> {
    pub syllables: &'a SyllableRuleSet,
    pub quality: &'a ThresholdConfig,
    pub embeddings: Option<&'a EmbeddingTable>,
}

/// The metric keys a selection produces, in record order. This is the CSV
/// header minus the leading `id` column and is independent of any document.
pub fn record_keys(selection: &MetricSelection, resources: &Resources) -> Vec<String> {
    let mut keys = Vec::new();
    for kind in selection.iter() {
        match kind {
            MetricKind::Descriptive => {
                keys.extend(
                    [
                        "n_tokens",
                        "n_unique_tokens",
                        "proportion_unique_tokens",
                        "n_characters",
                    ]
                    .map(str::to_string),
                );
                for group in ["token_length", "sentence_length", "syllables"] {
                    for stat in ["mean", "median", "std"] {
                        keys.push(format!("{group}_{stat}"));
                    }
                }
            }
            MetricKind::Readability => {
                keys.extend(
                    [
                        "gunning_fog",
                        "smog",
                        "flesch_reading_ease",
                        "flesch_kincaid_grade",
                        "automated_readability_index",
                        "coleman_liau_index",
                        "lix",
                        "rix",
                    ]
                    .map(str::to_string),
                );
            }
            MetricKind::Dependency => {
                keys.extend(
                    [
                        "dependency_distance_mean",
                        "dependency_distance_std",
                        "prop_adjacent_mean",
                        "prop_adjacent_std",
                    ]
                    .map(str::to_string),
                );
            }
            MetricKind::Pos => {
                keys.extend(UPOS_TAGS.iter().map(|tag| format!("pos_prop_{tag}")));
            }
            MetricKind::Coherence => {
                keys.push("first_order_coherence".to_string());
                keys.push("second_order_coherence".to_string());
            }
            MetricKind::Quality => {
                let empty = crate::quality::QualityValues {
                    symbol_to_word_ratio: resources
                        .quality
                        .symbols
                        .iter()
                        .map(|s| (s.name.clone(), None))
                        .collect(),
                    top_ngram_chr_fraction: (2..=4).map(|n| (n, 0.0)).collect(),
                    duplicate_ngram_chr_fraction: (5..=10).map(|n| (n, 0.0)).collect(),
                    ..Default::default()
                };
                keys.extend(empty.numeric_metrics().into_iter().map(|(key, _)| key));
                keys.extend(
                    resources
                        .quality
                        .probes
                        .iter()
                        .map(|probe| format!("contains_{probe}")),
                );
            }
        }
    }
    keys
}

fn summary_fields(prefix: &str, stats: Option<SummaryStats>) -> Vec<(String, MetricValue)> {
    vec![
        (
            format!("{prefix}_mean"),
            MetricValue::from_option(stats.map(|s| s.mean)),
        ),
        (
            format!("{prefix}_median"),
            MetricValue::from_option(stats.map(|s| s.median)),
        ),
        (
            format!("{prefix}_std"),
            MetricValue::from_option(stats.map(|s| s.std)),
        ),
    ]
}

fn descriptive_fields(doc: &Document, resources: &Resources) -> Vec<(String, MetricValue)> {
    let stats = descriptive_stats(doc, resources.syllables);
    let mut fields = vec![
        ("n_tokens".to_string(), MetricValue::Int(stats.n_tokens as i64)),
        (
            "n_unique_tokens".to_string(),
            MetricValue::Int(stats.n_unique_tokens as i64),
        ),
        (
            "proportion_unique_tokens".to_string(),
            MetricValue::from_option(stats.proportion_unique_tokens),
        ),
        (
            "n_characters".to_string(),
            MetricValue::Int(stats.n_characters as i64),
        ),
    ];
    fields.extend(summary_fields("token_length", stats.token_length));
    fields.extend(summary_fields("sentence_length", stats.sentence_length));
    fields.extend(summary_fields("syllables", stats.syllables));
    fields
}

fn readability_fields(doc: &Document, resources: &Resources) -> Vec<(String, MetricValue)> {
    let scores = compute_readability(&readability_counts(doc, resources.syllables));
    vec![
        ("gunning_fog".into(), MetricValue::from_option(scores.gunning_fog)),
        ("smog".into(), MetricValue::from_option(scores.smog)),
        (
            "flesch_reading_ease".into(),
            MetricValue::from_option(scores.flesch_reading_ease),
        ),
        (
            "flesch_kincaid_grade".into(),
            MetricValue::from_option(scores.flesch_kincaid_grade),
        ),
        (
            "automated_readability_index".into(),
            MetricValue::from_option(scores.automated_readability_index),
        ),
        (
            "coleman_liau_index".into(),
            MetricValue::from_option(scores.coleman_liau_index),
        ),
        ("lix".into(), MetricValue::from_option(scores.lix)),
        ("rix".into(), MetricValue::from_option(scores.rix)),
    ]
}

fn dependency_fields(doc: &Document) -> Result<Vec<(String, MetricValue)>> {
    let stats = document_dependency_stats(doc)?;
    Ok(vec![
        (
            "dependency_distance_mean".into(),
            MetricValue::from_option(stats.dependency_distance_mean),
        ),
        (
            "dependency_distance_std".into(),
            MetricValue::from_option(stats.dependency_distance_std),
        ),
        (
            "prop_adjacent_mean".into(),
            MetricValue::from_option(stats.prop_adjacent_mean),
        ),
        (
            "prop_adjacent_std".into(),
            MetricValue::from_option(stats.prop_adjacent_std),
        ),
    ])
}

fn pos_fields(doc: &Document) -> Result<Vec<(String, MetricValue)>> {
    let proportions = pos_proportions(doc)?;
    Ok(UPOS_TAGS
        .iter()
        .map(|tag| {
            (
                format!("pos_prop_{tag}"),
                MetricValue::from_option(proportions.get(*tag).copied()),
            )
        })
        .collect())
}

fn coherence_fields(doc: &Document, table: &EmbeddingTable) -> Vec<(String, MetricValue)> {
    let scores = coherence(doc, table);
    vec![
        (
            "first_order_coherence".into(),
            MetricValue::from_option(scores.first_order),
        ),
        (
            "second_order_coherence".into(),
            MetricValue::from_option(scores.second_order),
        ),
    ]
}

fn quality_fields(doc: &Document, cfg: &ThresholdConfig) -> Vec<(String, MetricValue)> {
    let values = compute_quality_values(doc, cfg);
    let mut fields: Vec<(String, MetricValue)> = values
        .numeric_metrics()
        .into_iter()
        .map(|(key, value)| (key, MetricValue::from_option(value)))
        .collect();
    // counts render as integers, not floats
    fields[0].1 = MetricValue::Int(values.n_stop_words as i64);
    let doc_length_slot = fields
        .iter_mut()
        .find(|(key, _)| key == "doc_length")
        .expect("doc_length is always present");
    doc_length_slot.1 = MetricValue::Int(values.doc_length as i64);
    for (probe, verdict) in &values.contains {
        fields.push((format!("contains_{probe}"), MetricValue::Bool(*verdict)));
    }
    fields
}

fn null_fields(keys: impl IntoIterator<Item = String>) -> Vec<(String, MetricValue)> {
    keys.into_iter().map(|key| (key, MetricValue::Null)).collect()
}

fn extract_inner(
    doc: &Document,
    selection: &MetricSelection,
    resources: &Resources,
    lenient: bool,
) -> Result<(MetricsRecord, Vec<String>)> {
    let mut fields = Vec::new();
    let mut warnings = Vec::new();
    for kind in selection.iter() {
        match kind {
            MetricKind::Descriptive => fields.extend(descriptive_fields(doc, resources)),
            MetricKind::Readability => fields.extend(readability_fields(doc, resources)),
            MetricKind::Dependency => match dependency_fields(doc) {
                Ok(group) => fields.extend(group),
                Err(e) if lenient => {
                    warnings.push(format!("document {:?}: {e}; dependency metrics null", doc.id));
                    fields.extend(null_fields([
                        "dependency_distance_mean".to_string(),
                        "dependency_distance_std".to_string(),
                        "prop_adjacent_mean".to_string(),
                        "prop_adjacent_std".to_string(),
                    ]));
                }
                Err(e) => return Err(e),
            },
            MetricKind::Pos => match pos_fields(doc) {
                Ok(group) => fields.extend(group),
                Err(e) if lenient => {
                    warnings.push(format!("document {:?}: {e}; pos metrics null", doc.id));
                    fields.extend(null_fields(
                        UPOS_TAGS.iter().map(|tag| format!("pos_prop_{tag}")),
                    ));
                }
                Err(e) => return Err(e),
            },
            MetricKind::Coherence => {
                let table = resources.embeddings.ok_or_else(|| {
                    Error::Config("coherence metrics require an embedding table".into())
                })?;
                fields.extend(coherence_fields(doc, table));
            }
            MetricKind::Quality => fields.extend(quality_fields(doc, resources.quality)),
        }
    }
    Ok((
        MetricsRecord {
            id: doc.id.clone(),
            fields,
        },
        warnings,
    ))
}

/// Extracts the selected metrics for one document. Errors when the document
/// or resources cannot satisfy the selection (unannotated document with
/// dependency/pos selected, or coherence without an embedding table).
pub fn extract_metrics(
    doc: &Document,
    selection: &MetricSelection,
    resources: &Resources,
) -> Result<MetricsRecord> {
    extract_inner(doc, selection, resources, false).map(|(record, _)| record)
}

/// Like [`extract_metrics`], but a document lacking annotations yields null
/// fields plus a warning instead of an error. A missing embedding table is
/// still an error: that is a configuration problem, not a document problem.
pub fn extract_metrics_lenient(
    doc: &Document,
    selection: &MetricSelection,
    resources: &Resources,
) -> Result<(MetricsRecord, Vec<String>)> {
    extract_inner(doc, selection, resources, true)
}
