//! Descriptive statistics over a document's word tokens.

use std::collections::HashSet;

use crate::doc::{Document, Token};
use crate::syllable::{count_syllables_lossy, SyllableRuleSet};

/// Mean, median, and population standard deviation of a set of observations.
///
/// The standard deviation uses denominator N (it describes the document
/// itself, not a sample estimate). The median of an even-sized set is the
/// mean of the two middle values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub mean: f64,
    pub median: f64,
    pub std: f64,
}

impl SummaryStats {
    /// `None` for an empty slice.
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mid = sorted.len() / 2;
        let median = if sorted.len() % 2 == 1 {
            sorted[mid]
        } else {
            (sorted[mid - 1] + sorted[mid]) / 2.0
        };
        Some(SummaryStats {
            mean,
            median,
            std: variance.sqrt(),
        })
    }
}

/// Token, character, and uniqueness counts plus distributional summaries.
/// All counts run over word tokens only; punctuation tokens are excluded.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptiveStats {
    /// Number of word tokens.
    pub n_tokens: usize,
    /// Number of distinct lowercased word forms.
    pub n_unique_tokens: usize,
    /// Total characters over word tokens (punctuation tokens and whitespace
    /// do not contribute).
    pub n_characters: usize,
    pub proportion_unique_tokens: Option<f64>,
    /// Characters per word.
    pub token_length: Option<SummaryStats>,
    /// Word tokens per sentence.
    pub sentence_length: Option<SummaryStats>,
    /// Syllables per word.
    pub syllables: Option<SummaryStats>,
}

/// Computes descriptive statistics for a document. Summary fields are `None`
/// when the underlying observation set is empty.
pub fn descriptive_stats(doc: &Document, rules: &SyllableRuleSet) -> DescriptiveStats {
    let words: Vec<&Token> = doc.words().collect();
    let n_tokens = words.len();
    let unique: HashSet<String> = words.iter().map(|t| t.text.to_lowercase()).collect();
    let n_unique_tokens = unique.len();

    let token_lengths: Vec<f64> = words.iter().map(|t| t.char_len() as f64).collect();
    let n_characters: usize = words.iter().map(|t| t.char_len()).sum();
    let sentence_lengths: Vec<f64> = doc
        .sentences
        .iter()
        .map(|s| doc.sentence_tokens(s).iter().filter(|t| t.is_word()).count() as f64)
        .collect();
    let syllable_counts: Vec<f64> = words
        .iter()
        .map(|t| count_syllables_lossy(&t.text, rules) as f64)
        .collect();

    DescriptiveStats {
        n_tokens,
        n_unique_tokens,
        n_characters,
        proportion_unique_tokens: (n_tokens > 0)
            .then(|| n_unique_tokens as f64 / n_tokens as f64),
        token_length: SummaryStats::from_values(&token_lengths),
        sentence_length: SummaryStats::from_values(&sentence_lengths),
        syllables: SummaryStats::from_values(&syllable_counts),
    }
}
