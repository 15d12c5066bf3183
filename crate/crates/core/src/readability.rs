//! The eight classic readability indices.
//!
//! With `W` words, `S` sentences, `C` alphanumeric characters, `Y` syllables,
//! `H` hard words (three or more syllables), and `L` long words (more than
//! six alphanumeric characters):
//!
//! - Gunning fog: `0.4 * (W/S + 100*H/W)`
//! - SMOG: `1.043 * sqrt(H * 30/S) + 3.1291`
//! - Flesch reading ease: `206.835 - 1.015 * W/S - 84.6 * Y/W`
//! - Flesch-Kincaid grade: `0.39 * W/S + 11.8 * Y/W - 15.59`
//! - Automated readability index: `4.71 * C/W + 0.5 * W/S - 21.43`
//! - Coleman-Liau index: `0.0588 * 100*C/W - 0.296 * 100*S/W - 15.8`
//! - Lix: `W/S + 100*L/W`
//! - Rix: `L/S`
//!
//! SMOG was designed for samples of 30+ sentences; it is still computed for
//! shorter documents rather than silently refused.

use crate::doc::Document;
use crate::syllable::{count_syllables_lossy, SyllableRuleSet};

/// Aggregate counts feeding the readability formulas, taken over word
/// tokens. Characters count alphanumerics only, so hyphens and apostrophes
/// inside a word do not contribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReadabilityCounts {
    pub n_words: usize,
    pub n_sentences: usize,
    pub n_characters: usize,
    pub n_syllables: usize,
    /// Words with three or more syllables.
    pub n_hard_words: usize,
    /// Words with more than six alphanumeric characters.
    pub n_long_words: usize,
}

/// The computed indices; all `None` when the document has no words or no
/// sentences.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReadabilityScores {
    pub gunning_fog: Option<f64>,
    pub smog: Option<f64>,
    pub flesch_reading_ease: Option<f64>,
    pub flesch_kincaid_grade: Option<f64>,
    pub automated_readability_index: Option<f64>,
    pub coleman_liau_index: Option<f64>,
    pub lix: Option<f64>,
    pub rix: Option<f64>,
}

/// Aggregates the counts the indices consume.
pub fn readability_counts(doc: &Document, rules: &SyllableRuleSet) -> ReadabilityCounts {
    let mut counts = ReadabilityCounts {
        n_sentences: doc.sentences.len(),
        ..Default::default()
    };
    for token in doc.words() {
        counts.n_words += 1;
        counts.n_characters += token.alnum_len();
        let syllables = count_syllables_lossy(&token.text, rules);
        counts.n_syllables += syllables;
        if syllables >= 3 {
            counts.n_hard_words += 1;
        }
        if token.alnum_len() > 6 {
            counts.n_long_words += 1;
        }
    }
    counts
}

/// Applies the formulas above.
pub fn compute_readability(counts: &ReadabilityCounts) -> ReadabilityScores {
    if counts.n_words == 0 || counts.n_sentences == 0 {
        return ReadabilityScores::default();
    }
    let w = counts.n_words as f64;
    let s = counts.n_sentences as f64;
    let c = counts.n_characters as f64;
    let y = counts.n_syllables as f64;
    let h = counts.n_hard_words as f64;
    let l = counts.n_long_words as f64;
    ReadabilityScores {
        gunning_fog: Some(0.4 * (w / s + 100.0 * h / w)),
        smog: Some(1.043 * (h * 30.0 / s).sqrt() + 3.1291),
        flesch_reading_ease: Some(206.835 - 1.015 * (w / s) - 84.6 * (y / w)),
        flesch_kincaid_grade: Some(0.39 * (w / s) + 11.8 * (y / w) - 15.59),
        automated_readability_index: Some(4.71 * (c / w) + 0.5 * (w / s) - 21.43),
        coleman_liau_index: Some(0.0588 * (100.0 * c / w) - 0.296 * (100.0 * s / w) - 15.8),
        lix: Some(w / s + 100.0 * l / w),
        rix: Some(l / s),
    }
}
