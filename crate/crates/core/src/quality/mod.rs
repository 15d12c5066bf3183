//! Corpus-quality heuristics and repetition metrics.
//!
//! The heuristic signals (stop-word count, alphabetic ratio, line shape,
//! symbol ratios, probe strings) and the repetition family (duplicate
//! line/paragraph fractions, top and duplicate n-gram character fractions)
//! follow the Gopher and C4 pretraining-filter lineage. Character accounting
//! for the n-gram metrics counts token characters only, never inter-token
//! whitespace.

mod thresholds;

pub use thresholds::{apply_thresholds, Bound, QualityResult, SymbolSpec, ThresholdConfig};

use std::collections::{HashMap, HashSet};

use crate::doc::{Document, Token};

/// Bullet markers recognized at the start of a trimmed line.
const BULLETS: [char; 5] = ['-', '*', '\u{2022}', '\u{2023}', '\u{25E6}'];

/// Per-document quality signals. Ratio fields are `None` when their
/// denominator is zero. Repetition fields are left empty by
/// [`heuristic_quality`] and filled by [`compute_quality_values`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QualityValues {
    /// Word tokens whose lowercase form is in the stop list.
    pub n_stop_words: usize,
    /// Fraction of word tokens containing at least one alphabetic character.
    pub alpha_ratio: Option<f64>,
    /// Mean characters per word token.
    pub mean_word_length: Option<f64>,
    /// Word-token count.
    pub doc_length: usize,
    /// Fraction of non-empty lines whose trimmed text ends with "..." or a
    /// Unicode ellipsis.
    pub proportion_ellipsis_lines: Option<f64>,
    /// Fraction of non-empty lines whose trimmed text starts with a bullet
    /// marker.
    pub proportion_bullet_lines: Option<f64>,
    /// Symbol occurrences divided by `doc_length`, per configured symbol.
    pub symbol_to_word_ratio: Vec<(String, Option<f64>)>,
    /// Case-insensitive substring verdict per configured probe.
    pub contains: Vec<(String, bool)>,
    pub duplicate_line_fraction: Option<f64>,
    pub duplicate_paragraph_fraction: Option<f64>,
    pub duplicate_line_chr_fraction: Option<f64>,
    pub duplicate_paragraph_chr_fraction: Option<f64>,
    /// Share of word-token characters attributable to the most frequent
    /// n-gram, for n = 2, 3, 4.
    pub top_ngram_chr_fraction: Vec<(usize, f64)>,
    /// Share of word-token characters covered by n-grams occurring at least
    /// twice, for n = 5..=10.
    pub duplicate_ngram_chr_fraction: Vec<(usize, f64)>,
}

impl QualityValues {
    /// Numeric metrics under their flat names, in record order. Boolean
    /// probe verdicts live in `contains` and are not included.
    pub fn numeric_metrics(&self) -> Vec<(String, Option<f64>)> {
        let mut out = vec![
            ("n_stop_words".to_string(), Some(self.n_stop_words as f64)),
            ("alpha_ratio".to_string(), self.alpha_ratio),
            ("mean_word_length".to_string(), self.mean_word_length),
            ("doc_length".to_string(), Some(self.doc_length as f64)),
            (
                "proportion_ellipsis_lines".to_string(),
                self.proportion_ellipsis_lines,
            ),
            (
                "proportion_bullet_lines".to_string(),
                self.proportion_bullet_lines,
            ),
        ];
        for (symbol, ratio) in &self.symbol_to_word_ratio {
            out.push((format!("symbol_to_word_ratio_{symbol}"), *ratio));
        }
        out.push((
            "duplicate_line_fraction".to_string(),
            self.duplicate_line_fraction,
        ));
        out.push((
            "duplicate_paragraph_fraction".to_string(),
            self.duplicate_paragraph_fraction,
        ));
        out.push((
            "duplicate_line_chr_fraction".to_string(),
            self.duplicate_line_chr_fraction,
        ));
        out.push((
            "duplicate_paragraph_chr_fraction".to_string(),
            self.duplicate_paragraph_chr_fraction,
        ));
        for (n, fraction) in &self.top_ngram_chr_fraction {
            out.push((format!("top_ngram_chr_fraction_{n}"), Some(*fraction)));
        }
        for (n, fraction) in &self.duplicate_ngram_chr_fraction {
            out.push((format!("duplicate_ngram_chr_fraction_{n}"), Some(*fraction)));
        }
        out
    }
}

fn ratio(numerator: usize, denominator: usize) -> Option<f64> {
    (denominator > 0).then(|| numerator as f64 / denominator as f64)
}

/// Computes the heuristic signals only; repetition fields stay at their
/// empty defaults.
pub fn heuristic_quality(doc: &Document, cfg: &ThresholdConfig) -> QualityValues {
    let words: Vec<&Token> = doc.words().collect();
    let n_words = words.len();
    let n_stop_words = words
        .iter()
        .filter(|t| cfg.stop_words.contains(&t.text.to_lowercase()))
        .count();
    let n_alpha_words = words
        .iter()
        .filter(|t| t.text.chars().any(char::is_alphabetic))
        .count();
    let mean_word_length = (n_words > 0)
        .then(|| words.iter().map(|t| t.char_len()).sum::<usize>() as f64 / n_words as f64);

    let trimmed_lines: Vec<&str> = doc
        .text
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty())
        .collect();
    let n_lines = trimmed_lines.len();
    let n_ellipsis = trimmed_lines
        .iter()
        .filter(|line| line.ends_with("...") || line.ends_with('\u{2026}'))
        .count();
    let n_bullet = trimmed_lines
        .iter()
        .filter(|line| line.starts_with(BULLETS))
        .count();

    let symbol_to_word_ratio = cfg
        .symbols
        .iter()
        .map(|spec| {
            let occurrences: usize = spec
                .patterns
                .iter()
                .map(|pattern| doc.text.matches(pattern.as_str()).count())
                .sum();
            (spec.name.clone(), ratio(occurrences, n_words))
        })
        .collect();

    let lower_text = doc.text.to_lowercase();
    let contains = cfg
        .probes
        .iter()
        .map(|probe| (probe.clone(), lower_text.contains(&probe.to_lowercase())))
        .collect();

    QualityValues {
        n_stop_words,
        alpha_ratio: ratio(n_alpha_words, n_words),
        mean_word_length,
        doc_length: n_words,
        proportion_ellipsis_lines: ratio(n_ellipsis, n_lines),
        proportion_bullet_lines: ratio(n_bullet, n_lines),
        symbol_to_word_ratio,
        contains,
        ..Default::default()
    }
}

/// All quality signals for a document: heuristics plus the repetition
/// metrics at their standard n ranges (top n-grams 2..=4, duplicate n-grams
/// 5..=10).
pub fn compute_quality_values(doc: &Document, cfg: &ThresholdConfig) -> QualityValues {
    let mut values = heuristic_quality(doc, cfg);
    let (line_fraction, line_chr_fraction) = duplicate_line_fractions(doc);
    let (para_fraction, para_chr_fraction) = duplicate_paragraph_fractions(doc);
    values.duplicate_line_fraction = line_fraction;
    values.duplicate_line_chr_fraction = line_chr_fraction;
    values.duplicate_paragraph_fraction = para_fraction;
    values.duplicate_paragraph_chr_fraction = para_chr_fraction;
    values.top_ngram_chr_fraction = (2..=4)
        .map(|n| (n, top_ngram_chr_fraction(doc, n)))
        .collect();
    values.duplicate_ngram_chr_fraction = (5..=10)
        .map(|n| (n, duplicate_ngram_chr_fraction(doc, n)))
        .collect();
    values
}

/// Duplicate and duplicate-character fractions over keys, where a key is a
/// duplicate if it equals an earlier key.
fn duplicate_fractions<'a>(keys: impl Iterator<Item = &'a str>) -> (Option<f64>, Option<f64>) {
    let mut seen: HashSet<&str> = HashSet::new();
    let mut total = 0usize;
    let mut duplicates = 0usize;
    let mut total_chars = 0usize;
    let mut duplicate_chars = 0usize;
    for key in keys {
        let chars = key.chars().count();
        total += 1;
        total_chars += chars;
        if !seen.insert(key) {
            duplicates += 1;
            duplicate_chars += chars;
        }
    }
    (ratio(duplicates, total), ratio(duplicate_chars, total_chars))
}

/// Fraction of non-empty lines that duplicate an earlier line, and the
/// corresponding character fraction. Lines are compared after trimming
/// trailing whitespace. `None` when the document has no non-empty lines.
pub fn duplicate_line_fractions(doc: &Document) -> (Option<f64>, Option<f64>) {
    duplicate_fractions(
        doc.text
            .lines()
            .map(str::trim_end)
            .filter(|line| !line.is_empty()),
    )
}

/// Like [`duplicate_line_fractions`] but over paragraphs: maximal runs of
/// non-blank lines (a blank line is one that trims to empty).
pub fn duplicate_paragraph_fractions(doc: &Document) -> (Option<f64>, Option<f64>) {
    let paragraphs = split_paragraphs(&doc.text);
    duplicate_fractions(paragraphs.iter().map(|p| p.trim_end()))
}

fn split_paragraphs(text: &str) -> Vec<String> {
    let mut paragraphs = Vec::new();
    let mut current: Vec<&str> = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            if !current.is_empty() {
                paragraphs.push(current.join("\n"));
                current.clear();
            }
        } else {
            current.push(line);
        }
    }
    if !current.is_empty() {
        paragraphs.push(current.join("\n"));
    }
    paragraphs
}

/// Lowercased word forms interned to ids, with per-token character lengths.
fn word_ids_and_lens(doc: &Document) -> (Vec<u32>, Vec<usize>) {
    let mut intern: HashMap<String, u32> = HashMap::new();
    let mut ids = Vec::new();
    let mut lens = Vec::new();
    for token in doc.words() {
        let lower = token.text.to_lowercase();
        lens.push(lower.chars().count());
        let next = intern.len() as u32;
        let id = *intern.entry(lower).or_insert(next);
        ids.push(id);
    }
    (ids, lens)
}

/// Share of word-token characters attributable to the most frequent n-gram
/// of the lowercased word sequence (count times the n-gram's character
/// length over total characters, capped at 1). Ties break to the n-gram
/// occurring first; 0 when the document has fewer than n words.
pub fn top_ngram_chr_fraction(doc: &Document, n: usize) -> f64 {
    assert!(n >= 2, "n-gram order must be at least 2");
    let (ids, lens) = word_ids_and_lens(doc);
    if ids.len() < n {
        return 0.0;
    }
    let mut counts: HashMap<&[u32], usize> = HashMap::new();
    for window in ids.windows(n) {
        *counts.entry(window).or_insert(0) += 1;
    }
    let top_count = *counts.values().max().expect("at least one n-gram");
    let first_top = ids
        .windows(n)
        .position(|window| counts[window] == top_count)
        .expect("a window attains the maximum");
    let gram_chars: usize = lens[first_top..first_top + n].iter().sum();
    let total_chars: usize = lens.iter().sum();
    ((top_count * gram_chars) as f64 / total_chars as f64).min(1.0)
}

/// Share of word-token characters at positions covered by at least one
/// n-gram of the lowercased word sequence occurring two or more times
/// (overlapping occurrences allowed); 0 when the document has fewer than n
/// words.
pub fn duplicate_ngram_chr_fraction(doc: &Document, n: usize) -> f64 {
    assert!(n >= 2, "n-gram order must be at least 2");
    let (ids, lens) = word_ids_and_lens(doc);
    if ids.len() < n {
        return 0.0;
    }
    let mut counts: HashMap<&[u32], usize> = HashMap::new();
    for window in ids.windows(n) {
        *counts.entry(window).or_insert(0) += 1;
    }
    let mut covered = vec![false; ids.len()];
    for (start, window) in ids.windows(n).enumerate() {
        if counts[window] >= 2 {
            covered[start..start + n].iter_mut().for_each(|c| *c = true);
        }
    }
    let duplicate_chars: usize = covered
        .iter()
        .zip(&lens)
        .filter_map(|(covered, len)| covered.then_some(*len))
        .sum();
    let total_chars: usize = lens.iter().sum();
    duplicate_chars as f64 / total_chars as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doc::build_document;

    fn doc(text: &str) -> Document {
        build_document("d", text, "en")
    }

    #[test]
    fn alpha_ratio_counts_alphabetic_words() {
        let values = heuristic_quality(&doc("abc 123 a1"), &ThresholdConfig::default());
        assert!((values.alpha_ratio.unwrap() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn stop_words_on_fixture() {
        let values = heuristic_quality(&doc("The cat sat on the mat"), &ThresholdConfig::default());
        assert_eq!(values.n_stop_words, 3);
    }

    #[test]
    fn ellipsis_lines() {
        let values = heuristic_quality(&doc("Hi...\nok"), &ThresholdConfig::default());
        assert_eq!(values.proportion_ellipsis_lines, Some(0.5));
        let values = heuristic_quality(&doc("wait\u{2026}\nok\nfine"), &ThresholdConfig::default());
        assert!((values.proportion_ellipsis_lines.unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn bullet_lines() {
        let values = heuristic_quality(
            &doc("- one\n\u{2022} two\nplain\n  * indented"),
            &ThresholdConfig::default(),
        );
        assert_eq!(values.proportion_bullet_lines, Some(0.75));
    }

    #[test]
    fn contains_is_case_insensitive() {
        let values = heuristic_quality(&doc("Lorem Ipsum dolor"), &ThresholdConfig::default());
        let probes: Vec<(&str, bool)> = values
            .contains
            .iter()
            .map(|(p, b)| (p.as_str(), *b))
            .collect();
        assert_eq!(probes, [("lorem ipsum", true), ("{", false)]);
    }

    #[test]
    fn symbol_ratios() {
        let values = heuristic_quality(&doc("# one # two ..."), &ThresholdConfig::default());
        let by_name: std::collections::HashMap<&str, Option<f64>> = values
            .symbol_to_word_ratio
            .iter()
            .map(|(s, v)| (s.as_str(), *v))
            .collect();
        assert_eq!(by_name["#"], Some(0.5));
        assert_eq!(by_name["\u{2026}"], Some(0.25));
    }

    #[test]
    fn ratios_null_on_empty_document() {
        let values = compute_quality_values(&doc(""), &ThresholdConfig::default());
        assert_eq!(values.doc_length, 0);
        assert!(values.alpha_ratio.is_none());
        assert!(values.mean_word_length.is_none());
        assert!(values.proportion_ellipsis_lines.is_none());
        assert!(values.duplicate_line_fraction.is_none());
        for (_, ratio) in &values.symbol_to_word_ratio {
            assert!(ratio.is_none());
        }
        for (_, fraction) in &values.top_ngram_chr_fraction {
            assert_eq!(*fraction, 0.0);
        }
    }

    #[test]
    fn duplicate_lines_basic() {
        let (fraction, chr_fraction) = duplicate_line_fractions(&doc("a\na\nb"));
        assert!((fraction.unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert!((chr_fraction.unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn duplicate_lines_all_distinct() {
        let (fraction, chr_fraction) = duplicate_line_fractions(&doc("a\nb\nc"));
        assert_eq!(fraction, Some(0.0));
        assert_eq!(chr_fraction, Some(0.0));
    }

    #[test]
    fn duplicate_line_characters() {
        let (_, chr_fraction) = duplicate_line_fractions(&doc("xy\nxy\nz"));
        assert!((chr_fraction.unwrap() - 2.0 / 5.0).abs() < 1e-12);
    }

    #[test]
    fn duplicate_lines_ignore_trailing_whitespace_and_blanks() {
        let (fraction, _) = duplicate_line_fractions(&doc("a  \na\n\n   \nb"));
        assert!((fraction.unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn duplicate_paragraphs() {
        let text = "para one\nsecond line\n\npara two\n\npara one\nsecond line";
        let (fraction, chr_fraction) = duplicate_paragraph_fractions(&doc(text));
        assert!((fraction.unwrap() - 1.0 / 3.0).abs() < 1e-12);
        let dup_chars = "para one\nsecond line".chars().count() as f64;
        let total_chars = dup_chars * 2.0 + "para two".chars().count() as f64;
        assert!((chr_fraction.unwrap() - dup_chars / total_chars).abs() < 1e-12);
    }

    #[test]
    fn self_concatenation_duplicates_paragraphs() {
        let base = "One paragraph here.\n\nAnother paragraph.";
        let doubled = format!("{base}\n\n{base}");
        let (fraction, _) = duplicate_paragraph_fractions(&doc(&doubled));
        assert!(fraction.unwrap() >= 0.5);
    }

    #[test]
    fn top_ngram_fixture() {
        let fraction = top_ngram_chr_fraction(&doc("a b a b c"), 2);
        assert!((fraction - 0.8).abs() < 1e-12);
    }

    #[test]
    fn top_ngram_short_document() {
        assert_eq!(top_ngram_chr_fraction(&doc("a b"), 3), 0.0);
    }

    #[test]
    fn top_ngram_capped_at_one() {
        assert_eq!(top_ngram_chr_fraction(&doc("x x x"), 2), 1.0);
    }

    #[test]
    fn duplicate_ngram_full_repeat() {
        let fraction = duplicate_ngram_chr_fraction(&doc("a b c d e a b c d e"), 5);
        assert_eq!(fraction, 1.0);
    }

    #[test]
    fn duplicate_ngram_all_distinct() {
        let fraction = duplicate_ngram_chr_fraction(&doc("a b c d e f g h i j"), 5);
        assert_eq!(fraction, 0.0);
    }

    #[test]
    fn duplicate_ngram_partial_coverage() {
        let fraction = duplicate_ngram_chr_fraction(&doc("a b c d e f a b c d e g"), 5);
        assert!((fraction - 10.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn ngram_matching_is_case_insensitive() {
        let fraction = duplicate_ngram_chr_fraction(&doc("A b C d E a B c D e"), 5);
        assert_eq!(fraction, 1.0);
    }
}
