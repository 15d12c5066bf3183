//! Dependency-distance and part-of-speech statistics for annotated documents.
//!
//! Dependency distance is the absolute difference between a token's 1-based
//! position in its sentence and its head's position; root tokens contribute
//! distance 0 and stay in the denominator. Punctuation tokens participate:
//! they carry heads and a PUNCT tag in Universal Dependencies annotation.

use std::collections::BTreeMap;

use crate::descriptive::SummaryStats;
use crate::doc::{Document, Sentence};
use crate::error::{Error, Result};

/// Per-sentence dependency-distance summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SentenceDependencyStats {
    /// Mean distance over all tokens of the sentence.
    pub mean_distance: f64,
    /// Fraction of tokens whose distance is exactly 1.
    pub prop_adjacent: f64,
}

/// Document-level aggregation: mean and population standard deviation of the
/// per-sentence values. All `None` when the document has no sentences.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DocumentDependencyStats {
    pub dependency_distance_mean: Option<f64>,
    pub dependency_distance_std: Option<f64>,
    pub prop_adjacent_mean: Option<f64>,
    pub prop_adjacent_std: Option<f64>,
}

/// Proportion of each UPOS tag over all tokens; absent tags are omitted.
/// Values sum to 1 for a non-empty document.
pub type PosProportions = BTreeMap<String, f64>;

/// Computes dependency statistics for one sentence. Errors when any token of
/// the sentence lacks a head annotation.
pub fn sentence_dependency_stats(
    doc: &Document,
    sentence: &Sentence,
) -> Result<SentenceDependencyStats> {
    let tokens = doc.sentence_tokens(sentence);
    let mut total = 0usize;
    let mut adjacent = 0usize;
    for (i, token) in tokens.iter().enumerate() {
        let head = token.head.ok_or_else(|| Error::RequiresSyntax {
            doc_id: doc.id.clone(),
            metric: "dependency_distance",
        })?;
        let distance = if head == 0 { 0 } else { (i + 1).abs_diff(head) };
        total += distance;
        if distance == 1 {
            adjacent += 1;
        }
    }
    let n = tokens.len() as f64;
    Ok(SentenceDependencyStats {
        mean_distance: total as f64 / n,
        prop_adjacent: adjacent as f64 / n,
    })
}

/// Aggregates per-sentence dependency statistics over the whole document.
pub fn document_dependency_stats(doc: &Document) -> Result<DocumentDependencyStats> {
    let mut mean_distances = Vec::with_capacity(doc.sentences.len());
    let mut adjacent_props = Vec::with_capacity(doc.sentences.len());
    for sentence in &doc.sentences {
        let stats = sentence_dependency_stats(doc, sentence)?;
        mean_distances.push(stats.mean_distance);
        adjacent_props.push(stats.prop_adjacent);
    }
    let distance = SummaryStats::from_values(&mean_distances);
    let adjacent = SummaryStats::from_values(&adjacent_props);
    Ok(DocumentDependencyStats {
        dependency_distance_mean: distance.map(|s| s.mean),
        dependency_distance_std: distance.map(|s| s.std),
        prop_adjacent_mean: adjacent.map(|s| s.mean),
        prop_adjacent_std: adjacent.map(|s| s.std),
    })
}

/// Counts every token's UPOS tag (punctuation included) and normalizes by
/// the total token count. Errors when any token lacks a tag; an empty
/// document yields an empty map.
pub fn pos_proportions(doc: &Document) -> Result<PosProportions> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for token in &doc.tokens {
        let tag = token.upos.as_deref().ok_or_else(|| Error::RequiresSyntax {
            doc_id: doc.id.clone(),
            metric: "pos_proportions",
        })?;
        *counts.entry(tag.to_string()).or_insert(0) += 1;
    }
    let total = doc.tokens.len() as f64;
    Ok(counts
        .into_iter()
        .map(|(tag, count)| (tag, count as f64 / total))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doc::{build_document, Token};

    /// One-sentence document with the given (form, upos, head) triples.
    pub(crate) fn annotated(triples: &[(&str, &str, usize)]) -> Document {
        let mut text = String::new();
        let mut tokens = Vec::new();
        for (i, (form, upos, head)) in triples.iter().enumerate() {
            if i > 0 {
                text.push(' ');
            }
            let start = text.len();
            text.push_str(form);
            tokens.push(Token {
                text: form.to_string(),
                start,
                end: text.len(),
                upos: Some(upos.to_string()),
                head: Some(*head),
                deprel: Some("dep".to_string()),
            });
        }
        let n = tokens.len();
        Document {
            id: "t".to_string(),
            text,
            tokens,
            sentences: vec![Sentence { start: 0, end: n }],
            lang: "en".to_string(),
        }
    }

    #[test]
    fn simple_sentence() {
        let doc = annotated(&[("The", "DET", 2), ("dog", "NOUN", 3), ("barks", "VERB", 0)]);
        let stats = sentence_dependency_stats(&doc, &doc.sentences[0]).unwrap();
        assert!((stats.mean_distance - 2.0 / 3.0).abs() < 1e-12);
        assert!((stats.prop_adjacent - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn single_root_token() {
        let doc = annotated(&[("Go", "VERB", 0)]);
        let stats = sentence_dependency_stats(&doc, &doc.sentences[0]).unwrap();
        assert_eq!(stats.mean_distance, 0.0);
        assert_eq!(stats.prop_adjacent, 0.0);
    }

    #[test]
    fn predecessor_chain() {
        let doc = annotated(&[("a", "X", 0), ("b", "X", 1), ("c", "X", 2), ("d", "X", 3)]);
        let stats = sentence_dependency_stats(&doc, &doc.sentences[0]).unwrap();
        assert!((stats.mean_distance - 0.75).abs() < 1e-12);
        assert!((stats.prop_adjacent - 0.75).abs() < 1e-12);
    }

    #[test]
    fn document_aggregation_two_sentences() {
        // Sentence means 1.0 and 0.5 -> mean 0.75, population std 0.25.
        let mut doc = annotated(&[
            ("a", "X", 2),
            ("b", "X", 0),
            ("c", "X", 2),
            ("d", "X", 0),
        ]);
        doc.sentences = vec![Sentence { start: 0, end: 2 }, Sentence { start: 2, end: 4 }];
        let stats = document_dependency_stats(&doc).unwrap();
        assert!((stats.dependency_distance_mean.unwrap() - 0.75).abs() < 1e-12);
        assert!((stats.dependency_distance_std.unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn single_sentence_has_zero_std() {
        let doc = annotated(&[("The", "DET", 2), ("dog", "NOUN", 0)]);
        let stats = document_dependency_stats(&doc).unwrap();
        assert_eq!(stats.dependency_distance_std, Some(0.0));
        assert_eq!(
            stats.dependency_distance_mean,
            Some(sentence_dependency_stats(&doc, &doc.sentences[0]).unwrap().mean_distance)
        );
    }

    #[test]
    fn unannotated_document_errors() {
        let doc = build_document("d", "The dog barks.", "en");
        assert!(matches!(
            document_dependency_stats(&doc),
            Err(Error::RequiresSyntax { .. })
        ));
        assert!(matches!(
            pos_proportions(&doc),
            Err(Error::RequiresSyntax { .. })
        ));
    }

    #[test]
    fn empty_document_yields_nulls_and_empty_map() {
        let doc = build_document("d", "", "en");
        let stats = document_dependency_stats(&doc).unwrap();
        assert_eq!(stats, DocumentDependencyStats::default());
        assert!(pos_proportions(&doc).unwrap().is_empty());
    }

    #[test]
    fn pos_proportions_counts() {
        let doc = annotated(&[("The", "DET", 2), ("dog", "NOUN", 3), ("barks", "VERB", 0)]);
        let props = pos_proportions(&doc).unwrap();
        assert_eq!(props.len(), 3);
        for tag in ["DET", "NOUN", "VERB"] {
            assert!((props[tag] - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pos_proportions_single_tag() {
        let doc = annotated(&[("dog", "NOUN", 0), ("cat", "NOUN", 1)]);
        let props = pos_proportions(&doc).unwrap();
        assert_eq!(props.len(), 1);
        assert_eq!(props["NOUN"], 1.0);
    }
}
