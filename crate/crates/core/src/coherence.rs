//! First- and second-order semantic coherence from word embeddings.
//!
//! A sentence embeds as the unweighted mean of its in-vocabulary word
//! vectors. N-th order coherence is the mean cosine similarity between
//! sentence embeddings n positions apart. Sentences with no in-vocabulary
//! words are skipped before pairing, and pairs with a zero-norm operand are
//! skipped from the mean: their cosine is undefined, not "incoherent".

use std::collections::HashMap;
use std::io::BufRead;

use crate::doc::{Document, Sentence};
use crate::error::{Error, Result};

/// Map from word form to fixed-dimension vector. Lookup tries the exact
/// form first, then the lowercased form.
#[derive(Debug, Clone, Default)]
pub struct EmbeddingTable {
    dimension: usize,
    entries: HashMap<String, Vec<f64>>,
}

impl EmbeddingTable {
    pub fn new(dimension: usize) -> Self {
        EmbeddingTable {
            dimension,
            entries: HashMap::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Inserts a vector, replacing any previous entry for the word.
    pub fn insert(&mut self, word: impl Into<String>, vector: Vec<f64>) -> Result<()> {
        if vector.len() != self.dimension {
            return Err(Error::Config(format!(
                "embedding dimension mismatch: expected {}, got {}",
                self.dimension,
                vector.len()
            )));
        }
        self.entries.insert(word.into(), vector);
        Ok(())
    }

    pub fn lookup(&self, word: &str) -> Option<&[f64]> {
        if let Some(v) = self.entries.get(word) {
            return Some(v.as_slice());
        }
        self.entries.get(&word.to_lowercase()).map(Vec::as_slice)
    }

    /// Scales every vector in place (test support for cosine invariance).
    pub fn scale(&mut self, factor: f64) {
        for vector in self.entries.values_mut() {
            for component in vector.iter_mut() {
                *component *= factor;
            }
        }
    }
}

/// Reads the plain-text embedding format: each non-empty line is a word
/// followed by its vector components, whitespace separated. An optional
/// first line of two bare integers ("N D", the word2vec text header) is
/// skipped, with D taken as the expected dimension. Later duplicate words
/// overwrite earlier ones.
pub fn load_embeddings<R: BufRead>(reader: R) -> Result<EmbeddingTable> {
    let mut dimension: Option<usize> = None;
    let mut entries = HashMap::new();
    let mut first_data_line = true;
    for (index, line) in reader.lines().enumerate() {
        let line_no = index + 1;
        let line = line?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if first_data_line && fields.len() == 2 {
            if let (Ok(_n), Ok(d)) = (fields[0].parse::<usize>(), fields[1].parse::<usize>()) {
                dimension = Some(d);
                first_data_line = false;
                continue;
            }
        }
        first_data_line = false;
        let word = fields[0];
        let mut vector = Vec::with_capacity(fields.len() - 1);
        for component in &fields[1..] {
            let value: f64 = component.parse().map_err(|_| {
                Error::parse(line_no, format!("non-numeric vector component {component:?}"))
            })?;
            vector.push(value);
        }
        match dimension {
            None => dimension = Some(vector.len()),
            Some(d) if d != vector.len() => {
                return Err(Error::parse(
                    line_no,
                    format!("inconsistent embedding dimension: expected {d}, got {}", vector.len()),
                ));
            }
            Some(_) => {}
        }
        entries.insert(word.to_string(), vector);
    }
    Ok(EmbeddingTable {
        dimension: dimension.unwrap_or(0),
        entries,
    })
}

/// Component-wise mean of the vectors of the sentence's word tokens found in
/// the table; `None` when no token matches.
pub fn sentence_embedding(
    doc: &Document,
    sentence: &Sentence,
    table: &EmbeddingTable,
) -> Option<Vec<f64>> {
    let mut sum = vec![0.0; table.dimension()];
    let mut found = 0usize;
    for token in doc.sentence_tokens(sentence).iter().filter(|t| t.is_word()) {
        if let Some(vector) = table.lookup(&token.text) {
            for (acc, component) in sum.iter_mut().zip(vector) {
                *acc += component;
            }
            found += 1;
        }
    }
    if found == 0 {
        return None;
    }
    for component in sum.iter_mut() {
        *component /= found as f64;
    }
    Some(sum)
}

/// First- and second-order coherence; `None` when no sentence pair at the
/// given offset has defined cosine similarity.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CoherenceScores {
    pub first_order: Option<f64>,
    pub second_order: Option<f64>,
}

/// Computes coherence over the document's sentence embeddings.
pub fn coherence(doc: &Document, table: &EmbeddingTable) -> CoherenceScores {
    let embeddings: Vec<Vec<f64>> = doc
        .sentences
        .iter()
        .filter_map(|s| sentence_embedding(doc, s, table))
        .collect();
    CoherenceScores {
        first_order: order_coherence(&embeddings, 1),
        second_order: order_coherence(&embeddings, 2),
    }
}

fn order_coherence(embeddings: &[Vec<f64>], order: usize) -> Option<f64> {
    if embeddings.len() <= order {
        return None;
    }
    let cosines: Vec<f64> = (0..embeddings.len() - order)
        .filter_map(|i| cosine(&embeddings[i], &embeddings[i + order]))
        .collect();
    if cosines.is_empty() {
        None
    } else {
        Some(cosines.iter().sum::<f64>() / cosines.len() as f64)
    }
}

/// Cosine similarity clamped to [-1, 1]; `None` when either operand has zero
/// norm.
fn cosine(a: &[f64], b: &[f64]) -> Option<f64> {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let norm_a = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let norm_b = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm_a == 0.0 || norm_b == 0.0 {
        return None;
    }
    Some((dot / (norm_a * norm_b)).clamp(-1.0, 1.0))
}
