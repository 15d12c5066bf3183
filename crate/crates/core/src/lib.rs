#![forbid(unsafe_code)]
//! Document-level text metrics: descriptive statistics, readability indices,
//! dependency-distance and part-of-speech statistics, embedding-based
//! coherence, and corpus-quality/repetition heuristics with threshold-based
//! filtering.
//!
//! Documents are built from raw text by a deterministic rule-based tokenizer
//! and sentence segmenter ([`build_document`]), or ingested from CoNLL-U
//! ([`conllu::parse_conllu`]) when syntactic metrics are needed. All metric
//! computations are pure functions; documents and resources (embedding
//! tables, threshold configurations, stop lists) are immutable after
//! construction and safe to share across threads.

pub mod coherence;
pub mod conllu;
pub mod descriptive;
pub mod doc;
pub mod error;
pub mod extract;
pub mod io;
pub mod quality;
pub mod readability;
pub mod stopwords;
pub mod syllable;
pub mod syntax;

pub use doc::{build_document, segment_sentences, tokenize, Document, Sentence, Token};
pub use error::{Error, Result};
pub use extract::{
    extract_metrics, extract_metrics_lenient, record_keys, MetricKind, MetricSelection,
    MetricValue, MetricsRecord, Resources,
};
