//! CoNLL-U reading: tab-separated 10-column token lines, blank lines between
//! sentences, `#` comment lines. Multiword-token ranges (ID "1-2") and empty
//! nodes (ID "1.1") are skipped. `# newdoc` comments split the stream into
//! documents; without them the whole stream is one document.
//!
//! Document text comes from `# text` comments when present (token offsets
//! aligned by forward search); otherwise it is reconstructed from FORM
//! columns and `SpaceAfter=No` annotations. A `# text` comment that cannot
//! be aligned with its FORMs falls back to reconstruction so that token
//! spans always slice back to the token text.

use std::io::BufRead;

use crate::doc::{Document, Sentence, Token};
use crate::error::{Error, Result};

/// The 17 Universal POS tags, in lexicographic order.
pub const UPOS_TAGS: [&str; 17] = [
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM", "PART", "PRON", "PROPN",
    "PUNCT", "SCONJ", "SYM", "VERB", "X",
];

struct PendingToken {
    form: String,
    upos: Option<String>,
    head: Option<usize>,
    deprel: Option<String>,
    space_after: bool,
    line: usize,
}

#[derive(Default)]
struct DocBuilder {
    id: Option<String>,
    text: String,
    tokens: Vec<Token>,
    sentences: Vec<Sentence>,
    /// SpaceAfter of the last token of the previous sentence; controls the
    /// separator before the next sentence.
    trailing_space: bool,
    /// Set once a `# newdoc` opened this document explicitly.
    explicit: bool,
}

impl DocBuilder {
    fn has_content(&self) -> bool {
        self.explicit || !self.sentences.is_empty()
    }

    fn push_sentence(&mut self, tokens: Vec<PendingToken>, comment_text: Option<String>) {
        if tokens.is_empty() {
            return;
        }
        let (sentence_text, spans) = layout_sentence(&tokens, comment_text);
        if !self.text.is_empty() && self.trailing_space {
            self.text.push(' ');
        }
        let base = self.text.len();
        self.text.push_str(&sentence_text);
        self.trailing_space = tokens.last().map_or(true, |t| t.space_after);

        let token_start = self.tokens.len();
        for (pending, (start, end)) in tokens.into_iter().zip(spans) {
            self.tokens.push(Token {
                text: pending.form,
                start: base + start,
                end: base + end,
                upos: pending.upos,
                head: pending.head,
                deprel: pending.deprel,
            });
        }
        self.sentences.push(Sentence {
            start: token_start,
            end: self.tokens.len(),
        });
    }

    fn finish(self, index: usize, lang: &str) -> Document {
        Document {
            id: self.id.unwrap_or_else(|| index.to_string()),
            text: self.text,
            tokens: self.tokens,
            sentences: self.sentences,
            lang: lang.to_string(),
        }
    }
}

/// Sentence text and relative token spans, from the `# text` comment when it
/// aligns with the FORMs, otherwise reconstructed.
fn layout_sentence(
    tokens: &[PendingToken],
    comment_text: Option<String>,
) -> (String, Vec<(usize, usize)>) {
    if let Some(text) = comment_text {
        if let Some(spans) = align_forms(&text, tokens) {
            return (text, spans);
        }
    }
    let mut text = String::new();
    let mut spans = Vec::with_capacity(tokens.len());
    for (i, token) in tokens.iter().enumerate() {
        let start = text.len();
        text.push_str(&token.form);
        spans.push((start, text.len()));
        if token.space_after && i + 1 < tokens.len() {
            text.push(' ');
        }
    }
    (text, spans)
}

fn align_forms(text: &str, tokens: &[PendingToken]) -> Option<Vec<(usize, usize)>> {
    let mut spans = Vec::with_capacity(tokens.len());
    let mut cursor = 0usize;
    for token in tokens {
        while let Some(c) = text[cursor..].chars().next() {
            if c.is_whitespace() {
                cursor += c.len_utf8();
            } else {
                break;
            }
        }
        if !text[cursor..].starts_with(token.form.as_str()) {
            return None;
        }
        spans.push((cursor, cursor + token.form.len()));
        cursor += token.form.len();
    }
    Some(spans)
}

fn optional(field: &str) -> Option<String> {
    (field != "_").then(|| field.to_string())
}

fn parse_token_line(line: &str, line_no: usize, expected_id: usize) -> Result<Option<PendingToken>> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 10 {
        return Err(Error::parse(
            line_no,
            format!("expected 10 tab-separated columns, found {}", fields.len()),
        ));
    }
    let id_field = fields[0];
    // Multiword-token ranges ("1-2") and empty nodes ("1.1") carry no basic
    // dependency and are skipped.
    if id_field.contains('-') || id_field.contains('.') {
        return Ok(None);
    }
    let id: usize = id_field
        .parse()
        .map_err(|_| Error::parse(line_no, format!("token ID must be an integer, got {id_field:?}")))?;
    if id != expected_id {
        return Err(Error::parse(
            line_no,
            format!("token ID {id} out of order, expected {expected_id}"),
        ));
    }
    let upos = optional(fields[3]);
    if let Some(tag) = upos.as_deref() {
        if !UPOS_TAGS.contains(&tag) {
            return Err(Error::parse(line_no, format!("invalid UPOS tag {tag:?}")));
        }
    }
    let head = match fields[6] {
        "_" => None,
        raw => Some(raw.parse::<usize>().map_err(|_| {
            Error::parse(line_no, format!("HEAD must be an integer, got {raw:?}"))
        })?),
    };
    let space_after = !fields[9].split('|').any(|attr| attr == "SpaceAfter=No");
    Ok(Some(PendingToken {
        form: fields[1].to_string(),
        upos,
        head,
        deprel: optional(fields[7]),
        space_after,
        line: line_no,
    }))
}

fn check_heads(tokens: &[PendingToken]) -> Result<()> {
    let len = tokens.len();
    for (i, token) in tokens.iter().enumerate() {
        if let Some(head) = token.head {
            if head > len {
                return Err(Error::parse(
                    token.line,
                    format!("HEAD {head} out of range for a {len}-token sentence"),
                ));
            }
            if head == i + 1 {
                return Err(Error::parse(token.line, "token cannot head itself"));
            }
        }
    }
    Ok(())
}

/// Parses a CoNLL-U stream into documents. Documents without a
/// `# newdoc id = ...` comment get 1-based sequence numbers as ids; `lang`
/// is applied to every document.
pub fn parse_conllu<R: BufRead>(reader: R, lang: &str) -> Result<Vec<Document>> {
    let mut documents = Vec::new();
    let mut builder = DocBuilder::default();
    let mut pending_tokens: Vec<PendingToken> = Vec::new();
    let mut pending_text: Option<String> = None;

    let flush_sentence = |builder: &mut DocBuilder,
                              tokens: &mut Vec<PendingToken>,
                              text: &mut Option<String>|
     -> Result<()> {
        if !tokens.is_empty() {
            check_heads(tokens)?;
            builder.push_sentence(std::mem::take(tokens), text.take());
        }
        *text = None;
        Ok(())
    };

    for (index, line) in reader.lines().enumerate() {
        let line_no = index + 1;
        let line = line?;
        if line.trim().is_empty() {
            flush_sentence(&mut builder, &mut pending_tokens, &mut pending_text)?;
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if comment == "newdoc" || comment.starts_with("newdoc ") {
                flush_sentence(&mut builder, &mut pending_tokens, &mut pending_text)?;
                if builder.has_content() {
                    let done = std::mem::take(&mut builder);
                    documents.push(done.finish(documents.len() + 1, lang));
                }
                builder.explicit = true;
                builder.id = comment
                    .strip_prefix("newdoc")
                    .and_then(|rest| rest.trim().strip_prefix("id"))
                    .and_then(|rest| rest.trim().strip_prefix('='))
                    .map(|id| id.trim().to_string());
            } else if let Some(rest) = comment.strip_prefix("text") {
                if let Some(value) = rest.trim_start().strip_prefix('=') {
                    pending_text = Some(value.strip_prefix(' ').unwrap_or(value).to_string());
                }
            }
            continue;
        }
        if let Some(token) = parse_token_line(&line, line_no, pending_tokens.len() + 1)? {
            pending_tokens.push(token);
        }
    }
    flush_sentence(&mut builder, &mut pending_tokens, &mut pending_text)?;
    if builder.has_content() {
        let done = std::mem::take(&mut builder);
        documents.push(done.finish(documents.len() + 1, lang));
    }
    Ok(documents)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIMPLE: &str = "\
# text = The dog barks.
1\tThe\tthe\tDET\t_\t_\t2\tdet\t_\t_
2\tdog\tdog\tNOUN\t_\t_\t3\tnsubj\t_\t_
3\tbarks\tbark\tVERB\t_\t_\t0\troot\t_\tSpaceAfter=No
4\t.\t.\tPUNCT\t_\t_\t3\tpunct\t_\t_
";

    fn parse(input: &str) -> Vec<Document> {
        parse_conllu(input.as_bytes(), "en").unwrap()
    }

    #[test]
    fn simple_sentence() {
        let docs = parse(SIMPLE);
        assert_eq!(docs.len(), 1);
        let doc = &docs[0];
        assert_eq!(doc.sentences.len(), 1);
        assert_eq!(doc.tokens.len(), 4);
        assert!(doc.has_syntax());
        assert_eq!(doc.text, "The dog barks.");
        assert_eq!(doc.tokens[2].head, Some(0));
        assert_eq!(doc.tokens[0].upos.as_deref(), Some("DET"));
        assert_eq!(doc.tokens[0].deprel.as_deref(), Some("det"));
        for token in &doc.tokens {
            assert_eq!(&doc.text[token.start..token.end], token.text);
        }
    }

    #[test]
    fn empty_stream() {
        assert!(parse("").is_empty());
    }

    #[test]
    fn wrong_column_count_is_an_error() {
        let input = "1\tThe\tthe\tDET\t_\t_\t2\tdet\t_\n";
        let err = parse_conllu(input.as_bytes(), "en").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn non_integer_head_is_an_error() {
        let input = "1\tThe\tthe\tDET\t_\t_\tx\tdet\t_\t_\n";
        let err = parse_conllu(input.as_bytes(), "en").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn head_out_of_range_is_an_error() {
        let input = "1\tHi\thi\tINTJ\t_\t_\t9\troot\t_\t_\n";
        assert!(parse_conllu(input.as_bytes(), "en").is_err());
    }

    #[test]
    fn reconstructs_text_without_comment() {
        let input = "\
1\tHello\thello\tINTJ\t_\t_\t0\troot\t_\tSpaceAfter=No
2\t,\t,\tPUNCT\t_\t_\t1\tpunct\t_\t_
3\tworld\tworld\tNOUN\t_\t_\t1\tvocative\t_\t_
";
        let docs = parse(input);
        assert_eq!(docs[0].text, "Hello, world");
    }

    #[test]
    fn skips_multiword_ranges_and_empty_nodes() {
        let input = "\
1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_
1\tdo\tdo\tAUX\t_\t_\t0\troot\t_\t_
2\tn't\tnot\tPART\t_\t_\t1\tadvmod\t_\t_
2.1\telided\t_\t_\t_\t_\t_\t_\t_\t_
";
        let docs = parse(input);
        assert_eq!(docs[0].tokens.len(), 2);
        assert_eq!(docs[0].tokens[1].text, "n't");
    }

    #[test]
    fn newdoc_splits_documents() {
        let input = "\
# newdoc id = alpha
1\tHi\thi\tINTJ\t_\t_\t0\troot\t_\t_

# newdoc id = beta
1\tBye\tbye\tINTJ\t_\t_\t0\troot\t_\t_
";
        let docs = parse(input);
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].id, "alpha");
        assert_eq!(docs[1].id, "beta");
    }

    #[test]
    fn sequential_ids_without_newdoc_markers() {
        let docs = parse(SIMPLE);
        assert_eq!(docs[0].id, "1");
    }

    #[test]
    fn multiple_sentences_share_document_text() {
        let input = "\
# text = One two.
1\tOne\tone\tNUM\t_\t_\t0\troot\t_\t_
2\ttwo\ttwo\tNUM\t_\t_\t1\tnummod\t_\tSpaceAfter=No
3\t.\t.\tPUNCT\t_\t_\t1\tpunct\t_\t_

# text = Three.
1\tThree\tthree\tNUM\t_\t_\t0\troot\t_\tSpaceAfter=No
2\t.\t.\tPUNCT\t_\t_\t1\tpunct\t_\t_
";
        let docs = parse(input);
        let doc = &docs[0];
        assert_eq!(doc.sentences.len(), 2);
        assert_eq!(doc.text, "One two. Three.");
        for token in &doc.tokens {
            assert_eq!(&doc.text[token.start..token.end], token.text);
        }
    }

    #[test]
    fn underscore_annotations_leave_syntax_missing() {
        let input = "1\tHi\t_\t_\t_\t_\t_\t_\t_\t_\n";
        let docs = parse(input);
        assert!(!docs[0].has_syntax());
        assert_eq!(docs[0].tokens[0].upos, None);
        assert_eq!(docs[0].tokens[0].head, None);
    }

    #[test]
    fn invalid_upos_rejected() {
        let input = "1\tHi\thi\tFOO\t_\t_\t0\troot\t_\t_\n";
        assert!(parse_conllu(input.as_bytes(), "en").is_err());
    }

    #[test]
    fn misaligned_text_comment_falls_back_to_forms() {
        let input = "\
# text = Completely different words
1\tHi\thi\tINTJ\t_\t_\t0\troot\t_\t_
";
        let docs = parse(input);
        assert_eq!(docs[0].text, "Hi");
    }
}
