//! Document model and rule-based construction from raw text.
//!
//! A [`Document`] owns its text plus a token and sentence structure. Raw
//! text goes through [`tokenize`] and [`segment_sentences`]; annotated input
//! comes from the CoNLL-U reader. Documents are immutable after construction
//! and safe to share across threads.

/// A token: a span of document text plus optional syntactic annotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// Exact surface form; equals the document text slice `start..end`.
    pub text: String,
    /// Byte offset of the first character (inclusive, always a UTF-8 boundary).
    pub start: usize,
    /// Byte offset one past the last character (exclusive, always a UTF-8 boundary).
    pub end: usize,
    /// Universal POS tag, when annotated.
    pub upos: Option<String>,
    /// 1-based index of the head token within the sentence; 0 marks the root.
    pub head: Option<usize>,
    /// Dependency relation label, when annotated.
    pub deprel: Option<String>,
}

impl Token {
    /// A token is a word if it contains at least one alphanumeric character.
    pub fn is_word(&self) -> bool {
        self.text.chars().any(char::is_alphanumeric)
    }

    /// Number of characters (not bytes) in the surface form.
    pub fn char_len(&self) -> usize {
        self.text.chars().count()
    }

    /// Number of alphanumeric characters in the surface form.
    pub fn alnum_len(&self) -> usize {
        self.text.chars().filter(|c| c.is_alphanumeric()).count()
    }
}

/// Half-open range of token indices forming one sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sentence {
    pub start: usize,
    pub end: usize,
}

impl Sentence {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// A document: text plus token and sentence structure, the unit all metrics
/// operate on.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub tokens: Vec<Token>,
    pub sentences: Vec<Sentence>,
    /// ISO language code, informational; defaults to "en".
    pub lang: String,
}

impl Document {
    /// True when the document is non-empty and every token carries both a
    /// POS tag and a head index. Documents built from raw text never have
    /// syntax.
    pub fn has_syntax(&self) -> bool {
        !self.tokens.is_empty()
            && self
                .tokens
                .iter()
                .all(|t| t.upos.is_some() && t.head.is_some())
    }

    pub fn sentence_tokens(&self, sentence: &Sentence) -> &[Token] {
        &self.tokens[sentence.start..sentence.end]
    }

    /// Word tokens: tokens containing at least one alphanumeric character.
    /// Punctuation stays in `tokens` but is excluded here.
    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.is_word())
    }
}

/// Characters that stay inside a word token when flanked by alphanumerics,
/// as in "state-of-the-art" or "don't".
const JOINERS: [char; 3] = ['\'', '\u{2019}', '-'];

/// Splits text into tokens. Maximal runs of alphanumeric characters (with
/// apostrophes and hyphens joining two alphanumerics) become word tokens;
/// every other non-whitespace character becomes a single-character token.
/// Empty input yields an empty sequence.
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (start, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        if c.is_alphanumeric() {
            while j < chars.len() {
                let cj = chars[j].1;
                if cj.is_alphanumeric() {
                    j += 1;
                } else if JOINERS.contains(&cj)
                    && chars.get(j + 1).is_some_and(|&(_, next)| next.is_alphanumeric())
                {
                    // joiner between two alphanumerics stays inside the word
                    j += 1;
                } else {
                    break;
                }
            }
        }
        let end = chars.get(j).map_or(text.len(), |&(off, _)| off);
        tokens.push(Token {
            text: text[start..end].to_string(),
            start,
            end,
            upos: None,
            head: None,
            deprel: None,
        });
        i = j;
    }
    tokens
}

fn is_terminator(token: &Token) -> bool {
    matches!(token.text.as_str(), "." | "!" | "?")
}

fn starts_lowercase(token: &Token) -> bool {
    token.text.chars().next().is_some_and(char::is_lowercase)
}

/// Groups tokens into sentences. A run of ".", "!" or "?" tokens closes the
/// sentence unless the next word token starts with a lowercase letter
/// (covers abbreviations like "e.g. apples"). A trailing unterminated
/// fragment forms a final sentence; trailing punctuation with no word after
/// it attaches to the last sentence.
pub fn segment_sentences(tokens: &[Token]) -> Vec<Sentence> {
    let mut sentences = Vec::new();
    let mut sent_start = 0;
    let mut i = 0;
    while i < tokens.len() {
        if !is_terminator(&tokens[i]) {
            i += 1;
            continue;
        }
        let mut run_end = i + 1;
        while run_end < tokens.len() && is_terminator(&tokens[run_end]) {
            run_end += 1;
        }
        match tokens[run_end..].iter().find(|t| t.is_word()) {
            None => {
                sentences.push(Sentence {
                    start: sent_start,
                    end: tokens.len(),
                });
                sent_start = tokens.len();
                break;
            }
            Some(word) if !starts_lowercase(word) => {
                sentences.push(Sentence {
                    start: sent_start,
                    end: run_end,
                });
                sent_start = run_end;
            }
            Some(_) => {}
        }
        i = run_end;
    }
    if sent_start < tokens.len() {
        sentences.push(Sentence {
            start: sent_start,
            end: tokens.len(),
        });
    }
    sentences
}

/// Builds an unannotated document from raw text by composing [`tokenize`]
/// and [`segment_sentences`].
pub fn build_document(
    id: impl Into<String>,
    text: impl Into<String>,
    lang: impl Into<String>,
) -> Document {
    let text = text.into();
    let tokens = tokenize(&text);
    let sentences = segment_sentences(&tokens);
    Document {
        id: id.into(),
        text,
        tokens,
        sentences,
        lang: lang.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(tokens: &[Token]) -> Vec<&str> {
        tokens.iter().map(|t| t.text.as_str()).collect()
    }

    #[test]
    fn tokenize_empty() {
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn tokenize_basic_spans() {
        let tokens = tokenize("The cat.");
        assert_eq!(texts(&tokens), ["The", "cat", "."]);
        let spans: Vec<(usize, usize)> = tokens.iter().map(|t| (t.start, t.end)).collect();
        assert_eq!(spans, [(0, 3), (4, 7), (7, 8)]);
    }

    #[test]
    fn tokenize_internal_hyphens() {
        let tokens = tokenize("state-of-the-art");
        assert_eq!(texts(&tokens), ["state-of-the-art"]);
    }

    #[test]
    fn tokenize_apostrophe_and_dangling_hyphen() {
        assert_eq!(texts(&tokenize("don't stop")), ["don't", "stop"]);
        assert_eq!(texts(&tokenize("cat- dog")), ["cat", "-", "dog"]);
        assert_eq!(texts(&tokenize("a--b")), ["a", "-", "-", "b"]);
    }

    #[test]
    fn tokenize_multibyte_offsets() {
        let text = "héllo – wörld";
        let tokens = tokenize(text);
        assert_eq!(texts(&tokens), ["héllo", "–", "wörld"]);
        for t in &tokens {
            assert_eq!(&text[t.start..t.end], t.text);
        }
    }

    #[test]
    fn is_word_flags() {
        let tokens = tokenize("cat , 42");
        let flags: Vec<bool> = tokens.iter().map(|t| t.is_word()).collect();
        assert_eq!(flags, [true, false, true]);
    }

    #[test]
    fn segment_two_sentences() {
        let doc = build_document("d", "The cat sat. It slept.", "en");
        assert_eq!(doc.sentences.len(), 2);
    }

    #[test]
    fn segment_fragment() {
        let doc = build_document("d", "no terminator here", "en");
        assert_eq!(doc.sentences.len(), 1);
    }

    #[test]
    fn segment_exclaim_question() {
        let doc = build_document("d", "Hi! Go?", "en");
        assert_eq!(doc.sentences.len(), 2);
    }

    #[test]
    fn segment_short_sentences() {
        let doc = build_document("d", "A. B.", "en");
        assert_eq!(doc.sentences.len(), 2);
    }

    #[test]
    fn segment_lowercase_continuation() {
        let doc = build_document("d", "See e.g. apples and pears.", "en");
        assert_eq!(doc.sentences.len(), 1);
    }

    #[test]
    fn segment_terminator_runs() {
        let doc = build_document("d", "What?! Really?!", "en");
        assert_eq!(doc.sentences.len(), 2);
        assert_eq!(doc.sentences[0], Sentence { start: 0, end: 3 });
    }

    #[test]
    fn build_document_empty() {
        let doc = build_document("d1", "", "en");
        assert_eq!(doc.tokens.len(), 0);
        assert_eq!(doc.sentences.len(), 0);
        assert!(!doc.has_syntax());
    }

    #[test]
    fn build_document_basic() {
        let doc = build_document("d1", "Hi there.", "en");
        assert_eq!(doc.tokens.len(), 3);
        assert_eq!(doc.sentences.len(), 1);
        assert!(!doc.has_syntax());
    }

    #[test]
    fn sentences_cover_all_tokens() {
        let doc = build_document("d", "One two. Three! four five", "en");
        let mut next = 0;
        for s in &doc.sentences {
            assert_eq!(s.start, next);
            assert!(s.end > s.start);
            next = s.end;
        }
        assert_eq!(next, doc.tokens.len());
    }
}
