//! Embedded English stop-word list (179 function words).

static ENGLISH_RAW: &str = include_str!("../data/stopwords_en.txt");

/// The built-in English stop words, lowercase, in file order.
pub fn english() -> impl Iterator<Item = &'static str> {
    ENGLISH_RAW
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
}
