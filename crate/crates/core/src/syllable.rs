//! Heuristic syllable counting.
//!
//! Counts maximal contiguous vowel groups, subtracting one for a trailing
//! silent "e" unless the word ends in consonant + "le" ("table", "little").
//! The heuristic is self-contained (no hyphenation dictionary) and known to
//! deviate on irregular words such as "queue"; readability indices only need
//! aggregate fidelity.

use crate::error::{Error, Result};

/// Rules for heuristic syllable counting. Only English rules ship; the
/// language hook exists so other rule sets can be plugged in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyllableRuleSet {
    /// Characters treated as vowels (lowercase). "y" counts as a vowel
    /// everywhere, which handles "happy" and "rhythm".
    pub vowels: Vec<char>,
    /// Subtract one group for a trailing silent "e" ("make" -> 1).
    pub silent_e: bool,
    /// Keep the final group when the word ends in consonant + "le".
    pub le_exception: bool,
}

impl Default for SyllableRuleSet {
    fn default() -> Self {
        SyllableRuleSet {
            vowels: vec!['a', 'e', 'i', 'o', 'u', 'y'],
            silent_e: true,
            le_exception: true,
        }
    }
}

impl SyllableRuleSet {
    pub fn english() -> Self {
        Self::default()
    }

    /// Rule set for a language code. Every code currently maps to the
    /// English rules.
    pub fn for_lang(_lang: &str) -> Self {
        Self::default()
    }

    fn is_vowel(&self, c: char) -> bool {
        self.vowels.contains(&c)
    }

    fn is_consonant(&self, c: char) -> bool {
        c.is_alphabetic() && !self.is_vowel(c)
    }
}

/// Counts syllables in a word, case-insensitively. Errors when the word has
/// no alphabetic character; otherwise the result is at least 1.
pub fn count_syllables(word: &str, rules: &SyllableRuleSet) -> Result<usize> {
    if !word.chars().any(char::is_alphabetic) {
        return Err(Error::NoAlphabetic(word.to_string()));
    }
    let chars: Vec<char> = word.to_lowercase().chars().collect();
    let mut groups = 0usize;
    let mut in_group = false;
    for &c in &chars {
        let v = rules.is_vowel(c);
        if v && !in_group {
            groups += 1;
        }
        in_group = v;
    }
    let mut count = groups;
    if rules.silent_e && count >= 2 && ends_in_silent_e(&chars, rules) {
        count -= 1;
    }
    Ok(count.max(1))
}

/// Total syllable count used by the metric layer: a word with no alphabetic
/// character (e.g. "123") counts as one syllable, so every word contributes
/// at least one.
pub fn count_syllables_lossy(word: &str, rules: &SyllableRuleSet) -> usize {
    count_syllables(word, rules).unwrap_or(1)
}

fn ends_in_silent_e(chars: &[char], rules: &SyllableRuleSet) -> bool {
    let n = chars.len();
    if n < 2 || chars[n - 1] != 'e' || !rules.is_consonant(chars[n - 2]) {
        return false;
    }
    if rules.le_exception && chars[n - 2] == 'l' && n >= 3 && rules.is_consonant(chars[n - 3]) {
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(word: &str) -> usize {
        count_syllables(word, &SyllableRuleSet::english()).unwrap()
    }

    #[test]
    fn single_vowel_group() {
        assert_eq!(count("cat"), 1);
    }

    #[test]
    fn le_exception_keeps_final_e() {
        assert_eq!(count("table"), 2);
        assert_eq!(count("little"), 2);
    }

    #[test]
    fn silent_e_subtracted() {
        assert_eq!(count("make"), 1);
        assert_eq!(count("pale"), 1);
    }

    #[test]
    fn y_as_vowel() {
        assert_eq!(count("happy"), 2);
        assert_eq!(count("rhythm"), 1);
    }

    #[test]
    fn case_insensitive() {
        assert_eq!(count("Make"), count("make"));
        assert_eq!(count("TABLE"), count("table"));
    }

    #[test]
    fn clamped_to_one() {
        assert_eq!(count("le"), 1);
        assert_eq!(count("b"), 1);
    }

    #[test]
    fn longer_words() {
        assert_eq!(count("everybody"), 5);
        assert_eq!(count("understands"), 3);
        assert_eq!(count("readability"), 5);
    }

    #[test]
    fn no_alphabetic_is_error() {
        assert!(count_syllables("123", &SyllableRuleSet::english()).is_err());
        assert!(count_syllables("?!", &SyllableRuleSet::english()).is_err());
    }

    #[test]
    fn lossy_falls_back_to_one() {
        let rules = SyllableRuleSet::english();
        assert_eq!(count_syllables_lossy("123", &rules), 1);
        assert_eq!(count_syllables_lossy("happy", &rules), 2);
    }
}
