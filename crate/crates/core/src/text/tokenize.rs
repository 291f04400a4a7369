use alloc::string::String;
use alloc::vec::Vec;

use super::stem::{Stemmer, SuffixStemmer};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TokenizerConfig {
    pub lowercase: bool,
    /// Drop everything up to and including the first blank line. Text
    /// without a blank line is left whole.
    pub strip_headers: bool,
    pub stem: bool,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            lowercase: true,
            strip_headers: false,
            stem: false,
        }
    }
}

fn body(text: &str) -> &str {
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        offset += line.len();
        if line.trim().is_empty() {
            return &text[offset..];
        }
    }
    text
}

/// Tokens of at least two characters, split on non-alphanumeric characters.
/// `stem` uses [`SuffixStemmer`].
pub fn tokenize(text: &str, cfg: &TokenizerConfig) -> Vec<String> {
    tokenize_with(text, cfg, &SuffixStemmer)
}

pub fn tokenize_with(text: &str, cfg: &TokenizerConfig, stemmer: &dyn Stemmer) -> Vec<String> {
    let text = if cfg.strip_headers { body(text) } else { text };
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| t.chars().nth(1).is_some())
        .map(|t| {
            let t = if cfg.lowercase {
                t.to_lowercase()
            } else {
                t.into()
            };
            if cfg.stem {
                stemmer.stem(&t)
            } else {
                t
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn lowercase_and_punctuation() {
        assert_eq!(
            tokenize("The cat, the CAT!", &TokenizerConfig::default()),
            vec!["the", "cat", "the", "cat"]
        );
        let keep = TokenizerConfig {
            lowercase: false,
            ..TokenizerConfig::default()
        };
        assert_eq!(tokenize("A Bc d-ef", &keep), vec!["Bc", "ef"]);
    }

    #[test]
    fn header_block() {
        let cfg = TokenizerConfig {
            strip_headers: true,
            ..TokenizerConfig::default()
        };
        assert_eq!(tokenize("From: a\n\nbody text", &cfg), vec!["body", "text"]);
        assert_eq!(tokenize("From: a\r\n  \r\nbody", &cfg), vec!["body"]);
        assert_eq!(
            tokenize("no blank line here", &cfg),
            vec!["no", "blank", "line", "here"]
        );
    }

    #[test]
    fn stemming() {
        let cfg = TokenizerConfig {
            stem: true,
            ..TokenizerConfig::default()
        };
        assert_eq!(tokenize("bikes riding", &cfg), vec!["bike", "ride"]);
    }

    #[test]
    fn empty_input() {
        assert!(tokenize("", &TokenizerConfig::default()).is_empty());
        assert!(tokenize("a b c !", &TokenizerConfig::default()).is_empty());
    }
}
