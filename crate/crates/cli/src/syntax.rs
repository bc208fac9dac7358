//! Parsing command-line text into words.
//!
//! Tokens mode (the default) reads whitespace- or comma-separated letter
//! tokens; chars mode treats each extended grapheme cluster as one letter.

use std::fmt;

use cyceq_core::{Alphabet, Word};
use unicode_segmentation::UnicodeSegmentation;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum WordSyntax {
    /// Each extended grapheme cluster is one letter.
    Chars,
    /// Letters are whitespace- or comma-separated tokens.
    #[default]
    Tokens,
}

/// A rejected token or grapheme, with its 1-based position in the input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}

/// Splits `text` into letter tokens according to the syntax mode. The empty
/// (or all-whitespace) input is the empty word.
pub fn tokenize(text: &str, syntax: WordSyntax) -> Result<Vec<String>, ParseError> {
    match syntax {
        WordSyntax::Tokens => {
            if !text.contains(',') {
                return Ok(text.split_whitespace().map(str::to_string).collect());
            }
            let mut tokens = Vec::new();
            for field in text.split(',') {
                let mut found = false;
                for token in field.split_whitespace() {
                    tokens.push(token.to_string());
                    found = true;
                }
                if !found {
                    return Err(ParseError {
                        position: tokens.len() + 1,
                        message: "empty token".to_string(),
                    });
                }
            }
            Ok(tokens)
        }
        WordSyntax::Chars => {
            let mut tokens = Vec::new();
            for (index, grapheme) in text.graphemes(true).enumerate() {
                if grapheme.chars().any(char::is_whitespace) {
                    return Err(ParseError {
                        position: index + 1,
                        message: "whitespace is not a letter".to_string(),
                    });
                }
                if grapheme.contains(',') {
                    return Err(ParseError {
                        position: index + 1,
                        message: "comma is not a letter".to_string(),
                    });
                }
                tokens.push(grapheme.to_string());
            }
            Ok(tokens)
        }
    }
}

/// Parses `text` into a word, interning its letters into `alphabet`.
pub fn parse_word(
    alphabet: &mut Alphabet,
    text: &str,
    syntax: WordSyntax,
) -> Result<Word, ParseError> {
    let tokens = tokenize(text, syntax)?;
    let mut letters = Vec::with_capacity(tokens.len());
    for (index, token) in tokens.iter().enumerate() {
        let letter = alphabet.intern(token).map_err(|error| ParseError {
            position: index + 1,
            message: error.to_string(),
        })?;
        letters.push(letter);
    }
    Ok(Word::new(letters))
}

/// Renders a word back to text in the given syntax: tokens joined by single
/// spaces, or graphemes concatenated.
pub fn render_word(alphabet: &Alphabet, word: &Word, syntax: WordSyntax) -> String {
    let tokens: Vec<&str> = word
        .letters()
        .iter()
        .map(|&letter| alphabet.token(letter).unwrap_or("?"))
        .collect();
    match syntax {
        WordSyntax::Tokens => tokens.join(" "),
        WordSyntax::Chars => tokens.concat(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_mode_splits_on_whitespace_and_commas() {
        assert_eq!(tokenize("a b c", WordSyntax::Tokens).unwrap(), ["a", "b", "c"]);
        assert_eq!(tokenize("a,b, c", WordSyntax::Tokens).unwrap(), ["a", "b", "c"]);
        assert_eq!(tokenize("  ", WordSyntax::Tokens).unwrap(), Vec::<String>::new());
        assert_eq!(tokenize("", WordSyntax::Tokens).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn tokens_mode_rejects_empty_fields() {
        let error = tokenize("a,,b", WordSyntax::Tokens).unwrap_err();
        assert_eq!(error.position, 2);
        assert!(tokenize(",", WordSyntax::Tokens).is_err());
        assert!(tokenize("a,b,", WordSyntax::Tokens).is_err());
    }

    #[test]
    fn chars_mode_splits_graphemes() {
        assert_eq!(tokenize("0123", WordSyntax::Chars).unwrap(), ["0", "1", "2", "3"]);
        assert_eq!(tokenize("héé", WordSyntax::Chars).unwrap(), ["h", "é", "é"]);
        assert!(tokenize("a b", WordSyntax::Chars).is_err());
        assert!(tokenize("a,b", WordSyntax::Chars).is_err());
    }

    #[test]
    fn words_round_trip_through_rendering() {
        for (text, syntax) in [
            ("1 2 3 1", WordSyntax::Tokens),
            ("abcab", WordSyntax::Chars),
            ("あé1", WordSyntax::Chars),
        ] {
            let mut alphabet = Alphabet::new();
            let word = parse_word(&mut alphabet, text, syntax).unwrap();
            let rendered = render_word(&alphabet, &word, syntax);
            let mut again = Alphabet::new();
            let reparsed = parse_word(&mut again, &rendered, syntax).unwrap();
            assert_eq!(word, reparsed);
        }
    }
}
