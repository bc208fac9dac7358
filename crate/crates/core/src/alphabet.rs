//! Printable letter tokens and their dense internal ids.
//!
//! Externally a letter is a text token; internally every algorithm works on
//! dense ids. One [`Alphabet`] is one interning context: within it the
//! token/id correspondence is a bijection.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::word::{Letter, Word};

/// Interns tokens to letters and renders letters back to tokens.
///
/// Tokens may not be empty and may not contain whitespace or commas, which
/// every serialization of words reserves as separators.
#[derive(Clone, Debug, Default)]
pub struct Alphabet {
    tokens: Vec<String>,
    ids: BTreeMap<String, Letter>,
}

impl Alphabet {
    pub fn new() -> Self {
        Alphabet::default()
    }

    /// Returns the letter for `token`, assigning the next free id on first
    /// use.
    pub fn intern(&mut self, token: &str) -> Result<Letter, TokenError> {
        validate(token)?;
        if let Some(&letter) = self.ids.get(token) {
            return Ok(letter);
        }
        let letter = Letter::new(self.tokens.len() as u32);
        self.tokens.push(token.to_string());
        self.ids.insert(token.to_string(), letter);
        Ok(letter)
    }

    /// The letter previously interned for `token`, if any.
    pub fn letter(&self, token: &str) -> Option<Letter> {
        self.ids.get(token).copied()
    }

    /// The token of a letter this alphabet assigned.
    pub fn token(&self, letter: Letter) -> Option<&str> {
        self.tokens.get(letter.id() as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// All tokens in id order.
    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }

    /// Interns a sequence of tokens into a word.
    pub fn word_from_tokens<I>(&mut self, tokens: I) -> Result<Word, TokenError>
    where
        I: IntoIterator,
        I::Item: AsRef<str>,
    {
        let mut letters = Vec::new();
        for token in tokens {
            letters.push(self.intern(token.as_ref())?);
        }
        Ok(Word::new(letters))
    }
}

fn validate(token: &str) -> Result<(), TokenError> {
    if token.is_empty() {
        return Err(TokenError::Empty);
    }
    if token.chars().any(char::is_whitespace) {
        return Err(TokenError::Whitespace {
            token: token.to_string(),
        });
    }
    if token.contains(',') {
        return Err(TokenError::Comma {
            token: token.to_string(),
        });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TokenError {
    Empty,
    Whitespace { token: String },
    Comma { token: String },
}

impl fmt::Display for TokenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenError::Empty => write!(f, "letter tokens must be non-empty"),
            TokenError::Whitespace { token } => {
                write!(f, "letter token {token:?} contains whitespace")
            }
            TokenError::Comma { token } => write!(f, "letter token {token:?} contains a comma"),
        }
    }
}

impl core::error::Error for TokenError {}
