//! Symbols, words, and alphabets.
//!
//! A symbol is a non-empty token drawn from a declared alphabet. Words are
//! finite sequences of symbols; the empty word is a distinguished valid value.
//! The canonical order on symbols is lexicographic on the token text, which
//! fixes every tie-breaking rule in the crate.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A single alphabet symbol, stored as its token text.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(String);

impl Symbol {
    /// Creates a symbol from a token. Tokens must be non-empty, must not be
    /// `*`, and must not start with `@` (those are reserved by the text format).
    pub fn new(token: impl Into<String>) -> Result<Symbol> {
        let token = token.into();
        if token.is_empty()
            || token == "*"
            || token.starts_with('@')
            || token.chars().any(char::is_whitespace)
        {
            return Err(Error::InvalidMachine(format!("invalid symbol token `{token}`")));
        }
        Ok(Symbol(token))
    }

    /// Single-character symbol; panics on reserved characters. Test and
    /// builder convenience.
    pub fn from_char(c: char) -> Symbol {
        Symbol::new(c.to_string()).expect("invalid symbol character")
    }

    /// The token text.
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An alphabet is a finite nonempty set of symbols, kept in canonical order.
pub type Alphabet = BTreeSet<Symbol>;

/// Builds an alphabet from one character per symbol, e.g. `alphabet("ab")`.
pub fn alphabet(chars: &str) -> Alphabet {
    chars.chars().map(Symbol::from_char).collect()
}

/// A finite, possibly empty, sequence of symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    /// The empty word.
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Word {
        Word(symbols)
    }

    /// One symbol per character, e.g. `Word::from_chars("aab")`.
    pub fn from_chars(s: &str) -> Word {
        Word(s.chars().map(Symbol::from_char).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Word(v)
    }

    /// `self` followed by an optional single symbol.
    pub fn append_opt(&self, s: Option<&Symbol>) -> Word {
        let mut v = self.0.clone();
        if let Some(s) = s {
            v.push(s.clone());
        }
        Word(v)
    }

    /// True if `self` is a prefix of `other`.
    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// The suffix of `other` after removing the prefix `self`, if any.
    pub fn strip_prefix_of<'a>(&self, other: &'a Word) -> Option<Word> {
        if self.is_prefix_of(other) {
            Some(Word(other.0[self.0.len()..].to_vec()))
        } else {
            None
        }
    }

    /// Radix (shortlex) order: by length first, then lexicographically.
    pub fn radix_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Renders the word as its concatenated tokens; the empty word as `@epsilon`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("@epsilon");
        }
        for s in &self.0 {
            f.write_str(s.as_str())?;
        }
        Ok(())
    }
}
