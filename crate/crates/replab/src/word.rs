//! Finite words over small integer alphabets.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported alphabet; symbols render as single decimal digits.
pub const MAX_ALPHABET: u8 = 10;

/// A finite word over the alphabet `{0, ..., alphabet_size - 1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    symbols: Vec<u8>,
    alphabet_size: u8,
}

impl Word {
    pub fn new(symbols: Vec<u8>, alphabet_size: u8) -> Result<Self> {
        if alphabet_size == 0 || alphabet_size > MAX_ALPHABET {
            return Err(Error::InvalidAlphabet(alphabet_size));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s >= alphabet_size) {
            return Err(Error::InvalidSymbol {
                symbol: s,
                alphabet_size,
            });
        }
        Ok(Word {
            symbols,
            alphabet_size,
        })
    }

    pub fn binary(symbols: Vec<u8>) -> Result<Self> {
        Word::new(symbols, 2)
    }

    pub fn empty(alphabet_size: u8) -> Result<Self> {
        Word::new(Vec::new(), alphabet_size)
    }

    /// Parses a digit string; the empty string and "ε" denote the empty word.
    pub fn parse(text: &str, alphabet_size: u8) -> Result<Self> {
        if text.is_empty() || text == "ε" || text == "eps" {
            return Word::empty(alphabet_size);
        }
        let mut symbols = Vec::with_capacity(text.len());
        for c in text.chars() {
            let d = c.to_digit(10).ok_or(Error::InvalidDigit(c))?;
            symbols.push(d as u8);
        }
        Word::new(symbols, alphabet_size)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet_size
    }

    /// Maps each symbol `s` to `alphabet_size - 1 - s`; for binary words this
    /// is the 0↔1 complement.
    pub fn complemented(&self) -> Word {
        let k = self.alphabet_size;
        Word {
            symbols: self.symbols.iter().map(|&s| k - 1 - s).collect(),
            alphabet_size: k,
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word {
            symbols: self.symbols[..len.min(self.len())].to_vec(),
            alphabet_size: self.alphabet_size,
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        let k = self.alphabet_size.max(other.alphabet_size);
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Word::new(symbols, k)
    }

    pub fn is_factor_of(&self, other: &Word) -> bool {
        if self.is_empty() {
            return true;
        }
        other
            .symbols
            .windows(self.len())
            .any(|w| w == self.symbols.as_slice())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

// Debug prints the same digit string as Display so test failures stay readable.
impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}
