//! Finite symbol alphabets with an optional complement involution.
//!
//! Symbols are single characters; internally every sequence and word is a
//! slice of `u8` codes in `0..size()`. The complement map, when present, is a
//! self-inverse bijection on codes (fixed points allowed) and is what makes
//! palindrome and inverted-repeat patterns expressible.

use crate::error::{Error, Result};

/// A word or sequence is a vector of symbol codes in `0..alphabet.size()`.
pub type Word = Vec<u8>;

#[derive(Debug, Clone, PartialEq)]
pub struct Alphabet {
    symbols: Vec<char>,
    complement: Option<Vec<u8>>,
}

impl Alphabet {
    /// Builds an alphabet from distinct symbols, without a complement map.
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::Input(
                "alphabet must contain at least one symbol".into(),
            ));
        }
        if symbols.len() > u8::MAX as usize {
            return Err(Error::Input(format!(
                "alphabet too large ({} symbols)",
                symbols.len()
            )));
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::Input(format!("duplicate alphabet symbol '{s}'")));
            }
        }
        Ok(Alphabet {
            symbols,
            complement: None,
        })
    }

    /// Adds a complement map given as symbol pairs, e.g. `[('a','t'), ('c','g')]`.
    /// Every symbol must appear in exactly one pair; `(x, x)` declares a fixed
    /// point. The resulting map is validated to be a self-inverse bijection.
    pub fn with_complement(mut self, pairs: &[(char, char)]) -> Result<Self> {
        let k = self.symbols.len();
        let mut map = vec![u8::MAX; k];
        for &(a, b) in pairs {
            let ia = self.code(a)?;
            let ib = self.code(b)?;
            for &i in &[ia, ib] {
                if map[i as usize] != u8::MAX {
                    return Err(Error::Input(format!(
                        "complement pair repeats symbol '{}'",
                        self.symbols[i as usize]
                    )));
                }
            }
            map[ia as usize] = ib;
            if ia != ib {
                map[ib as usize] = ia;
            }
        }
        if let Some(i) = map.iter().position(|&m| m == u8::MAX) {
            return Err(Error::Input(format!(
                "complement map does not cover symbol '{}'",
                self.symbols[i]
            )));
        }
        // Self-inverse bijection; guaranteed by construction, kept as a check.
        for (i, &m) in map.iter().enumerate() {
            if map[m as usize] as usize != i {
                return Err(Error::Input("complement map is not an involution".into()));
            }
        }
        self.complement = Some(map);
        Ok(self)
    }

    /// The DNA alphabet `a,c,g,t` with the Watson-Crick complement.
    pub fn dna() -> Self {
        Alphabet::new("acgt".chars())
            .and_then(|a| a.with_complement(&[('a', 't'), ('c', 'g')]))
            .expect("built-in DNA alphabet is valid")
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn has_complement(&self) -> bool {
        self.complement.is_some()
    }

    /// Code of a symbol character.
    pub fn code(&self, symbol: char) -> Result<u8> {
        self.symbols
            .iter()
            .position(|&s| s == symbol)
            .map(|i| i as u8)
            .ok_or_else(|| Error::Input(format!("symbol '{symbol}' not in alphabet")))
    }

    /// Encodes a string of symbol characters into codes.
    pub fn encode(&self, s: &str) -> Result<Word> {
        s.chars().map(|ch| self.code(ch)).collect()
    }

    /// Decodes symbol codes back into a string. Panics on out-of-range codes.
    pub fn decode(&self, w: &[u8]) -> String {
        w.iter().map(|&c| self.symbols[c as usize]).collect()
    }

    /// Complement of a single code.
    pub fn complement(&self, code: u8) -> Result<u8> {
        let map = self
            .complement
            .as_ref()
            .ok_or_else(|| Error::Config("alphabet has no complement map".into()))?;
        Ok(map[code as usize])
    }

    /// Reverse complement of a word: the complement of `w` read right to left.
    pub fn reverse_complement(&self, w: &[u8]) -> Result<Word> {
        let map = self
            .complement
            .as_ref()
            .ok_or_else(|| Error::Config("alphabet has no complement map".into()))?;
        Ok(w.iter().rev().map(|&c| map[c as usize]).collect())
    }

    /// True when `codes` are all in range for this alphabet.
    pub fn validate_codes(&self, w: &[u8]) -> Result<()> {
        match w.iter().find(|&&c| c as usize >= self.symbols.len()) {
            None => Ok(()),
            Some(&c) => Err(Error::Input(format!(
                "symbol code {c} out of range for alphabet of size {}",
                self.symbols.len()
            ))),
        }
    }
}
