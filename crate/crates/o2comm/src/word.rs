//! Words in the two Cuntz generators.

use crate::error::{Error, Result};

/// One of the two generating isometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    U,
    V,
}

impl Letter {
    /// Bit value used in block indexing: `u = 0`, `v = 1`.
    pub fn bit(self) -> usize {
        match self {
            Letter::U => 0,
            Letter::V => 1,
        }
    }
}

/// A finite word over `{u, v}`; the empty word denotes the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn u() -> Self {
        Word(vec![Letter::U])
    }

    pub fn v() -> Self {
        Word(vec![Letter::V])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Row/column index of the word at its own level: the first letter is the
    /// most significant bit, the suffix letter the fastest-varying bit.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, l| (acc << 1) | l.bit())
    }

    /// Parse from a string over `u`/`v` (e.g. `"uvv"`). Empty string is the unit.
    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                'u' => letters.push(Letter::U),
                'v' => letters.push(Letter::V),
                _ => return Err(Error::Parse(format!("invalid letter {ch:?} in word"))),
            }
        }
        Ok(Word(letters))
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            match l {
                Letter::U => write!(f, "u")?,
                Letter::V => write!(f, "v")?,
            }
        }
        Ok(())
    }
}
