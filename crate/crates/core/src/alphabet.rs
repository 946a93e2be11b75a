//! Ordered alphabets, letters and words.
//!
//! A letter is an index into an [`Alphabet`]; the order of letters is the
//! declaration order of their symbols, never the lexicographic order of the
//! symbols themselves. Words compare in radix order: shorter first, then
//! letter by letter.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// The reserved symbol kept strictly below every user letter when a language
/// is padded for extraction. Forbidden in user alphabets.
pub const SENTINEL: &str = "#";

/// A finite, ordered list of distinct symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
}

/// A letter of some [`Alphabet`], ordered by declaration position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

/// A finite word.
pub type Word = Vec<Letter>;

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl Alphabet {
    /// Builds an alphabet from its symbols in order. Symbols must be
    /// nonempty, free of whitespace and commas, and pairwise distinct.
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        for (i, sym) in symbols.iter().enumerate() {
            if sym.is_empty() {
                return Err(Error::Alphabet("empty symbol".into()));
            }
            if sym.contains(|c: char| c.is_whitespace() || c == ',') {
                return Err(Error::Alphabet(format!(
                    "symbol '{sym}' contains whitespace or a comma"
                )));
            }
            if symbols[..i].contains(sym) {
                return Err(Error::Alphabet(format!("duplicate symbol '{sym}'")));
            }
        }
        if symbols.len() > u32::MAX as usize {
            return Err(Error::Alphabet("alphabet too large".into()));
        }
        Ok(Alphabet { symbols })
    }

    /// Parses a comma-separated symbol list such as `a,b,c`.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let symbols: Vec<&str> = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        Alphabet::new(symbols)
    }

    /// Alphabet `0,1,...,n-1` used by minimal labellings.
    pub fn digits(n: usize) -> Self {
        Alphabet::new((0..n).map(|i| i.to_string())).expect("digit symbols are distinct")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The letter written `symbol`, if any.
    pub fn letter(&self, symbol: &str) -> Option<Letter> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .map(|i| Letter(i as u32))
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.letter(symbol).is_some()
    }

    /// The letter at position `index`.
    pub fn nth(&self, index: usize) -> Option<Letter> {
        (index < self.symbols.len()).then_some(Letter(index as u32))
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter.index()]
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(String::as_str)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.symbols.len() as u32).map(Letter)
    }

    /// Parses a word given as one string: a bare concatenation when every
    /// symbol is a single character, otherwise whitespace-separated symbols.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let tokens: Vec<String> = if self.symbols.iter().all(|s| s.chars().count() == 1)
            && !text.contains(char::is_whitespace)
        {
            text.chars().map(|c| c.to_string()).collect()
        } else {
            text.split_whitespace().map(str::to_string).collect()
        };
        tokens
            .iter()
            .map(|t| {
                self.letter(t)
                    .ok_or_else(|| Error::Alphabet(format!("unknown letter '{t}'")))
            })
            .collect()
    }

    /// Renders a word with this alphabet's symbols. Single-character
    /// alphabets concatenate; anything else joins with spaces. The empty
    /// word renders as `ε`.
    pub fn render_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let single = self.symbols.iter().all(|s| s.chars().count() == 1);
        let parts: Vec<&str> = word.iter().map(|&l| self.symbol(l)).collect();
        parts.join(if single { "" } else { " " })
    }

    /// The same word as a list of symbol strings, for comparisons across
    /// distinct alphabets.
    pub fn word_symbols(&self, word: &[Letter]) -> Vec<String> {
        word.iter().map(|&l| self.symbol(l).to_string()).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbols.join(","))
    }
}

/// Radix order: length first, then letterwise by alphabet position.
pub fn radix_cmp(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}
