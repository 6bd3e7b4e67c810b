//! Binary-alphabet variants: Devlin embedding types for the rationals and
//! triangle-free diaries for the generic triangle-free graph.

mod devlin;
mod graph;
mod triangle;

use std::fmt;

use thiserror::Error;

use crate::posets::PosetError;

pub use devlin::{devlin_enumerate, devlin_validate, DevlinEvent, MAX_DEVLIN_SIZE};
pub use graph::{is_isomorphic_graph, FiniteGraph, GraphError};
pub use triangle::{
    leaf_graph, tri_adjacent, tri_degree_lower_bound, tri_enumerate, tri_perp, tri_validate,
    TriEvent,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VariantError {
    #[error("a diary must contain at least one word")]
    Empty,
    #[error("{0} is an initial segment of {1}")]
    NotAntichain(String, String),
    #[error("level {level} matches none of the events")]
    InvalidLevel { level: usize },
    #[error("level {level} matches more than one event: {events}")]
    AmbiguousLevel { level: usize, events: String },
    #[error("{0} words share the maximal length")]
    MultipleMaximal(usize),
    #[error("invalid character {0:?} for a binary word")]
    InvalidChar(char),
    #[error("words of equal length {0} are never adjacent")]
    EqualLengths(usize),
    #[error("{what} is limited to {max}, got {n}")]
    TooLarge {
        what: &'static str,
        max: usize,
        n: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Text alphabet of a [`BinaryWord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alphabet {
    /// `L` and `R` (Devlin types).
    LR,
    /// `0` and `1` (triangle-free diaries).
    Bits,
}

/// A word over a two-letter alphabet; `false` is `L`/`0`, `true` is `R`/`1`.
/// `Ord` is the dictionary order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord(Vec<bool>);

impl BinaryWord {
    pub fn empty() -> BinaryWord {
        BinaryWord(Vec::new())
    }

    pub fn new(bits: Vec<bool>) -> BinaryWord {
        BinaryWord(bits)
    }

    pub fn zeros(n: usize) -> BinaryWord {
        BinaryWord(vec![false; n])
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&self, b: bool) -> BinaryWord {
        let mut v = self.0.clone();
        v.push(b);
        BinaryWord(v)
    }

    pub fn prefix(&self, i: usize) -> BinaryWord {
        BinaryWord(self.0[..i.min(self.0.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &BinaryWord) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Parses either alphabet; `-` is the empty word.
    pub fn parse(s: &str) -> Result<BinaryWord, VariantError> {
        let s = s.trim();
        if s == "-" || s == "∅" {
            return Ok(BinaryWord::empty());
        }
        s.chars()
            .map(|c| match c {
                'L' | '0' => Ok(false),
                'R' | '1' => Ok(true),
                other => Err(VariantError::InvalidChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BinaryWord)
    }

    pub fn display(&self, alphabet: Alphabet) -> DisplayBinary<'_> {
        DisplayBinary {
            word: self,
            alphabet,
        }
    }
}

pub struct DisplayBinary<'a> {
    word: &'a BinaryWord,
    alphabet: Alphabet,
}

impl fmt::Display for DisplayBinary<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("-");
        }
        let (a, b) = match self.alphabet {
            Alphabet::LR => ('L', 'R'),
            Alphabet::Bits => ('0', '1'),
        };
        for &bit in &self.word.0 {
            write!(f, "{}", if bit { b } else { a })?;
        }
        Ok(())
    }
}

/// Parses a literal; panics on malformed input.
pub fn bw(s: &str) -> BinaryWord {
    BinaryWord::parse(s).expect("malformed binary word literal")
}

/// Shared checks: nonempty, prefix-antichain, a unique word of maximal
/// length. Returns the sorted words and the closure levels.
fn closure_levels(
    words: &[BinaryWord],
) -> Result<(Vec<BinaryWord>, Vec<Vec<BinaryWord>>), VariantError> {
    let mut sorted = words.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.is_empty() {
        return Err(VariantError::Empty);
    }
    for pair in sorted.windows(2) {
        if pair[0].is_prefix_of(&pair[1]) {
            return Err(VariantError::NotAntichain(
                pair[0].display(Alphabet::Bits).to_string(),
                pair[1].display(Alphabet::Bits).to_string(),
            ));
        }
    }
    let max_len = sorted.iter().map(BinaryWord::len).max().unwrap_or(0);
    let maximal = sorted.iter().filter(|w| w.len() == max_len).count();
    if maximal > 1 {
        return Err(VariantError::MultipleMaximal(maximal));
    }
    let mut levels = vec![std::collections::BTreeSet::new(); max_len + 1];
    for w in &sorted {
        for (i, level) in levels.iter_mut().enumerate().take(w.len() + 1) {
            level.insert(w.prefix(i));
        }
    }
    Ok((
        sorted,
        levels
            .into_iter()
            .map(|l| l.into_iter().collect())
            .collect(),
    ))
}
