//! Words over the ordered alphabet `L < X < R` and the relations defined on
//! them: lexicographic order, the partial order `⪯` (with its witness), the
//! level-wise order `⊴` and its incomparability `⊥`, compatibility, prefix
//! closures and parameter-word substitution.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("words of different lengths ({0} and {1}) are not comparable level-wise")]
    LengthMismatch(usize, usize),
    #[error("extension has length {found}, expected {expected}")]
    ExtensionSize { expected: usize, found: usize },
    #[error("invalid letter {0:?}")]
    InvalidLetter(char),
    #[error("invalid parameter word: {0}")]
    InvalidParameterWord(String),
    #[error("substituted word has length {found} but the host word has only {params} parameters")]
    SubstitutionTooLong { params: usize, found: usize },
}

/// A letter of the alphabet. The derived order is the lexicographic order
/// on letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    L,
    X,
    R,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::L, Letter::X, Letter::R];

    pub fn as_char(self) -> char {
        match self {
            Letter::L => 'L',
            Letter::X => 'X',
            Letter::R => 'R',
        }
    }

    pub fn from_char(c: char) -> Result<Letter, WordError> {
        match c {
            'L' => Ok(Letter::L),
            'X' => Ok(Letter::X),
            'R' => Ok(Letter::R),
            other => Err(WordError::InvalidLetter(other)),
        }
    }
}

/// A finite word. `Ord` is the dictionary order: the first differing
/// position decides and a proper initial segment sorts first.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<Letter> {
        self.0.get(i).copied()
    }

    /// The initial segment `w|_i` of length `min(i, |w|)`.
    pub fn prefix(&self, i: usize) -> Word {
        Word(self.0[..i.min(self.0.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_proper_prefix_of(&self, other: &Word) -> bool {
        self.len() < other.len() && self.is_prefix_of(other)
    }

    /// `w⌢c`.
    pub fn push(&self, c: Letter) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.extend_from_slice(&self.0);
        letters.push(c);
        Word(letters)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The constant word `c^n`.
    pub fn repeat(c: Letter, n: usize) -> Word {
        Word(vec![c; n])
    }

    /// All words of length `n` in lexicographic order.
    pub fn all_of_length(n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            out = out
                .iter()
                .flat_map(|w| Letter::ALL.iter().map(move |&c| w.push(c)))
                .collect();
        }
        out
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for c in &self.0 {
            write!(f, "{}", c.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "-" || s == "∅" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(Letter::from_char)
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a word; panics on malformed input. Intended for literals in tests
/// and examples.
pub fn w(s: &str) -> Word {
    s.parse().expect("malformed word literal")
}

pub fn lex_compare(u: &Word, v: &Word) -> std::cmp::Ordering {
    u.cmp(v)
}

/// Returns the witness `i(u, v)` of `u ≺ v`: the least `i < min(|u|, |v|)`
/// with `(u_i, v_i) = (L, R)` and `u_j ≤ v_j` for all `j < i`.
pub fn precedes(u: &Word, v: &Word) -> Option<usize> {
    for (i, (&a, &b)) in u.0.iter().zip(v.0.iter()).enumerate() {
        if a == Letter::L && b == Letter::R {
            return Some(i);
        }
        if a > b {
            return None;
        }
    }
    None
}

/// Non-strict `u ⪯ v`.
pub fn precedes_eq(u: &Word, v: &Word) -> bool {
    u == v || precedes(u, v).is_some()
}

fn same_length(u: &Word, v: &Word) -> Result<(), WordError> {
    if u.len() == v.len() {
        Ok(())
    } else {
        Err(WordError::LengthMismatch(u.len(), v.len()))
    }
}

/// `u ⊴ v`: letter-wise `u_i ≤ v_i`. Only defined on equal lengths.
pub fn dominated(u: &Word, v: &Word) -> Result<bool, WordError> {
    same_length(u, v)?;
    Ok(dominated_unchecked(u, v))
}

pub(crate) fn dominated_unchecked(u: &Word, v: &Word) -> bool {
    u.0.iter().zip(v.0.iter()).all(|(a, b)| a <= b)
}

/// `u ⊥ v`: `u` and `v` are `⊴`-incomparable.
pub fn perp(u: &Word, v: &Word) -> Result<bool, WordError> {
    same_length(u, v)?;
    Ok(perp_unchecked(u, v))
}

pub(crate) fn perp_unchecked(u: &Word, v: &Word) -> bool {
    !dominated_unchecked(u, v) && !dominated_unchecked(v, u)
}

/// Which of `u ≺ v`, `v ≺ u` and `u ⊥ v` hold for a pair of equal-length
/// words. `≺` and `⊥` may hold at the same time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationSummary {
    Prec,
    Succ,
    PerpOnly,
    PrecAndPerp,
    SuccAndPerp,
    Unrelated,
}

impl RelationSummary {
    pub fn is_related(self) -> bool {
        self != RelationSummary::Unrelated
    }
}

pub fn relation_summary(u: &Word, v: &Word) -> Result<RelationSummary, WordError> {
    same_length(u, v)?;
    Ok(relation_summary_unchecked(u, v))
}

pub(crate) fn relation_summary_unchecked(u: &Word, v: &Word) -> RelationSummary {
    let p = perp_unchecked(u, v);
    let lt = precedes(u, v).is_some();
    let gt = precedes(v, u).is_some();
    match (lt, gt, p) {
        (true, _, false) => RelationSummary::Prec,
        (true, _, true) => RelationSummary::PrecAndPerp,
        (false, true, false) => RelationSummary::Succ,
        (false, true, true) => RelationSummary::SuccAndPerp,
        (false, false, true) => RelationSummary::PerpOnly,
        (false, false, false) => RelationSummary::Unrelated,
    }
}

/// Compatibility of two words, checked with the pair put in lex order.
pub fn compatible(u: &Word, v: &Word) -> bool {
    let (u, v) = if u <= v { (u, v) } else { (v, u) };
    let mut has_lr = false;
    let mut all_le = true;
    for (&a, &b) in u.0.iter().zip(v.0.iter()) {
        if a == Letter::R && b == Letter::L {
            return false;
        }
        if a == Letter::L && b == Letter::R {
            has_lr = true;
        }
        if a > b {
            all_le = false;
        }
    }
    !has_lr || all_le
}

pub type WordSet = BTreeSet<Word>;

/// Prefix closure `{w|_i : w ∈ S, i ≤ |w|}`.
pub fn closure<'a, I>(words: I) -> WordSet
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut out = WordSet::new();
    for word in words {
        for i in 0..=word.len() {
            out.insert(word.prefix(i));
        }
    }
    out
}

/// Words of `set` of length exactly `len`, in lex order.
pub fn level<'a, I>(set: I, len: usize) -> Vec<Word>
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut out: Vec<Word> = set
        .into_iter()
        .filter(|w| w.len() == len)
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The closure split into levels `0..=max_len`.
pub fn closure_levels<'a, I>(words: I) -> Vec<Vec<Word>>
where
    I: IntoIterator<Item = &'a Word>,
{
    let closed = closure(words);
    let height = closed.iter().map(Word::len).max().map_or(0, |m| m + 1);
    let mut levels = vec![Vec::new(); height];
    for word in closed {
        levels[word.len()].push(word);
    }
    levels
}

pub fn is_prefix_antichain<'a, I>(words: I) -> bool
where
    I: IntoIterator<Item = &'a Word>,
{
    let sorted: Vec<&Word> = {
        let mut v: Vec<&Word> = words.into_iter().collect();
        v.sort();
        v.dedup();
        v
    };
    // In dictionary order any word is immediately followed by its
    // extensions, so comparing neighbours is enough.
    sorted.windows(2).all(|p| !p[0].is_prefix_of(p[1]))
}

/// `A⌢e = {u^i⌢e_i}` for a lex-sorted level `A = u^0 < … < u^{n-1}`.
pub fn append(level_words: &[Word], e: &Word) -> Result<Vec<Word>, WordError> {
    if level_words.len() != e.len() {
        return Err(WordError::ExtensionSize {
            expected: level_words.len(),
            found: e.len(),
        });
    }
    let mut sorted: Vec<&Word> = level_words.iter().collect();
    sorted.sort();
    Ok(sorted
        .into_iter()
        .zip(e.letters())
        .map(|(u, &c)| u.push(c))
        .collect())
}

/// A symbol of a parameter word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Letter(Letter),
    Param(usize),
}

/// A finite parameter word: every parameter `λ_0 … λ_{k-1}` occurs and the
/// first occurrences appear in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParameterWord {
    symbols: Vec<Symbol>,
    params: usize,
}

impl ParameterWord {
    pub fn new(symbols: Vec<Symbol>) -> Result<ParameterWord, WordError> {
        let mut next = 0;
        for s in &symbols {
            if let Symbol::Param(j) = *s {
                if j > next {
                    return Err(WordError::InvalidParameterWord(format!(
                        "first occurrence of λ{j} precedes first occurrence of λ{next}"
                    )));
                }
                if j == next {
                    next += 1;
                }
            }
        }
        Ok(ParameterWord {
            symbols,
            params: next,
        })
    }

    pub fn from_word(word: &Word) -> ParameterWord {
        ParameterWord {
            symbols: word.letters().iter().map(|&c| Symbol::Letter(c)).collect(),
            params: 0,
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn param_count(&self) -> usize {
        self.params
    }

    /// The underlying word, if there are no parameters.
    pub fn to_word(&self) -> Option<Word> {
        self.symbols
            .iter()
            .map(|s| match s {
                Symbol::Letter(c) => Some(*c),
                Symbol::Param(_) => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    /// `W(U)`: replace each `λ_i` (`i < |U|`) by `U_i` and truncate just
    /// before the first occurrence of `λ_{|U|}`.
    pub fn substitute(&self, u: &ParameterWord) -> Result<ParameterWord, WordError> {
        let k = u.len();
        if k > self.params {
            return Err(WordError::SubstitutionTooLong {
                params: self.params,
                found: k,
            });
        }
        let mut symbols = Vec::with_capacity(self.symbols.len());
        for s in &self.symbols {
            match *s {
                Symbol::Letter(c) => symbols.push(Symbol::Letter(c)),
                Symbol::Param(j) if j < k => symbols.push(u.symbols[j]),
                Symbol::Param(_) => break,
            }
        }
        Ok(ParameterWord {
            symbols,
            params: u.params,
        })
    }
}

impl fmt::Display for ParameterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return f.write_str("-");
        }
        for s in &self.symbols {
            match s {
                Symbol::Letter(c) => write!(f, "{}", c.as_char())?,
                Symbol::Param(j) => write!(f, "${j}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for ParameterWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "-" {
            return ParameterWord::new(Vec::new());
        }
        let mut symbols = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            if c == '$' {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                let j = digits.parse().map_err(|_| {
                    WordError::InvalidParameterWord(format!("bad parameter in {s:?}"))
                })?;
                symbols.push(Symbol::Param(j));
            } else {
                symbols.push(Symbol::Letter(Letter::from_char(c)?));
            }
        }
        ParameterWord::new(symbols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    fn pw(s: &str) -> ParameterWord {
        s.parse().unwrap()
    }

    #[test]
    fn lex_order_on_letters_and_words() {
        assert_eq!(lex_compare(&w("L"), &w("X")), Ordering::Less);
        assert_eq!(lex_compare(&w("-"), &w("-")), Ordering::Equal);
        assert_eq!(lex_compare(&w("XR"), &w("XL")), Ordering::Greater);
        assert_eq!(lex_compare(&w("X"), &w("XL")), Ordering::Less);
    }

    #[test]
    fn precedes_witness() {
        assert_eq!(precedes(&w("LR"), &w("RL")), Some(0));
        assert_eq!(precedes(&w("XL"), &w("RRX")), Some(1));
        for s in ["-", "L", "LR", "XRL", "RRLX"] {
            assert_eq!(precedes(&w(s), &w(s)), None);
        }
        assert_eq!(precedes(&w("RL"), &w("LR")), None);
        assert_eq!(precedes(&w("X"), &w("R")), None);
    }

    #[test]
    fn dominated_and_perp() {
        assert_eq!(dominated(&w("XL"), &w("RR")), Ok(true));
        assert_eq!(dominated(&w("XR"), &w("XR")), Ok(true));
        assert_eq!(dominated(&w("XR"), &w("RX")), Ok(false));
        assert_eq!(
            dominated(&w("X"), &w("RR")),
            Err(WordError::LengthMismatch(1, 2))
        );
        assert!(perp(&w("L"), &w("LX")).is_err());
    }

    #[test]
    fn relation_summaries() {
        assert_eq!(
            relation_summary(&w("LR"), &w("RL")),
            Ok(RelationSummary::PrecAndPerp)
        );
        assert_eq!(
            relation_summary(&w("RL"), &w("LR")),
            Ok(RelationSummary::SuccAndPerp)
        );
        assert_eq!(
            relation_summary(&w("XR"), &w("RX")),
            Ok(RelationSummary::PerpOnly)
        );
        assert_eq!(
            relation_summary(&w("X"), &w("R")),
            Ok(RelationSummary::Unrelated)
        );
        assert_eq!(
            relation_summary(&w("XL"), &w("RR")),
            Ok(RelationSummary::Prec)
        );
        assert!(!RelationSummary::Unrelated.is_related());
    }

    #[test]
    fn compatibility() {
        assert!(!compatible(&w("LR"), &w("RL")));
        assert!(!compatible(&w("RL"), &w("LR")));
        for s in ["L", "RRX", "XLXR"] {
            assert!(compatible(&Word::empty(), &w(s)));
        }
        assert!(compatible(&w("XL"), &w("RR")));
        // (L,R) present but a later position decreases.
        assert!(!compatible(&w("LR"), &w("RX")));
    }

    #[test]
    fn closures_and_levels() {
        let s: WordSet = [w("XR")].into_iter().collect();
        let expected: WordSet = [w("-"), w("X"), w("XR")].into_iter().collect();
        assert_eq!(closure(&s), expected);

        let s = [w("XR"), w("RXX")];
        assert_eq!(level(&closure(&s), 2), vec![w("XR"), w("RX")]);

        assert!(!is_prefix_antichain(&[w("X"), w("XR")]));
        assert!(is_prefix_antichain(&[w("XR"), w("RXX")]));
        assert!(is_prefix_antichain(&[Word::empty()]));
    }

    #[test]
    fn append_extensions() {
        assert_eq!(
            append(&[w("X"), w("R")], &w("LR")),
            Ok(vec![w("XL"), w("RR")])
        );
        assert_eq!(append(&[Word::empty()], &w("X")), Ok(vec![w("X")]));
        assert_eq!(
            append(&[w("X"), w("R")], &w("RX")),
            Ok(vec![w("XR"), w("RX")])
        );
        assert!(matches!(
            append(&[w("X")], &w("LR")),
            Err(WordError::ExtensionSize { .. })
        ));
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(pw("$0$0$1").substitute(&pw("LR")).unwrap(), pw("LLR"));
        assert_eq!(pw("$0X$1R").substitute(&pw("R")).unwrap(), pw("RX"));
        assert_eq!(pw("RR$0").substitute(&pw("-")).unwrap(), pw("RR"));
        assert!(pw("$0").substitute(&pw("LL")).is_err());
        // Parameters of the substituted word carry through.
        assert_eq!(pw("$0L$1$0").substitute(&pw("X$0")).unwrap(), pw("XL$0X"));
    }

    #[test]
    fn parameter_word_ordering_is_enforced() {
        assert!("$1$0".parse::<ParameterWord>().is_err());
        assert_eq!(pw("L$0$0$1X").param_count(), 2);
        assert_eq!(pw("L$0$0$1X").to_string(), "L$0$0$1X");
        assert_eq!(pw("LXR").to_word(), Some(w("LXR")));
    }

    #[test]
    fn text_form_round_trip() {
        assert_eq!(Word::empty().to_string(), "-");
        assert_eq!(w("RXX").to_string(), "RXX");
        assert!("LQ".parse::<Word>().is_err());
        assert_eq!(Word::all_of_length(2).len(), 9);
        assert!(Word::all_of_length(2).windows(2).all(|p| p[0] < p[1]));
    }
}
