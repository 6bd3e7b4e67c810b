//! Level structures `(S, ≤lex, ⪯, ⊴)` on sets of equal-length words.

use std::fmt;

use serde::Serialize;

use crate::words::{
    compatible, dominated_unchecked, perp_unchecked, precedes, relation_summary_unchecked,
    RelationSummary, Word,
};

use super::DiaryError;

/// A lex-sorted set of same-length words with its pairwise relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStructure {
    words: Vec<Word>,
    relations: Vec<Vec<RelationSummary>>,
}

impl LevelStructure {
    pub fn new<I: IntoIterator<Item = Word>>(words: I) -> Result<LevelStructure, DiaryError> {
        let mut words: Vec<Word> = words.into_iter().collect();
        words.sort();
        words.dedup();
        if let Some(first) = words.first() {
            if let Some(bad) = words.iter().find(|w| w.len() != first.len()) {
                return Err(DiaryError::NotALevel(format!(
                    "{bad} has length {} but {first} has length {}",
                    bad.len(),
                    first.len()
                )));
            }
        }
        let relations = words
            .iter()
            .map(|u| {
                words
                    .iter()
                    .map(|v| relation_summary_unchecked(u, v))
                    .collect()
            })
            .collect();
        Ok(LevelStructure { words, relations })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn relation(&self, i: usize, j: usize) -> RelationSummary {
        self.relations[i][j]
    }

    pub fn prec(&self, i: usize, j: usize) -> bool {
        matches!(
            self.relations[i][j],
            RelationSummary::Prec | RelationSummary::PrecAndPerp
        )
    }

    pub fn perp(&self, i: usize, j: usize) -> bool {
        matches!(
            self.relations[i][j],
            RelationSummary::PerpOnly | RelationSummary::PrecAndPerp | RelationSummary::SuccAndPerp
        )
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.relations[i][j].is_related()
    }

    pub fn dominated(&self, i: usize, j: usize) -> bool {
        dominated_unchecked(&self.words[i], &self.words[j])
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.words.binary_search(w).ok()
    }

    /// Isomorphism as structures with `≤lex`, `⪯` and `⊴`. The only
    /// lex-preserving bijection is the one matching sorted positions.
    pub fn isomorphic_to(&self, other: &LevelStructure) -> bool {
        level_sets_isomorphic(&self.words, &other.words)
    }
}

/// Compares the level structures of two lex-sorted same-length word lists.
pub fn level_sets_isomorphic(a: &[Word], b: &[Word]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    for i in 0..a.len() {
        for j in 0..a.len() {
            if i == j {
                continue;
            }
            if precedes(&a[i], &a[j]).is_some() != precedes(&b[i], &b[j]).is_some() {
                return false;
            }
            if dominated_unchecked(&a[i], &a[j]) != dominated_unchecked(&b[i], &b[j]) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witnesses: Vec<Word>,
}

/// Lists every violation of P1–P7 with a witnessing pair or triple. P7 is
/// only checked when all words are pairwise compatible.
pub fn check_level_axioms(ls: &LevelStructure) -> Vec<AxiomViolation> {
    let words = ls.words();
    let n = words.len();
    let mut out = Vec::new();
    let mut report = |axiom, idx: &[usize]| {
        out.push(AxiomViolation {
            axiom,
            witnesses: idx.iter().map(|&i| words[i].clone()).collect(),
        })
    };
    let prec = |i: usize, j: usize| precedes(&words[i], &words[j]).is_some();
    let dom = |i: usize, j: usize| dominated_unchecked(&words[i], &words[j]);
    let all_compatible = (0..n).all(|i| (i + 1..n).all(|j| compatible(&words[i], &words[j])));

    for i in 0..n {
        if prec(i, i) {
            report(Axiom::P1, &[i]);
        }
        if !dom(i, i) {
            report(Axiom::P2, &[i]);
        }
        for j in 0..n {
            if i != j {
                if prec(i, j) && prec(j, i) {
                    report(Axiom::P1, &[i, j]);
                }
                if dom(i, j) && dom(j, i) {
                    report(Axiom::P2, &[i, j]);
                }
                if (words[i] < words[j]) == (words[j] < words[i]) {
                    report(Axiom::P3, &[i, j]);
                }
                if prec(i, j) && words[i] > words[j] {
                    report(Axiom::P4, &[i, j]);
                }
                if dom(i, j) && words[i] > words[j] {
                    report(Axiom::P5, &[i, j]);
                }
                if all_compatible && prec(i, j) && !dom(i, j) {
                    report(Axiom::P7, &[i, j]);
                }
            }
            for k in 0..n {
                if prec(i, j) && prec(j, k) && !prec(i, k) {
                    report(Axiom::P1, &[i, j, k]);
                }
                if dom(i, j) && dom(j, k) && !dom(i, k) {
                    report(Axiom::P2, &[i, j, k]);
                }
                if (prec(i, j) && dom(j, k) || dom(i, j) && prec(j, k)) && !prec(i, k) {
                    report(Axiom::P6, &[i, j, k]);
                }
            }
        }
    }
    out
}

/// Pairwise relation snapshot used by the event code: for `i < j` in lex
/// order, whether the pair is `≺`, `⊥` or related at all.
pub(crate) struct LevelRelations<'a> {
    pub words: &'a [Word],
    prec: Vec<bool>,
    perp: Vec<bool>,
}

impl<'a> LevelRelations<'a> {
    pub fn new(words: &'a [Word]) -> Self {
        let n = words.len();
        let mut prec = vec![false; n * n];
        let mut perp = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    prec[i * n + j] = precedes(&words[i], &words[j]).is_some();
                    perp[i * n + j] = perp_unchecked(&words[i], &words[j]);
                }
            }
        }
        LevelRelations { words, prec, perp }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn prec(&self, i: usize, j: usize) -> bool {
        self.prec[i * self.len() + j]
    }

    pub fn perp(&self, i: usize, j: usize) -> bool {
        self.perp[i * self.len() + j]
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.prec(i, j) || self.prec(j, i) || self.perp(i, j)
    }
}
