//! Poset-diaries: the four level events, the validator, the exhaustive
//! enumerator of labeled diaries and the degree counts built on it.

mod enumerate;
mod level;

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::envelopes;
use crate::posets::{is_isomorphic, word_poset, FinitePoset, PosetError};
use crate::words::{closure_levels, is_prefix_antichain, Letter, Word};

pub use enumerate::{
    big_ramsey_degree, count_diaries, enumerate_diaries, enumerate_labeled_diaries,
    for_each_labeled_diary, is_enumerated, sample_labeled_diary, sum_over_size, sum_over_size_with,
    DiaryCounts, EnumOptions, MAX_SUM_SIZE_DEFAULT,
};
pub use level::{check_level_axioms, level_sets_isomorphic, Axiom, AxiomViolation, LevelStructure};

use level::LevelRelations;

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiaryError {
    #[error("a diary must contain at least one word")]
    Empty,
    #[error("{0} is an initial segment of {1}")]
    NotAntichain(Word, Word),
    #[error("level {level} matches none of the four events")]
    InvalidLevel { level: usize },
    #[error("level {level} matches more than one event: {}", join(.events))]
    AmbiguousLevel { level: usize, events: Vec<Event> },
    #[error("{} words share the maximal length: {}", .0.len(), join(.0))]
    MultipleMaximal(Vec<Word>),
    #[error("not a level: {0}")]
    NotALevel(String),
    #[error("event {event} not applicable: condition {condition} fails{}", detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default())]
    SideCondition {
        event: Event,
        condition: SideCondition,
        detail: Option<String>,
    },
    #[error("poset vertex {0} has no word in the diary")]
    LabelMissing(usize),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("{what} is limited to {max} vertices, got {n}")]
    TooLarge {
        what: &'static str,
        max: usize,
        n: usize,
    },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

/// The side condition that made an event inapplicable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideCondition {
    /// A named word is not on the level.
    Membership,
    /// `v <lex w` is required.
    LexOrder,
    /// Leaf: the word is related to every other word. New ⊥/≺: the pair is
    /// unrelated.
    Relatedness,
    A2,
    B1,
    B2,
}

impl fmt::Display for SideCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SideCondition::Membership => "membership",
            SideCondition::LexOrder => "lex order",
            SideCondition::Relatedness => "relatedness",
            SideCondition::A2 => "(A2)",
            SideCondition::B1 => "(B1)",
            SideCondition::B2 => "(B2)",
        };
        f.write_str(s)
    }
}

/// The event performed by one level of a diary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Event {
    Leaf(Word),
    Split(Word),
    NewPerp(Word, Word),
    NewPrec(Word, Word),
}

impl Event {
    pub fn kind(&self) -> &'static str {
        match self {
            Event::Leaf(_) => "leaf",
            Event::Split(_) => "split",
            Event::NewPerp(..) => "new-perp",
            Event::NewPrec(..) => "new-prec",
        }
    }

    pub fn words(&self) -> Vec<&Word> {
        match self {
            Event::Leaf(w) | Event::Split(w) => vec![w],
            Event::NewPerp(v, w) | Event::NewPrec(v, w) => vec![v, w],
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Leaf(w) => write!(f, "Leaf({w})"),
            Event::Split(w) => write!(f, "Split({w})"),
            Event::NewPerp(v, w) => write!(f, "NewPerp({v}, {w})"),
            Event::NewPrec(v, w) => write!(f, "NewPrec({v}, {w})"),
        }
    }
}

/// An event together with the level it happens on, serialized as
/// `{"level": …, "kind": …, "words": […]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelEvent {
    pub level: usize,
    pub event: Event,
}

impl Serialize for LevelEvent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("LevelEvent", 3)?;
        s.serialize_field("level", &self.level)?;
        s.serialize_field("kind", self.event.kind())?;
        s.serialize_field("words", &self.event.words())?;
        s.end()
    }
}

pub fn event_log_json(events: &[Event]) -> String {
    let log: Vec<LevelEvent> = events
        .iter()
        .enumerate()
        .map(|(level, e)| LevelEvent {
            level,
            event: e.clone(),
        })
        .collect();
    serde_json::to_string(&log).expect("event log serializes")
}

fn check_level(cur: &[Word]) -> Result<(), DiaryError> {
    if let Some(first) = cur.first() {
        for pair in cur.windows(2) {
            if pair[0] >= pair[1] || pair[1].len() != first.len() {
                return Err(DiaryError::NotALevel(format!(
                    "{} and {} are not a sorted level",
                    pair[0], pair[1]
                )));
            }
        }
    }
    Ok(())
}

/// Successor level for `e`, with every side condition checked.
pub fn apply_event(cur: &[Word], e: &Event) -> Result<Vec<Word>, DiaryError> {
    check_level(cur)?;
    let rel = LevelRelations::new(cur);
    apply_event_with(&rel, e)
}

fn apply_event_with(rel: &LevelRelations<'_>, e: &Event) -> Result<Vec<Word>, DiaryError> {
    let cur = rel.words;
    let fail = |condition, detail: Option<String>| DiaryError::SideCondition {
        event: e.clone(),
        condition,
        detail,
    };
    let index = |w: &Word| {
        cur.binary_search(w).map_err(|_| {
            fail(
                SideCondition::Membership,
                Some(format!("{w} is not on the level")),
            )
        })
    };
    match e {
        Event::Leaf(w) => {
            let i = index(w)?;
            if let Some(j) = (0..cur.len()).find(|&j| j != i && !rel.related(i, j)) {
                return Err(fail(
                    SideCondition::Relatedness,
                    Some(format!("{w} and {} are unrelated", cur[j])),
                ));
            }
            Ok(cur
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, z)| z.push(Letter::X))
                .collect())
        }
        Event::Split(w) => {
            let i = index(w)?;
            let mut out = Vec::with_capacity(cur.len() + 1);
            for (j, z) in cur.iter().enumerate() {
                if j < i {
                    out.push(z.push(Letter::X));
                } else if j == i {
                    out.push(z.push(Letter::X));
                    out.push(z.push(Letter::R));
                } else {
                    out.push(z.push(Letter::R));
                }
            }
            Ok(out)
        }
        Event::NewPerp(v, w) | Event::NewPrec(v, w) => {
            let (i, j) = (index(v)?, index(w)?);
            if i >= j {
                return Err(fail(
                    SideCondition::LexOrder,
                    Some(format!("{v} is not lex-below {w}")),
                ));
            }
            if rel.related(i, j) {
                return Err(fail(
                    SideCondition::Relatedness,
                    Some(format!("{v} and {w} are already related")),
                ));
            }
            if matches!(e, Event::NewPerp(..)) {
                if let Some(k) = (i + 1..j).find(|&k| !rel.perp(k, i) && !rel.perp(k, j)) {
                    return Err(fail(
                        SideCondition::A2,
                        Some(format!("{} is ⊥ to neither", cur[k])),
                    ));
                }
                Ok(cur
                    .iter()
                    .enumerate()
                    .map(|(k, z)| {
                        let c = if k < i {
                            Letter::X
                        } else if k == i {
                            Letter::R
                        } else if k < j {
                            if rel.perp(k, i) {
                                Letter::X
                            } else {
                                Letter::R
                            }
                        } else if k == j {
                            Letter::X
                        } else {
                            Letter::R
                        };
                        z.push(c)
                    })
                    .collect())
            } else {
                if let Some(k) = (0..i).find(|&k| !rel.prec(k, j) && !rel.perp(k, i)) {
                    return Err(fail(SideCondition::B1, Some(format!("{} fails", cur[k]))));
                }
                if let Some(k) = (j + 1..cur.len()).find(|&k| !rel.prec(i, k) && !rel.perp(j, k)) {
                    return Err(fail(SideCondition::B2, Some(format!("{} fails", cur[k]))));
                }
                Ok(cur
                    .iter()
                    .enumerate()
                    .map(|(k, z)| {
                        let c = if k < i {
                            if rel.perp(k, i) {
                                Letter::X
                            } else {
                                Letter::L
                            }
                        } else if k == i {
                            Letter::L
                        } else if k < j {
                            Letter::X
                        } else if k == j {
                            Letter::R
                        } else if rel.perp(j, k) {
                            Letter::X
                        } else {
                            Letter::R
                        };
                        z.push(c)
                    })
                    .collect())
            }
        }
    }
}

/// Every event applicable at `cur`, in the canonical order Leaf, Split,
/// New ⊥, New ≺ (words and pairs in lex order).
pub fn applicable_events(cur: &[Word]) -> Vec<(Event, Vec<Word>)> {
    let rel = LevelRelations::new(cur);
    let mut candidates = Vec::new();
    for w in cur {
        candidates.push(Event::Leaf(w.clone()));
    }
    for w in cur {
        candidates.push(Event::Split(w.clone()));
    }
    for (i, v) in cur.iter().enumerate() {
        for w in &cur[i + 1..] {
            candidates.push(Event::NewPerp(v.clone(), w.clone()));
        }
    }
    for (i, v) in cur.iter().enumerate() {
        for w in &cur[i + 1..] {
            candidates.push(Event::NewPrec(v.clone(), w.clone()));
        }
    }
    candidates
        .into_iter()
        .filter_map(|e| {
            if matches!(e, Event::Leaf(_)) && cur.len() < 2 {
                return None;
            }
            apply_event_with(&rel, &e).ok().map(|next| (e, next))
        })
        .collect()
}

/// Identifies the unique event turning level `cur` into level `next`.
/// `level` is only used for error reporting.
pub fn classify_transition(cur: &[Word], next: &[Word], level: usize) -> Result<Event, DiaryError> {
    check_level(cur)?;
    check_level(next)?;
    let rel = LevelRelations::new(cur);
    let mut matches = Vec::new();
    let mut try_event = |e: Event| {
        if let Ok(out) = apply_event_with(&rel, &e) {
            if out == next {
                matches.push(e);
            }
        }
    };
    // Only events whose successor can equal `next` are tried: the dropped
    // word of a Leaf, the duplicated word of a Split, and pairs whose last
    // letters fit New ⊥ (R, X) or New ≺ (L, R).
    let parent = |u: &Word| u.prefix(u.len().saturating_sub(1));
    if next.len() + 1 == cur.len() {
        let i = (0..next.len())
            .find(|&k| parent(&next[k]) != cur[k])
            .unwrap_or(next.len());
        try_event(Event::Leaf(cur[i].clone()));
    } else if next.len() == cur.len() + 1 {
        if let Some(i) = (0..cur.len()).find(|&k| parent(&next[k]) == parent(&next[k + 1])) {
            try_event(Event::Split(cur[i].clone()));
        }
    } else if next.len() == cur.len() && (0..cur.len()).all(|k| parent(&next[k]) == cur[k]) {
        let last: Vec<Letter> = next
            .iter()
            .map(|u| *u.letters().last().expect("nonempty successor"))
            .collect();
        for (i, v) in cur.iter().enumerate() {
            for (j, w) in cur.iter().enumerate().skip(i + 1) {
                match (last[i], last[j]) {
                    (Letter::R, Letter::X) => try_event(Event::NewPerp(v.clone(), w.clone())),
                    (Letter::L, Letter::R) => try_event(Event::NewPrec(v.clone(), w.clone())),
                    _ => {}
                }
            }
        }
    }
    match matches.len() {
        0 => Err(DiaryError::InvalidLevel { level }),
        1 => Ok(matches.pop().expect("one match")),
        _ => Err(DiaryError::AmbiguousLevel {
            level,
            events: matches,
        }),
    }
}

/// Checks that `words` is a poset-diary and returns its event log, one event
/// per level below the maximal length. Exactly one word may attain the
/// maximal length.
pub fn validate_diary<'a, I>(words: I) -> Result<Vec<Event>, DiaryError>
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut sorted: Vec<Word> = words.into_iter().cloned().collect();
    sorted.sort();
    sorted.dedup();
    if sorted.is_empty() {
        return Err(DiaryError::Empty);
    }
    if !is_prefix_antichain(&sorted) {
        let (a, b) = sorted
            .iter()
            .flat_map(|a| sorted.iter().map(move |b| (a, b)))
            .find(|(a, b)| a.is_proper_prefix_of(b))
            .expect("antichain violation has a witness");
        return Err(DiaryError::NotAntichain(a.clone(), b.clone()));
    }
    let max_len = sorted.iter().map(Word::len).max().unwrap_or(0);
    let maximal: Vec<Word> = sorted
        .iter()
        .filter(|w| w.len() == max_len)
        .cloned()
        .collect();
    if maximal.len() > 1 {
        return Err(DiaryError::MultipleMaximal(maximal));
    }
    let levels = closure_levels(&sorted);
    (0..max_len)
        .map(|l| classify_transition(&levels[l], &levels[l + 1], l))
        .collect()
}

/// A diary `S` together with an isomorphism from a poset onto `(S, ⪯)`,
/// stored as `labeling[vertex] = word`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledDiary {
    pub words: Vec<Word>,
    pub labeling: Vec<Word>,
}

impl LabeledDiary {
    pub fn new(labeling: Vec<Word>) -> LabeledDiary {
        let mut words = labeling.clone();
        words.sort();
        LabeledDiary { words, labeling }
    }

    /// Validates the word set and checks that the labeling is an
    /// isomorphism from `q`.
    pub fn check(&self, q: &FinitePoset) -> Result<Vec<Event>, DiaryError> {
        let events = validate_diary(&self.words)?;
        if self.labeling.len() != q.len() {
            return Err(DiaryError::Inconsistent(format!(
                "labeling has {} words for {} vertices",
                self.labeling.len(),
                q.len()
            )));
        }
        for a in 0..q.len() {
            for b in 0..q.len() {
                let coded = crate::words::precedes(&self.labeling[a], &self.labeling[b]).is_some();
                if coded != q.less(a, b) {
                    return Err(DiaryError::Inconsistent(format!(
                        "labeling does not code the order between vertices {a} and {b}"
                    )));
                }
            }
        }
        Ok(events)
    }

    /// The labeled-diary text: `label<TAB>word` per vertex.
    pub fn to_text(&self) -> String {
        self.labeling
            .iter()
            .enumerate()
            .map(|(v, w)| format!("{v}\t{w}\n"))
            .collect()
    }
}

/// The coloring of a sub-embedding: restrict a labeled diary to `subset`,
/// take the embedding type of the selected words and relabel the subset's
/// vertices (in increasing order) by their images.
pub fn color_embedding(
    base: &LabeledDiary,
    poset: &FinitePoset,
    subset: &[usize],
) -> Result<(FinitePoset, LabeledDiary), DiaryError> {
    if subset.is_empty() {
        return Err(DiaryError::Empty);
    }
    let mut vertices = subset.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    let mut selected = Vec::with_capacity(vertices.len());
    for &v in &vertices {
        selected.push(
            base.labeling
                .get(v)
                .cloned()
                .ok_or(DiaryError::LabelMissing(v))?,
        );
    }
    let (_, tau_map) = envelopes::tau(&selected);
    let labeling: Vec<Word> = selected.iter().map(|w| tau_map[w].clone()).collect();
    let induced = poset.induced(&vertices);
    let diary = LabeledDiary::new(labeling);
    diary.check(&induced)?;
    Ok((induced, diary))
}

/// `(S, ⪯) ≅ q`, checked independently of any labeling.
pub fn codes_poset(words: &[Word], q: &FinitePoset) -> bool {
    let (p, _) = word_poset(words);
    is_isomorphic(&p, q).is_some()
}
