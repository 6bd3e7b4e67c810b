//! Coding finite posets by words: the embedding `φ`, its diary-ization `ψ`
//! and the words of 1-types over an initial segment.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::diaries::{apply_event, level_sets_isomorphic, DiaryError, Event, LabeledDiary};
use crate::posets::FinitePoset;
use crate::words::{closure, closure_levels, perp, precedes, Letter, Word, WordSet};

/// Largest poset accepted by [`diarize`].
pub const MAX_DIARIZE_VERTICES: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodingError {
    #[error("vertex {vertex} out of range for a poset on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("level {level} out of range for a poset on {n} vertices")]
    LevelOutOfRange { level: usize, n: usize },
    #[error("diarize is limited to {max} vertices, got {n}")]
    TooLarge { max: usize, n: usize },
    #[error("diarize stalled at source level {level}: {detail}")]
    Stalled { level: usize, detail: String },
    #[error(transparent)]
    Diary(#[from] DiaryError),
}

/// `φ(j)`: for `i < j` the pair at positions `2i, 2i+1` is `LL` if `j <_P i`,
/// `RR` if `i <_P j` and `XX` otherwise; positions `2j, 2j+1` hold `LR`.
pub fn phi(p: &FinitePoset, j: usize) -> Result<Word, CodingError> {
    if j >= p.len() {
        return Err(CodingError::VertexOutOfRange {
            vertex: j,
            n: p.len(),
        });
    }
    let mut letters = Vec::with_capacity(2 * j + 2);
    for i in 0..j {
        let c = if p.less(j, i) {
            Letter::L
        } else if p.less(i, j) {
            Letter::R
        } else {
            Letter::X
        };
        letters.extend([c, c]);
    }
    letters.extend([Letter::L, Letter::R]);
    Ok(Word::new(letters))
}

fn phi_words(p: &FinitePoset) -> Vec<Word> {
    (0..p.len())
        .map(|j| phi(p, j).expect("vertex in range"))
        .collect()
}

/// `closure(φ[P])`.
pub fn phi_tree(p: &FinitePoset) -> WordSet {
    closure(&phi_words(p))
}

/// A poset-diary coding `p`, built level by level from the tree of `φ`.
///
/// At each source level the previous images are extended and then the first
/// applicable step is repeated: close a finished word with a Leaf event,
/// split the lex-least collision, add a missing `⊥`, add a missing `≺`.
/// Pairs are tried in lex order of the lower word, then the upper one.
pub fn diarize(p: &FinitePoset) -> Result<LabeledDiary, CodingError> {
    let n = p.len();
    if n > MAX_DIARIZE_VERTICES {
        return Err(CodingError::TooLarge {
            max: MAX_DIARIZE_VERTICES,
            n,
        });
    }
    if n == 0 {
        return Err(DiaryError::Empty.into());
    }
    let phis = phi_words(p);
    let levels = closure_levels(&phis);
    let mut labels: Vec<Option<Word>> = vec![None; n];
    // Image of each word on the previous source level, aligned with levels[l - 1].
    let mut prev_images = vec![Word::empty()];
    for l in 1..levels.len() {
        let source = &levels[l];
        let stalled = |detail: String| CodingError::Stalled { level: l, detail };
        // The current image level: images of the previous source level.
        let mut cur: Vec<Word> = prev_images
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let parent_image = |u: &Word| -> Word {
            let idx = levels[l - 1]
                .binary_search(&u.prefix(l - 1))
                .expect("parent on previous level");
            prev_images[idx].clone()
        };
        let mut images: Vec<Word> = source.iter().map(parent_image).collect();

        if let Some(j) = (0..n).find(|&j| phis[j].len() == l - 1) {
            let w = parent_image(&phis[j]);
            let next = apply_event(&cur, &Event::Leaf(w.clone()))?;
            labels[j] = Some(w);
            for img in images.iter_mut() {
                *img = img.push(Letter::X);
            }
            cur = next;
        }

        while let Some((event, letters)) = next_step(source, &images) {
            cur =
                apply_event(&cur, &event).map_err(|e| stalled(format!("{event} rejected: {e}")))?;
            for (img, c) in images.iter_mut().zip(letters) {
                *img = img.push(c);
            }
        }
        let injective = images.windows(2).all(|w| w[0] < w[1]);
        if !injective || !level_sets_isomorphic(source, &images) {
            return Err(stalled(
                "image is not isomorphic to the source level".into(),
            ));
        }
        prev_images = images;
    }
    let last = (0..n)
        .find(|&j| labels[j].is_none())
        .expect("one word is still open");
    let top = levels.len() - 1;
    let idx = levels[top]
        .binary_search(&phis[last])
        .map_err(|_| CodingError::Stalled {
            level: top,
            detail: "last word is not on the top level".into(),
        })?;
    labels[last] = Some(prev_images[idx].clone());
    let diary = LabeledDiary::new(
        labels
            .into_iter()
            .map(|w| w.expect("all labeled"))
            .collect(),
    );
    diary.check(p)?;
    Ok(diary)
}

/// The next step for the current source level, if any, with the letter
/// each source word's image receives.
fn next_step(source: &[Word], images: &[Word]) -> Option<(Event, Vec<Letter>)> {
    let n = source.len();
    if let Some(k) = (0..n).find(|&k| {
        images
            .iter()
            .enumerate()
            .any(|(m, img)| m != k && *img == images[k])
    }) {
        let letters = (0..n)
            .map(|m| if m <= k { Letter::X } else { Letter::R })
            .collect();
        return Some((Event::Split(images[k].clone()), letters));
    }
    // Images are now distinct and lex-sorted, so they form the level itself.
    let relation_step = |make: fn(Word, Word) -> Event, src: &dyn Fn(&Word, &Word) -> bool| {
        for a in 0..n {
            for b in a + 1..n {
                if src(&source[a], &source[b]) && !src(&images[a], &images[b]) {
                    let event = make(images[a].clone(), images[b].clone());
                    if let Ok(next) = apply_event(images, &event) {
                        let letters = next
                            .iter()
                            .map(|w| *w.letters().last().expect("extended word"))
                            .collect();
                        return Some((event, letters));
                    }
                }
            }
        }
        None
    };
    relation_step(Event::NewPerp, &|u, v| perp(u, v).unwrap_or(false))
        .or_else(|| relation_step(Event::NewPrec, &|u, v| precedes(u, v).is_some()))
}

/// Words of length `n` over `Σ` realizable as 1-types over the vertices
/// `0, …, n−1`, and the word of vertex `n` itself when `n < |P|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeWords {
    pub words: Vec<Word>,
    pub coding_word: Option<Word>,
}

/// Letter `i` of a type word is `R` if vertex `i` lies below the new point,
/// `L` if above it and `X` otherwise.
pub fn type_words(p: &FinitePoset, n: usize) -> Result<TypeWords, CodingError> {
    if n > p.len() {
        return Err(CodingError::LevelOutOfRange {
            level: n,
            n: p.len(),
        });
    }
    let ok = |w: &Word| {
        let l = w.letters();
        (0..n).all(|i| {
            (0..n).all(|j| {
                !(p.less(i, j) && l[j] == Letter::R && l[i] != Letter::R)
                    && !(p.less(i, j) && l[i] == Letter::L && l[j] != Letter::L)
                    && !(l[i] == Letter::R && l[j] == Letter::L && !p.less(i, j))
            })
        })
    };
    let words = Word::all_of_length(n).into_iter().filter(ok).collect();
    let coding_word = (n < p.len()).then(|| {
        Word::new(
            (0..n)
                .map(|i| {
                    if p.less(i, n) {
                        Letter::R
                    } else if p.less(n, i) {
                        Letter::L
                    } else {
                        Letter::X
                    }
                })
                .collect(),
        )
    });
    Ok(TypeWords { words, coding_word })
}
