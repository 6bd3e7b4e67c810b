//! Interesting levels, embedding types, boring extensions and
//! shape-preserving maps.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::diaries::level_sets_isomorphic;
use crate::words::{append, closure_levels, compatible, Letter, Word, WordError};

/// Largest `|A|` accepted by [`boring_extensions`] (it scans `3^|A|` words).
pub const MAX_BORING_SIZE: usize = 12;
/// Largest level length for [`extend_boring`] and [`lift_boring`].
pub const MAX_ENVELOPE_LEVEL: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnvelopeError {
    #[error("boring extensions need words of positive length")]
    ZeroLength,
    #[error("{what} is limited to {max}, got {n}")]
    TooLarge {
        what: &'static str,
        max: usize,
        n: usize,
    },
    #[error("not a level: {0}")]
    NotALevel(String),
    #[error("{0} and {1} are incompatible")]
    Incompatible(Word, Word),
    #[error("{0} is not a boring extension")]
    NotBoring(Word),
    #[error("extension has length {found}, expected {expected}")]
    ExtensionSize { expected: usize, found: usize },
    #[error("constructed extension {0} failed verification")]
    Verification(Word),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// The interesting levels `I(S)`. Index `i` stands for the transition from
/// level `i` to level `i + 1` of the closure.
pub fn interesting_levels<'a, I>(words: I) -> BTreeSet<usize>
where
    I: IntoIterator<Item = &'a Word>,
{
    let members: Vec<&Word> = words.into_iter().collect();
    let levels = closure_levels(members.iter().copied());
    let lengths: BTreeSet<usize> = members.iter().map(|w| w.len()).collect();
    let mut out = BTreeSet::new();
    for i in 0..levels.len() {
        let next: &[Word] = levels.get(i + 1).map(Vec::as_slice).unwrap_or(&[]);
        if lengths.contains(&i)
            || !level_sets_isomorphic(&levels[i], next)
            || breaks_compatibility(next, i)
        {
            out.insert(i);
        }
    }
    out
}

/// Some pair on `next` is incompatible while its length-`i` prefixes are not.
fn breaks_compatibility(next: &[Word], i: usize) -> bool {
    next.iter().enumerate().any(|(a, u)| {
        next[a + 1..]
            .iter()
            .any(|v| !compatible(u, v) && compatible(&u.prefix(i), &v.prefix(i)))
    })
}

/// Deletes the characters of `w` whose index is not in `levels`.
pub fn restrict_to_levels(w: &Word, levels: &BTreeSet<usize>) -> Word {
    Word::new(
        w.letters()
            .iter()
            .enumerate()
            .filter(|(i, _)| levels.contains(i))
            .map(|(_, &c)| c)
            .collect(),
    )
}

/// The embedding type `τ(S)` (lex-sorted) and the map `τ_S`.
pub fn tau<'a, I>(words: I) -> (Vec<Word>, BTreeMap<Word, Word>)
where
    I: IntoIterator<Item = &'a Word>,
{
    let members: BTreeSet<&Word> = words.into_iter().collect();
    let levels = interesting_levels(members.iter().copied());
    let map: BTreeMap<Word, Word> = members
        .iter()
        .map(|&w| (w.clone(), restrict_to_levels(w, &levels)))
        .collect();
    let image: BTreeSet<Word> = map.values().cloned().collect();
    (image.into_iter().collect(), map)
}

fn check_base(a: &[Word]) -> Result<usize, EnvelopeError> {
    let len = a
        .first()
        .map(Word::len)
        .ok_or_else(|| EnvelopeError::NotALevel("empty set".into()))?;
    if len == 0 {
        return Err(EnvelopeError::ZeroLength);
    }
    for pair in a.windows(2) {
        if pair[0] >= pair[1] || pair[1].len() != len {
            return Err(EnvelopeError::NotALevel(format!(
                "{} and {} are not a sorted level",
                pair[0], pair[1]
            )));
        }
    }
    for (i, u) in a.iter().enumerate() {
        if let Some(v) = a[i + 1..].iter().find(|v| !compatible(u, v)) {
            return Err(EnvelopeError::Incompatible(u.clone(), v.clone()));
        }
    }
    Ok(len)
}

/// Whether appending `e` to the sorted level `a` leaves level `|a|` of the
/// closure uninteresting: same level structure, and no compatible pair
/// becomes incompatible.
pub fn is_boring(a: &[Word], e: &Word) -> Result<bool, EnvelopeError> {
    let b = append(a, e)?;
    if !level_sets_isomorphic(a, &b) {
        return Ok(false);
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if compatible(&a[i], &a[j]) && !compatible(&b[i], &b[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Π_A`: all boring extensions of a sorted, pairwise compatible level `A`
/// of positive length, in lex order.
pub fn boring_extensions(a: &[Word]) -> Result<Vec<Word>, EnvelopeError> {
    check_base(a)?;
    if a.len() > MAX_BORING_SIZE {
        return Err(EnvelopeError::TooLarge {
            what: "boring extension scan",
            max: MAX_BORING_SIZE,
            n: a.len(),
        });
    }
    let mut out = Vec::new();
    for e in Word::all_of_length(a.len()) {
        if is_boring(a, &e)? {
            out.push(e);
        }
    }
    Ok(out)
}

/// `{u, v} ≅ {u⌢c, v⌢d}` as two-element level structures.
fn pair_preserved(u: &Word, v: &Word, c: Letter, d: Letter) -> bool {
    let (u2, v2) = (u.push(c), v.push(d));
    level_sets_isomorphic(&sorted_pair(u, v), &sorted_pair(&u2, &v2))
}

fn sorted_pair(u: &Word, v: &Word) -> [Word; 2] {
    if u <= v {
        [u.clone(), v.clone()]
    } else {
        [v.clone(), u.clone()]
    }
}

/// Extends a boring extension `e` of `s ⊆ Σ^ℓ` to a boring extension of all
/// of `Σ^ℓ` that agrees with `e` on `s`. Words outside `s` get the first of
/// `X`, `L`, `R` that keeps every compatible pair with `s` isomorphic.
pub fn extend_boring(s: &[Word], e: &Word) -> Result<Word, EnvelopeError> {
    let len = check_base(s)?;
    if len > MAX_ENVELOPE_LEVEL {
        return Err(EnvelopeError::TooLarge {
            what: "extend_boring level",
            max: MAX_ENVELOPE_LEVEL,
            n: len,
        });
    }
    if e.len() != s.len() {
        return Err(EnvelopeError::ExtensionSize {
            expected: s.len(),
            found: e.len(),
        });
    }
    if !is_boring(s, e)? {
        return Err(EnvelopeError::NotBoring(e.clone()));
    }
    let all = Word::all_of_length(len);
    let mut out = Vec::with_capacity(all.len());
    for v in &all {
        let c = match s.binary_search(v) {
            Ok(i) => e.letters()[i],
            Err(_) => [Letter::X, Letter::L, Letter::R]
                .into_iter()
                .find(|&c| {
                    s.iter()
                        .zip(e.letters())
                        .all(|(u, &eu)| !compatible(u, v) || pair_preserved(u, v, eu, c))
                })
                .ok_or_else(|| EnvelopeError::Verification(e.clone()))?,
        };
        out.push(c);
    }
    let extended = Word::new(out);
    if !is_boring(&all, &extended)? {
        return Err(EnvelopeError::Verification(extended));
    }
    Ok(extended)
}

/// Lifts a boring extension of `Σ^ℓ` to `Σ^{ℓ'}` by copying `e_j` to every
/// word whose length-`ℓ` prefix is the `j`-th word of `Σ^ℓ`.
pub fn lift_boring(e: &Word, target_len: usize) -> Result<Word, EnvelopeError> {
    if target_len > MAX_ENVELOPE_LEVEL {
        return Err(EnvelopeError::TooLarge {
            what: "lift_boring level",
            max: MAX_ENVELOPE_LEVEL,
            n: target_len,
        });
    }
    let len = (0..=target_len)
        .find(|&l| 3usize.pow(l as u32) == e.len())
        .ok_or(EnvelopeError::ExtensionSize {
            expected: 3usize.pow(target_len as u32),
            found: e.len(),
        })?;
    if len == 0 {
        return Err(EnvelopeError::ZeroLength);
    }
    if !is_boring(&Word::all_of_length(len), e)? {
        return Err(EnvelopeError::NotBoring(e.clone()));
    }
    let block = 3usize.pow((target_len - len) as u32);
    let lifted = Word::new(
        (0..3usize.pow(target_len as u32))
            .map(|i| e.letters()[i / block])
            .collect(),
    );
    if !is_boring(&Word::all_of_length(target_len), &lifted)? {
        return Err(EnvelopeError::Verification(lifted));
    }
    Ok(lifted)
}

/// `τ_S(w) = τ_{f[S]}(f(w))` for every `w` in the domain of `f`.
pub fn is_shape_preserving(f: &BTreeMap<Word, Word>) -> bool {
    let (_, tau_s) = tau(f.keys());
    let (_, tau_image) = tau(f.values());
    f.iter().all(|(w, fw)| tau_s[w] == tau_image[fw])
}

/// The map `d`: every letter repeated three times.
pub fn triple(w: &Word) -> Word {
    Word::new(w.letters().iter().flat_map(|&c| [c, c, c]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    fn ws(s: &[&str]) -> Vec<Word> {
        let mut v: Vec<Word> = s.iter().map(|x| w(x)).collect();
        v.sort();
        v
    }

    #[test]
    fn interesting_examples() {
        assert_eq!(
            interesting_levels(&ws(&["XR", "RXX"])),
            BTreeSet::from([0, 1, 2, 3])
        );
        assert_eq!(interesting_levels(&ws(&["XX"])), BTreeSet::from([2]));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&ws(&["XX"])).0, vec![Word::empty()]);
        assert_eq!(tau(&ws(&["XR", "RXX"])).0, ws(&["XR", "RXX"]));
        assert_eq!(tau(&ws(&["XR"])).0, vec![Word::empty()]);
        let (_, map) = tau(&ws(&["XR", "RXX"]));
        assert_eq!(map[&w("RXX")], w("RXX"));
    }

    #[test]
    fn boring_examples() {
        assert_eq!(
            boring_extensions(&ws(&["X"])).unwrap(),
            ws(&["L", "X", "R"])
        );
        let pi = boring_extensions(&ws(&["X", "R"])).unwrap();
        assert!(pi.contains(&w("XX")) && pi.contains(&w("XR")));
        assert!(!pi.contains(&w("LR")) && !pi.contains(&w("RX")));
        for e in boring_extensions(&ws(&["XR", "RX"])).unwrap() {
            let b = append(&ws(&["XR", "RX"]), &e).unwrap();
            assert!(crate::words::perp(&b[0], &b[1]).unwrap());
        }
        assert_eq!(
            boring_extensions(&[Word::empty()]),
            Err(EnvelopeError::ZeroLength)
        );
    }

    #[test]
    fn extend_examples() {
        let all = Word::all_of_length(1);
        for e in boring_extensions(&all).unwrap() {
            assert_eq!(extend_boring(&all, &e).unwrap(), e);
        }
        let e = extend_boring(&ws(&["X"]), &w("R")).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e.letters()[1], Letter::R);
        let s = ws(&["XL", "RR"]);
        for e in boring_extensions(&s).unwrap() {
            let e2 = extend_boring(&s, &e).unwrap();
            assert!(is_boring(&Word::all_of_length(2), &e2).unwrap());
        }
        assert!(matches!(
            extend_boring(&ws(&["X", "R"]), &w("LR")),
            Err(EnvelopeError::NotBoring(_))
        ));
    }

    #[test]
    fn lift_examples() {
        let all = Word::all_of_length(1);
        for e in boring_extensions(&all).unwrap() {
            assert_eq!(lift_boring(&e, 1).unwrap(), e);
            let lifted = lift_boring(&e, 2).unwrap();
            assert_eq!(lifted.len(), 9);
            for (i, &c) in lifted.letters().iter().enumerate() {
                assert_eq!(c, e.letters()[i / 3]);
            }
        }
        assert!(lift_boring(&w("X"), 5).is_err());
    }

    #[test]
    fn shape_preserving_examples() {
        let s: Vec<Word> = (0..2).flat_map(Word::all_of_length).collect();
        let id: BTreeMap<Word, Word> = s.iter().map(|u| (u.clone(), u.clone())).collect();
        assert!(is_shape_preserving(&id));
        let f: BTreeMap<Word, Word> = [("-", "-"), ("L", "LL"), ("X", "XR"), ("R", "RR")]
            .iter()
            .map(|(a, b)| (w(a), w(b)))
            .collect();
        assert!(!is_shape_preserving(&f));
        let d: BTreeMap<Word, Word> = (0..3)
            .flat_map(Word::all_of_length)
            .map(|u| (u.clone(), triple(&u)))
            .collect();
        assert!(is_shape_preserving(&d));
    }

    #[test]
    fn triple_examples() {
        assert_eq!(triple(&Word::empty()), Word::empty());
        assert_eq!(triple(&w("L")), w("LLL"));
        assert_eq!(triple(&w("XR")), w("XXXRRR"));
    }
}
