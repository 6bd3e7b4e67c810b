//! Devlin embedding types: binary diaries with only Leaf and Splitting
//! events.

use std::collections::BTreeSet;
use std::fmt;

use super::{closure_levels, Alphabet, BinaryWord, VariantError};

/// `devlin_enumerate` bound.
pub const MAX_DEVLIN_SIZE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DevlinEvent {
    Leaf(BinaryWord),
    Split(BinaryWord),
}

impl fmt::Display for DevlinEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DevlinEvent::Leaf(w) => write!(f, "Leaf({})", w.display(Alphabet::LR)),
            DevlinEvent::Split(w) => write!(f, "Split({})", w.display(Alphabet::LR)),
        }
    }
}

fn apply(cur: &[BinaryWord], e: &DevlinEvent) -> Vec<BinaryWord> {
    match e {
        DevlinEvent::Leaf(w) => cur
            .iter()
            .filter(|z| *z != w)
            .map(|z| z.push(false))
            .collect(),
        DevlinEvent::Split(w) => {
            let mut out = Vec::with_capacity(cur.len() + 1);
            for z in cur {
                match z.cmp(w) {
                    std::cmp::Ordering::Less => out.push(z.push(false)),
                    std::cmp::Ordering::Equal => {
                        out.push(z.push(false));
                        out.push(z.push(true));
                    }
                    std::cmp::Ordering::Greater => out.push(z.push(true)),
                }
            }
            out
        }
    }
}

fn candidates(cur: &[BinaryWord]) -> impl Iterator<Item = DevlinEvent> + '_ {
    let leaves = cur
        .iter()
        .filter(move |_| cur.len() > 1)
        .cloned()
        .map(DevlinEvent::Leaf);
    leaves.chain(cur.iter().cloned().map(DevlinEvent::Split))
}

/// Checks that `words` is a Devlin embedding type and returns its events.
pub fn devlin_validate(words: &[BinaryWord]) -> Result<Vec<DevlinEvent>, VariantError> {
    let (_, levels) = closure_levels(words)?;
    let mut events = Vec::new();
    for l in 0..levels.len() - 1 {
        let matches: Vec<DevlinEvent> = candidates(&levels[l])
            .filter(|e| apply(&levels[l], e) == levels[l + 1])
            .collect();
        match matches.len() {
            0 => return Err(VariantError::InvalidLevel { level: l }),
            1 => events.extend(matches),
            _ => {
                let names: Vec<String> = matches.iter().map(ToString::to_string).collect();
                return Err(VariantError::AmbiguousLevel {
                    level: l,
                    events: names.join(", "),
                });
            }
        }
    }
    Ok(events)
}

/// `T'(n)`: all Devlin embedding types with `n` words, sorted.
pub fn devlin_enumerate(n: usize) -> Result<Vec<Vec<BinaryWord>>, VariantError> {
    if n > MAX_DEVLIN_SIZE {
        return Err(VariantError::TooLarge {
            what: "devlin_enumerate",
            max: MAX_DEVLIN_SIZE,
            n,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    fn go(
        n: usize,
        cur: &[BinaryWord],
        leaves: &mut Vec<BinaryWord>,
        out: &mut BTreeSet<Vec<BinaryWord>>,
    ) -> Result<(), VariantError> {
        if cur.len() == 1 && leaves.len() + 1 == n {
            let mut s = leaves.clone();
            s.push(cur[0].clone());
            s.sort();
            devlin_validate(&s)?;
            out.insert(s);
            return Ok(());
        }
        for e in candidates(cur) {
            if matches!(e, DevlinEvent::Split(_)) && leaves.len() + cur.len() >= n {
                continue;
            }
            let next = apply(cur, &e);
            if let DevlinEvent::Leaf(w) = &e {
                leaves.push(w.clone());
            }
            go(n, &next, leaves, out)?;
            if matches!(e, DevlinEvent::Leaf(_)) {
                leaves.pop();
            }
        }
        Ok(())
    }
    let mut out = BTreeSet::new();
    go(n, &[BinaryWord::empty()], &mut Vec::new(), &mut out)?;
    Ok(out.into_iter().collect())
}
