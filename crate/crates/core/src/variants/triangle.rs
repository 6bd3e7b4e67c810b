//! Triangle-free diaries over `{0, 1}` and the graph `G^△` on binary words.

use std::collections::BTreeSet;
use std::fmt;

use super::{closure_levels, is_isomorphic_graph, Alphabet, BinaryWord, FiniteGraph, VariantError};

/// Orients a pair so the first word is not longer.
fn by_length<'a>(u: &'a BinaryWord, v: &'a BinaryWord) -> (&'a BinaryWord, &'a BinaryWord) {
    if u.len() <= v.len() {
        (u, v)
    } else {
        (v, u)
    }
}

fn common_one_below(u: &BinaryWord, v: &BinaryWord, n: usize) -> bool {
    (0..n).any(|i| u.bits()[i] && v.bits()[i])
}

/// Adjacency in `G^△`: for `|u| < |v|`, `v_{|u|} = 1` and `u`, `v` share no
/// `1` below `|u|`.
pub fn tri_adjacent(u: &BinaryWord, v: &BinaryWord) -> Result<bool, VariantError> {
    if u.len() == v.len() {
        return Err(VariantError::EqualLengths(u.len()));
    }
    let (u, v) = by_length(u, v);
    Ok(v.bits()[u.len()] && !common_one_below(u, v, u.len()))
}

/// `u ⊥ v` with `|u| ≤ |v|`: a common `1` below `|u|`, or no `1` in `v`
/// below `|u|`, or no `1` in `u` at all.
pub fn tri_perp(u: &BinaryWord, v: &BinaryWord) -> bool {
    let (u, v) = by_length(u, v);
    let m = u.len();
    common_one_below(u, v, m) || !v.bits()[..m].contains(&true) || !u.bits().contains(&true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriEvent {
    Leaf(BinaryWord),
    Split(BinaryWord),
    FirstNeighbour,
    NewPerp(BinaryWord, BinaryWord),
}

impl fmt::Display for TriEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = |w: &BinaryWord| w.display(Alphabet::Bits).to_string();
        match self {
            TriEvent::Leaf(w) => write!(f, "Leaf({})", d(w)),
            TriEvent::Split(w) => write!(f, "Split({})", d(w)),
            TriEvent::FirstNeighbour => f.write_str("FirstNeighbour"),
            TriEvent::NewPerp(v, w) => write!(f, "NewPerp({}, {})", d(v), d(w)),
        }
    }
}

fn sorted(mut v: Vec<BinaryWord>) -> Vec<BinaryWord> {
    v.sort();
    v
}

/// Every event applicable at level `cur` (of length `i`) with its successor
/// level, in the order Leaf, Split, FirstNeighbour, New ⊥.
fn successors(cur: &[BinaryWord]) -> Vec<(TriEvent, Vec<BinaryWord>)> {
    let i = cur.first().map_or(0, BinaryWord::len);
    let zero = BinaryWord::zeros(i);
    let mut out = Vec::new();
    for w in cur {
        if *w == zero {
            continue;
        }
        let near: Vec<&BinaryWord> = cur.iter().filter(|z| *z != w && !tri_perp(z, w)).collect();
        let pairwise = near
            .iter()
            .enumerate()
            .all(|(a, u)| near[a + 1..].iter().all(|v| tri_perp(u, v)));
        if pairwise && cur.len() > 1 {
            let next = cur
                .iter()
                .filter(|z| *z != w)
                .map(|z| z.push(!tri_perp(z, w)))
                .collect();
            out.push((TriEvent::Leaf(w.clone()), sorted(next)));
        }
    }
    for w in cur {
        let mut next: Vec<BinaryWord> = cur.iter().map(|z| z.push(false)).collect();
        next.push(w.push(true));
        out.push((TriEvent::Split(w.clone()), sorted(next)));
    }
    if cur.contains(&zero) {
        let next = cur.iter().map(|z| z.push(*z == zero)).collect();
        out.push((TriEvent::FirstNeighbour, sorted(next)));
    }
    for (a, v) in cur.iter().enumerate() {
        for w in &cur[a + 1..] {
            if *v != zero && *w != zero && !tri_perp(v, w) {
                let next = cur.iter().map(|z| z.push(z == v || z == w)).collect();
                out.push((TriEvent::NewPerp(v.clone(), w.clone()), sorted(next)));
            }
        }
    }
    out
}

/// Checks that `words` is a triangle-free diary and returns its events.
pub fn tri_validate(words: &[BinaryWord]) -> Result<Vec<TriEvent>, VariantError> {
    let (_, levels) = closure_levels(words)?;
    let mut events = Vec::new();
    for l in 0..levels.len() - 1 {
        let matches: Vec<TriEvent> = successors(&levels[l])
            .into_iter()
            .filter(|(_, next)| *next == levels[l + 1])
            .map(|(e, _)| e)
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

/// The graph `G^△` induces on `words` (vertices in lex order).
pub fn leaf_graph(words: &[BinaryWord]) -> FiniteGraph {
    let sorted = sorted(words.to_vec());
    let mut edges = Vec::new();
    for (a, u) in sorted.iter().enumerate() {
        for (b, v) in sorted.iter().enumerate().skip(a + 1) {
            if u.len() != v.len() && tri_adjacent(u, v).expect("different lengths") {
                edges.push((a, b));
            }
        }
    }
    FiniteGraph::new(sorted.len(), &edges).expect("vertices in range")
}

/// All triangle-free diaries with words of length at most `max_levels` whose
/// leaves induce a copy of `h`.
pub fn tri_enumerate(
    h: &FiniteGraph,
    max_levels: usize,
) -> Result<Vec<Vec<BinaryWord>>, VariantError> {
    h.check_triangle_free()?;
    if h.is_empty() {
        return Ok(Vec::new());
    }
    fn go(
        h: &FiniteGraph,
        max_levels: usize,
        cur: &[BinaryWord],
        leaves: &mut Vec<BinaryWord>,
        out: &mut BTreeSet<Vec<BinaryWord>>,
    ) -> Result<(), VariantError> {
        if cur.len() == 1 && leaves.len() + 1 == h.len() {
            let mut s = leaves.clone();
            s.push(cur[0].clone());
            let s = sorted(s);
            if tri_validate(&s).is_ok() && is_isomorphic_graph(h, &leaf_graph(&s)).is_some() {
                out.insert(s);
            }
        }
        if cur[0].len() >= max_levels {
            return Ok(());
        }
        let mut seen = BTreeSet::new();
        for (e, next) in successors(cur) {
            if leaves.len() + next.len() > h.len() || !seen.insert(next.clone()) {
                continue;
            }
            if let TriEvent::Leaf(w) = &e {
                leaves.push(w.clone());
                go(h, max_levels, &next, leaves, out)?;
                leaves.pop();
            } else {
                go(h, max_levels, &next, leaves, out)?;
            }
        }
        Ok(())
    }
    let mut out = BTreeSet::new();
    go(
        h,
        max_levels,
        &[BinaryWord::empty()],
        &mut Vec::new(),
        &mut out,
    )?;
    Ok(out.into_iter().collect())
}

/// `|T^△(H)|·|Aut(H)|` restricted to diaries of depth at most `max_levels`.
/// The literal definition admits arbitrarily deep diaries, so this is only a
/// lower bound.
pub fn tri_degree_lower_bound(h: &FiniteGraph, max_levels: usize) -> Result<u64, VariantError> {
    let found = tri_enumerate(h, max_levels)?.len() as u64;
    Ok(found * h.automorphism_count()?)
}
