//! Independent oracles for the integration tests. Nothing here calls into the
//! library's relation or event code; words are plain byte vectors with
//! `0 = L`, `1 = X`, `2 = R`.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use poset_diary::posets::FinitePoset;
use poset_diary::words::Word;
use rand::Rng;

pub const L: u8 = 0;
pub const X: u8 = 1;
pub const R: u8 = 2;

pub type OWord = Vec<u8>;

pub fn ow(s: &str) -> OWord {
    if s == "-" {
        return Vec::new();
    }
    s.chars()
        .map(|c| match c {
            'L' => L,
            'X' => X,
            'R' => R,
            other => panic!("bad letter {other}"),
        })
        .collect()
}

pub fn show(u: &[u8]) -> String {
    if u.is_empty() {
        return "-".into();
    }
    u.iter().map(|&c| ['L', 'X', 'R'][c as usize]).collect()
}

pub fn to_word(u: &[u8]) -> Word {
    poset_diary::words::w(&show(u))
}

pub fn from_word(u: &Word) -> OWord {
    ow(&u.to_string())
}

pub fn random_word<G: Rng>(rng: &mut G, max_len: usize) -> OWord {
    let n = rng.gen_range(0..=max_len);
    random_word_of_len(rng, n)
}

pub fn random_word_of_len<G: Rng>(rng: &mut G, n: usize) -> OWord {
    (0..n).map(|_| rng.gen_range(0..3u8)).collect()
}

pub fn all_words(n: usize) -> Vec<OWord> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|u: OWord| {
                (0..3u8).map(move |c| {
                    let mut v = u.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

/// Least `i` with `(u_i, v_i) = (L, R)` and `u_j ≤ v_j` below it.
pub fn o_precedes(u: &[u8], v: &[u8]) -> Option<usize> {
    let m = u.len().min(v.len());
    (0..m).find(|&i| u[i] == L && v[i] == R && (0..i).all(|j| u[j] <= v[j]))
}

pub fn o_dominated(u: &[u8], v: &[u8]) -> bool {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).all(|(a, b)| a <= b)
}

pub fn o_perp(u: &[u8], v: &[u8]) -> bool {
    !o_dominated(u, v) && !o_dominated(v, u)
}

pub fn o_related(u: &[u8], v: &[u8]) -> bool {
    o_perp(u, v) || o_precedes(u, v).is_some() || o_precedes(v, u).is_some()
}

pub fn o_compatible(u: &[u8], v: &[u8]) -> bool {
    let (u, v) = if u <= v { (u, v) } else { (v, u) };
    let m = u.len().min(v.len());
    if (0..m).any(|i| u[i] == R && v[i] == L) {
        return false;
    }
    if (0..m).any(|i| u[i] == L && v[i] == R) {
        return (0..m).all(|i| u[i] <= v[i]);
    }
    true
}

fn push_all(level: &[OWord], f: impl Fn(usize, &OWord) -> Option<u8>) -> Vec<OWord> {
    level
        .iter()
        .enumerate()
        .filter_map(|(k, z)| {
            f(k, z).map(|c| {
                let mut y = z.clone();
                y.push(c);
                y
            })
        })
        .collect()
}

/// Successor levels of a sorted level, each with the event kinds (0 Leaf,
/// 1 Split, 2 New ⊥, 3 New ≺) whose side conditions and formula yield it,
/// and the word removed by a Leaf.
fn successors(level: &[OWord]) -> BTreeMap<Vec<OWord>, (BTreeSet<u8>, Option<OWord>)> {
    let n = level.len();
    let mut out: BTreeMap<Vec<OWord>, (BTreeSet<u8>, Option<OWord>)> = BTreeMap::new();
    let mut add = |mut next: Vec<OWord>, kind: u8, leaf: Option<OWord>| {
        next.sort();
        let entry = out.entry(next).or_default();
        entry.0.insert(kind);
        if leaf.is_some() {
            entry.1 = leaf;
        }
    };
    for i in 0..n {
        if n > 1 && (0..n).all(|j| j == i || o_related(&level[i], &level[j])) {
            add(
                push_all(level, |k, _| (k != i).then_some(X)),
                0,
                Some(level[i].clone()),
            );
        }
        let mut next = push_all(level, |k, _| Some(if k <= i { X } else { R }));
        let mut wr = level[i].clone();
        wr.push(R);
        next.push(wr);
        add(next, 1, None);
    }
    for i in 0..n {
        for j in i + 1..n {
            let (v, w) = (&level[i], &level[j]);
            if o_related(v, w) {
                continue;
            }
            if (i + 1..j).all(|k| o_perp(&level[k], v) || o_perp(&level[k], w)) {
                let next = push_all(level, |k, z| {
                    Some(if k < i {
                        X
                    } else if k == i {
                        R
                    } else if k < j {
                        if o_perp(z, v) {
                            X
                        } else {
                            R
                        }
                    } else if k == j {
                        X
                    } else {
                        R
                    })
                });
                add(next, 2, None);
            }
            let b1 = (0..i).all(|k| o_precedes(&level[k], w).is_some() || o_perp(&level[k], v));
            let b2 = (j + 1..n).all(|k| o_precedes(v, &level[k]).is_some() || o_perp(w, &level[k]));
            if b1 && b2 {
                let next = push_all(level, |k, z| {
                    Some(if k < i {
                        if o_perp(z, v) {
                            X
                        } else {
                            L
                        }
                    } else if k == i {
                        L
                    } else if k < j {
                        X
                    } else if k == j {
                        R
                    } else if o_perp(w, z) {
                        X
                    } else {
                        R
                    })
                });
                add(next, 3, None);
            }
        }
    }
    out
}

/// All poset-diaries with exactly `n` words, found by growing closures one
/// level at a time. Without `allow_prec` no New ≺ event is tried.
pub fn naive_diaries(n: usize, allow_prec: bool) -> BTreeSet<Vec<OWord>> {
    let depth = 2 * n - 1 + n * (n - 1) / 2;
    let mut out = BTreeSet::new();
    let mut frontier: BTreeSet<(Vec<OWord>, Vec<OWord>)> = BTreeSet::new();
    frontier.insert((vec![Vec::new()], Vec::new()));
    for _ in 0..=depth {
        let mut next_frontier = BTreeSet::new();
        for (level, done) in &frontier {
            if level.len() == 1 && done.len() + 1 == n {
                let mut s = done.clone();
                s.push(level[0].clone());
                s.sort();
                out.insert(s);
            }
            for (next, (kinds, leaf)) in successors(level) {
                if kinds.len() != 1 || (!allow_prec && kinds.contains(&3)) {
                    continue;
                }
                let mut done = done.clone();
                if let Some(w) = leaf {
                    done.push(w);
                }
                if done.len() + next.len() <= n {
                    next_frontier.insert((next, done));
                }
            }
        }
        frontier = next_frontier;
    }
    out
}

/// Every permutation of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub type Matrix = Vec<Vec<bool>>;

pub fn poset_matrix(q: &FinitePoset) -> Matrix {
    (0..q.len())
        .map(|a| (0..q.len()).map(|b| q.less(a, b)).collect())
        .collect()
}

pub fn word_matrix(words: &[OWord]) -> Matrix {
    words
        .iter()
        .map(|u| words.iter().map(|v| o_precedes(u, v).is_some()).collect())
        .collect()
}

/// A permutation `p` with `a < b ⟺ p[a] < p[b]` from `m` to `n`.
pub fn o_isomorphism(m: &Matrix, n: &Matrix) -> Option<Vec<usize>> {
    if m.len() != n.len() {
        return None;
    }
    let k = m.len();
    permutations(k)
        .into_iter()
        .find(|p| (0..k).all(|a| (0..k).all(|b| m[a][b] == n[p[a]][p[b]])))
}

pub fn o_automorphisms(m: &Matrix) -> usize {
    let k = m.len();
    permutations(k)
        .into_iter()
        .filter(|p| (0..k).all(|a| (0..k).all(|b| m[a][b] == m[p[a]][p[b]])))
        .count()
}

/// Labeled strict orders on `n` points, by brute force over relation sets.
pub fn o_all_strict_orders(n: usize) -> Vec<Matrix> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut m = vec![vec![false; n]; n];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                m[a][b] = true;
            }
        }
        let antisym = (0..n).all(|a| (0..n).all(|b| !(m[a][b] && m[b][a])));
        let trans =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(m[a][b] && m[b][c]) || m[a][c])));
        if antisym && trans {
            out.push(m);
        }
    }
    out
}

/// One representative per isomorphism class of `n`-point posets.
pub fn o_poset_classes(n: usize) -> Vec<Matrix> {
    let mut reps: Vec<Matrix> = Vec::new();
    for m in o_all_strict_orders(n) {
        if !reps.iter().any(|r| o_isomorphism(r, &m).is_some()) {
            reps.push(m);
        }
    }
    reps
}

pub fn matrix_poset(m: &Matrix) -> FinitePoset {
    let pairs: Vec<(usize, usize)> = (0..m.len())
        .flat_map(|a| (0..m.len()).filter(move |&b| m[a][b]).map(move |b| (a, b)))
        .collect();
    FinitePoset::new(m.len(), &pairs).expect("valid strict order")
}

/// A random poset: random forward pairs under a random vertex order.
pub fn random_poset<G: Rng>(rng: &mut G, n: usize) -> FinitePoset {
    let density: f64 = rng.gen_range(0.0..1.0);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((order[i], order[j]));
            }
        }
    }
    FinitePoset::new(n, &pairs).expect("forward pairs are acyclic")
}

/// `A⌢e` on a sorted level keeps the relations of every pair and breaks
/// no compatible pair.
pub fn o_boring(a: &[OWord], e: &[u8]) -> bool {
    assert_eq!(a.len(), e.len());
    let b: Vec<OWord> = a
        .iter()
        .zip(e)
        .map(|(u, &c)| {
            let mut v = u.clone();
            v.push(c);
            v
        })
        .collect();
    for i in 0..a.len() {
        for j in 0..a.len() {
            if i == j {
                continue;
            }
            if (a[i] < a[j]) != (b[i] < b[j])
                || o_precedes(&a[i], &a[j]).is_some() != o_precedes(&b[i], &b[j]).is_some()
                || o_dominated(&a[i], &a[j]) != o_dominated(&b[i], &b[j])
                || (o_compatible(&a[i], &a[j]) && !o_compatible(&b[i], &b[j]))
            {
                return false;
            }
        }
    }
    true
}

type BWords = Vec<Vec<bool>>;

/// Devlin types with `n` words over `{L, R}` (`false = L`), grown level by
/// level from the leaf and split rules.

pub fn naive_devlin(n: usize) -> BTreeSet<Vec<Vec<bool>>> {
    let mut out = BTreeSet::new();
    let mut frontier: BTreeSet<(BWords, BWords)> = BTreeSet::new();
    frontier.insert((vec![Vec::new()], Vec::new()));
    for _ in 0..2 * n {
        let mut next_frontier = BTreeSet::new();
        for (level, done) in &frontier {
            if level.len() == 1 && done.len() + 1 == n {
                let mut s = done.clone();
                s.push(level[0].clone());
                s.sort();
                out.insert(s);
            }
            let ext = |u: &Vec<bool>, b: bool| {
                let mut v = u.clone();
                v.push(b);
                v
            };
            let mut options: BTreeMap<BWords, (usize, Option<Vec<bool>>)> = BTreeMap::new();
            for i in 0..level.len() {
                if level.len() > 1 {
                    let next: Vec<Vec<bool>> = level
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != i)
                        .map(|(_, z)| ext(z, false))
                        .collect();
                    let e = options.entry(next).or_insert((0, None));
                    e.0 += 1;
                    e.1 = Some(level[i].clone());
                }
                let mut next: Vec<Vec<bool>> = level
                    .iter()
                    .enumerate()
                    .map(|(k, z)| ext(z, k > i))
                    .collect();
                next.push(ext(&level[i], true));
                next.sort();
                options.entry(next).or_insert((0, None)).0 += 1;
            }
            for (next, (count, leaf)) in options {
                if count != 1 {
                    continue;
                }
                let mut done = done.clone();
                done.extend(leaf);
                if done.len() + next.len() <= n {
                    next_frontier.insert((next, done));
                }
            }
        }
        frontier = next_frontier;
    }
    out
}

/// Adjacency in the triangle-free coding graph: for `|u| < |v|`, `v_{|u|}`
/// is 1 and `u`, `v` share no 1 below `|u|`.
pub fn o_tri_adjacent(u: &[bool], v: &[bool]) -> bool {
    let (u, v) = if u.len() < v.len() { (u, v) } else { (v, u) };
    u.len() < v.len() && v[u.len()] && (0..u.len()).all(|i| !(u[i] && v[i]))
}
