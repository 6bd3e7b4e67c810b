//! Depth-first enumeration of labeled diaries over abstract states.
//!
//! A state is the current closure level seen as lex-ordered nodes. Each node
//! carries the set of poset vertices whose final word extends it, and every
//! node pair carries its relation (unrelated, `≺`, `⊥`). Words are only
//! materialized when diaries are emitted.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use super::{apply_event, validate_diary, DiaryError, Event, LabeledDiary};
use crate::posets::{automorphism_count, enumerate_posets, FinitePoset};
use crate::words::{closure_levels, Word};

/// Hard cap on the enumerator (nodes are stored in fixed arrays).
pub const MAX_ENUM_VERTICES: usize = 8;
/// `sum_over_size` refuses larger sizes unless asked explicitly.
pub const MAX_SUM_SIZE_DEFAULT: usize = 4;

const N: usize = MAX_ENUM_VERTICES;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    /// Posets above this size are rejected.
    pub max_vertices: usize,
    /// Worker threads for counting; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            max_vertices: 5,
            threads: None,
        }
    }
}

impl EnumOptions {
    pub fn single_threaded() -> Self {
        EnumOptions {
            threads: Some(1),
            ..Default::default()
        }
    }

    fn check(&self, q: &FinitePoset) -> Result<(), DiaryError> {
        let max = self.max_vertices.min(MAX_ENUM_VERTICES);
        if q.len() > max {
            return Err(DiaryError::TooLarge {
                what: "diary enumeration",
                max,
                n: q.len(),
            });
        }
        if q.is_empty() {
            return Err(DiaryError::Empty);
        }
        Ok(())
    }

    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, DiaryError> {
        match self.threads {
            None => Ok(f()),
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t.max(1))
                    .build()
                    .map_err(|e| DiaryError::Inconsistent(format!("thread pool: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rel {
    Unrelated,
    Prec,
    Perp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    Leaf(usize),
    /// Node index and the vertex set sent to the `X` branch.
    Split(usize, u64),
    Perp(usize, usize),
    Prec(usize, usize),
}

#[derive(Clone, Copy)]
struct State {
    len: usize,
    nodes: [u64; N],
    /// `rel[i][j]` for `i < j`.
    rel: [[Rel; N]; N],
}

struct Ctx {
    below: Vec<u64>,
    above: Vec<u64>,
}

impl Ctx {
    fn new(q: &FinitePoset) -> Ctx {
        Ctx {
            below: (0..q.len()).map(|a| q.below_mask(a)).collect(),
            above: (0..q.len()).map(|a| q.above_mask(a)).collect(),
        }
    }

    fn all_below(&self, lower: u64, upper: u64) -> bool {
        bits(lower).all(|a| self.above[a] & upper == upper)
    }

    fn all_incomparable(&self, x: u64, y: u64) -> bool {
        bits(x).all(|a| (self.above[a] | self.below[a]) & y == 0)
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

impl State {
    fn initial(n: usize) -> State {
        let mut nodes = [0; N];
        nodes[0] = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        State {
            len: 1,
            nodes,
            rel: [[Rel::Unrelated; N]; N],
        }
    }

    fn rel(&self, i: usize, j: usize) -> Rel {
        if i < j {
            self.rel[i][j]
        } else {
            self.rel[j][i]
        }
    }

    fn perp(&self, i: usize, j: usize) -> bool {
        self.rel(i, j) == Rel::Perp
    }

    /// `node i ≺ node j` (only possible for `i < j`).
    fn prec(&self, i: usize, j: usize) -> bool {
        i < j && self.rel[i][j] == Rel::Prec
    }

    fn is_terminal(&self) -> bool {
        self.len == 1 && self.nodes[0].count_ones() == 1
    }

    fn moves(&self, ctx: &Ctx, out: &mut Vec<Move>) {
        out.clear();
        let n = self.len;
        if n > 1 {
            for i in 0..n {
                if self.nodes[i].count_ones() == 1
                    && (0..n).all(|j| j == i || self.rel(i, j) != Rel::Unrelated)
                {
                    out.push(Move::Leaf(i));
                }
            }
        }
        if n < N {
            for i in 0..n {
                let v = self.nodes[i];
                if v.count_ones() < 2 {
                    continue;
                }
                let mut s: u64 = 0;
                loop {
                    s = s.wrapping_sub(v) & v;
                    if s == 0 {
                        break;
                    }
                    if s != v && bits(s).all(|a| ctx.below[a] & (v & !s) == 0) {
                        out.push(Move::Split(i, s));
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.rel[i][j] == Rel::Unrelated
                    && (i + 1..j).all(|k| self.perp(k, i) || self.perp(k, j))
                    && ctx.all_incomparable(self.nodes[i], self.nodes[j])
                {
                    out.push(Move::Perp(i, j));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.rel[i][j] == Rel::Unrelated
                    && (0..i).all(|k| self.prec(k, j) || self.perp(k, i))
                    && (j + 1..n).all(|k| self.prec(i, k) || self.perp(j, k))
                    && ctx.all_below(self.nodes[i], self.nodes[j])
                {
                    out.push(Move::Prec(i, j));
                }
            }
        }
    }

    fn apply(&self, m: Move) -> State {
        let mut s = *self;
        match m {
            Move::Leaf(i) => {
                let map = |k: usize| if k < i { k } else { k + 1 };
                s.len = self.len - 1;
                for a in 0..s.len {
                    s.nodes[a] = self.nodes[map(a)];
                    for b in a + 1..s.len {
                        s.rel[a][b] = self.rel[map(a)][map(b)];
                    }
                }
            }
            Move::Split(i, left) => {
                let map = |k: usize| if k <= i { k } else { k - 1 };
                s.len = self.len + 1;
                for a in 0..s.len {
                    s.nodes[a] = self.nodes[map(a)];
                    for b in a + 1..s.len {
                        s.rel[a][b] = if a == i && b == i + 1 {
                            Rel::Unrelated
                        } else {
                            self.rel(map(a), map(b))
                        };
                    }
                }
                s.nodes[i] = left;
                s.nodes[i + 1] = self.nodes[i] & !left;
            }
            Move::Perp(i, j) => s.rel[i][j] = Rel::Perp,
            Move::Prec(i, j) => s.rel[i][j] = Rel::Prec,
        }
        s
    }
}

fn count_from(ctx: &Ctx, s: &State, buf: &mut Vec<Vec<Move>>, depth: usize) -> u64 {
    if s.is_terminal() {
        return 1;
    }
    if buf.len() <= depth {
        buf.push(Vec::new());
    }
    let mut moves = std::mem::take(&mut buf[depth]);
    s.moves(ctx, &mut moves);
    let mut total = 0;
    for &m in &moves {
        total += count_from(ctx, &s.apply(m), buf, depth + 1);
    }
    buf[depth] = moves;
    total
}

/// Number of labeled diaries of `q` (each `(S, f)` counted once).
fn count_labeled(q: &FinitePoset) -> u64 {
    let ctx = Ctx::new(q);
    // Expand breadth-first into a frontier, then count subtrees in parallel.
    let mut done = 0u64;
    let mut frontier = vec![State::initial(q.len())];
    let mut moves = Vec::new();
    while !frontier.is_empty() && frontier.len() < 512 {
        let mut next = Vec::new();
        for s in &frontier {
            if s.is_terminal() {
                done += 1;
                continue;
            }
            s.moves(&ctx, &mut moves);
            next.extend(moves.iter().map(|&m| s.apply(m)));
        }
        frontier = next;
    }
    done + frontier
        .par_iter()
        .map(|s| count_from(&ctx, s, &mut Vec::new(), 0))
        .sum::<u64>()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiaryCounts {
    /// `|T^lab(Q)|`, the big Ramsey degree.
    pub labeled: u64,
    /// `|T(Q)|`.
    pub unlabeled: u64,
    pub aut: u64,
}

/// Labeled and unlabeled diary counts of `q`.
pub fn count_diaries(q: &FinitePoset, opts: &EnumOptions) -> Result<DiaryCounts, DiaryError> {
    opts.check(q)?;
    let aut = automorphism_count(q)?;
    let labeled = opts.run(|| count_labeled(q))?;
    if labeled % aut != 0 {
        return Err(DiaryError::Inconsistent(format!(
            "{labeled} labeled diaries is not a multiple of |Aut| = {aut}"
        )));
    }
    Ok(DiaryCounts {
        labeled,
        unlabeled: labeled / aut,
        aut,
    })
}

/// `|T(Q)|·|Aut(Q)|`.
pub fn big_ramsey_degree(q: &FinitePoset, opts: &EnumOptions) -> Result<u64, DiaryError> {
    count_diaries(q, opts).map(|c| c.labeled)
}

/// Total number of diaries over all isomorphism classes of `n`-element
/// posets. Sizes above [`MAX_SUM_SIZE_DEFAULT`] need [`sum_over_size_with`].
pub fn sum_over_size(n: usize, opts: &EnumOptions) -> Result<u64, DiaryError> {
    if n > MAX_SUM_SIZE_DEFAULT {
        return Err(DiaryError::TooLarge {
            what: "sum over size (default bound)",
            max: MAX_SUM_SIZE_DEFAULT,
            n,
        });
    }
    sum_over_size_with(n, opts)
}

/// As [`sum_over_size`] without the default size bound.
pub fn sum_over_size_with(n: usize, opts: &EnumOptions) -> Result<u64, DiaryError> {
    let mut total = 0;
    for q in enumerate_posets(n)? {
        total += count_diaries(&q, opts)?.unlabeled;
    }
    Ok(total)
}

/// Tracks words alongside an abstract state.
#[derive(Clone)]
struct Tracked {
    state: State,
    words: Vec<Word>,
    labels: Vec<Option<Word>>,
}

impl Tracked {
    fn initial(n: usize) -> Tracked {
        Tracked {
            state: State::initial(n),
            words: vec![Word::empty()],
            labels: vec![None; n],
        }
    }

    fn event(&self, m: Move) -> Event {
        match m {
            Move::Leaf(i) => Event::Leaf(self.words[i].clone()),
            Move::Split(i, _) => Event::Split(self.words[i].clone()),
            Move::Perp(i, j) => Event::NewPerp(self.words[i].clone(), self.words[j].clone()),
            Move::Prec(i, j) => Event::NewPrec(self.words[i].clone(), self.words[j].clone()),
        }
    }

    fn apply(&self, m: Move) -> Result<Tracked, DiaryError> {
        let words = apply_event(&self.words, &self.event(m)).map_err(|e| {
            DiaryError::Inconsistent(format!("abstract move rejected at word level: {e}"))
        })?;
        let mut labels = self.labels.clone();
        if let Move::Leaf(i) = m {
            labels[self.state.nodes[i].trailing_zeros() as usize] = Some(self.words[i].clone());
        }
        Ok(Tracked {
            state: self.state.apply(m),
            words,
            labels,
        })
    }

    fn finish(&self, q: &FinitePoset) -> Result<LabeledDiary, DiaryError> {
        let mut labels = self.labels.clone();
        labels[self.state.nodes[0].trailing_zeros() as usize] = Some(self.words[0].clone());
        let labeling: Vec<Word> = labels
            .into_iter()
            .map(|w| w.expect("every vertex ends in a leaf"))
            .collect();
        let diary = LabeledDiary::new(labeling);
        diary.check(q)?;
        Ok(diary)
    }
}

fn visit<F>(ctx: &Ctx, q: &FinitePoset, t: &Tracked, f: &mut F) -> Result<(), DiaryError>
where
    F: FnMut(LabeledDiary) -> Result<(), DiaryError>,
{
    if t.state.is_terminal() {
        return f(t.finish(q)?);
    }
    let mut moves = Vec::new();
    t.state.moves(ctx, &mut moves);
    for m in moves {
        visit(ctx, q, &t.apply(m)?, f)?;
    }
    Ok(())
}

/// Calls `f` on every labeled diary of `q` in depth-first order (Leaf,
/// Split, New ⊥, New ≺ at each level). Every diary is re-validated at word
/// level before it is passed on.
pub fn for_each_labeled_diary<F>(
    q: &FinitePoset,
    opts: &EnumOptions,
    mut f: F,
) -> Result<(), DiaryError>
where
    F: FnMut(LabeledDiary) -> Result<(), DiaryError>,
{
    opts.check(q)?;
    visit(&Ctx::new(q), q, &Tracked::initial(q.len()), &mut f)
}

/// All labeled diaries of `q`, sorted by (word set, labeling).
pub fn enumerate_labeled_diaries(
    q: &FinitePoset,
    opts: &EnumOptions,
) -> Result<Vec<LabeledDiary>, DiaryError> {
    let mut out = Vec::new();
    for_each_labeled_diary(q, opts, |d| {
        out.push(d);
        Ok(())
    })?;
    out.sort();
    Ok(out)
}

/// The unlabeled diary set `T(Q)`, each as a lex-sorted word list.
pub fn enumerate_diaries(
    q: &FinitePoset,
    opts: &EnumOptions,
) -> Result<BTreeSet<Vec<Word>>, DiaryError> {
    let mut out = BTreeSet::new();
    for_each_labeled_diary(q, opts, |d| {
        out.insert(d.words);
        Ok(())
    })?;
    Ok(out)
}

/// Whether the enumerator of `q` emits `d`. The search only follows moves
/// whose successor level agrees with the closure of `d`.
pub fn is_enumerated(
    q: &FinitePoset,
    d: &LabeledDiary,
    opts: &EnumOptions,
) -> Result<bool, DiaryError> {
    fn go(
        ctx: &Ctx,
        q: &FinitePoset,
        t: &Tracked,
        target: &[Vec<Word>],
        d: &LabeledDiary,
    ) -> Result<bool, DiaryError> {
        if t.state.is_terminal() {
            return Ok(t.finish(q)? == *d);
        }
        let depth = t.words[0].len() + 1;
        let Some(next) = target.get(depth) else {
            return Ok(false);
        };
        let mut moves = Vec::new();
        t.state.moves(ctx, &mut moves);
        for m in moves {
            let child = t.apply(m)?;
            if child.words == *next && go(ctx, q, &child, target, d)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
    opts.check(q)?;
    if d.labeling.len() != q.len() {
        return Ok(false);
    }
    let target = closure_levels(&d.words);
    go(&Ctx::new(q), q, &Tracked::initial(q.len()), &target, d)
}

/// A random labeled diary of `q`, found by depth-first search with shuffled
/// move order. Not uniform over `T^lab(Q)`.
pub fn sample_labeled_diary<R: Rng + ?Sized>(
    q: &FinitePoset,
    rng: &mut R,
) -> Result<LabeledDiary, DiaryError> {
    fn go<R: Rng + ?Sized>(
        ctx: &Ctx,
        q: &FinitePoset,
        t: &Tracked,
        rng: &mut R,
    ) -> Result<Option<LabeledDiary>, DiaryError> {
        if t.state.is_terminal() {
            return t.finish(q).map(Some);
        }
        let mut moves = Vec::new();
        t.state.moves(ctx, &mut moves);
        moves.shuffle(rng);
        for m in moves {
            if let Some(d) = go(ctx, q, &t.apply(m)?, rng)? {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }
    EnumOptions {
        max_vertices: MAX_ENUM_VERTICES,
        threads: None,
    }
    .check(q)?;
    let d = go(&Ctx::new(q), q, &Tracked::initial(q.len()), rng)?;
    let d = d.ok_or_else(|| DiaryError::Inconsistent("no diary found".into()))?;
    validate_diary(&d.words)?;
    Ok(d)
}
