//! Finite enumerated strict partial orders on `{0, …, n-1}`.

use std::fmt;

use thiserror::Error;

use crate::words::{precedes, Word};

/// Largest poset accepted by [`automorphism_count`].
pub const MAX_AUT_VERTICES: usize = 10;
/// Largest size accepted by [`enumerate_posets`].
pub const MAX_CATALOG_VERTICES: usize = 5;
/// Storage limit: relations are kept as `u64` bit rows.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation has a cycle through vertex {0}")]
    Cycle(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for a poset on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("unknown builtin poset {0:?}")]
    UnknownBuiltin(String),
    #[error("{what} is limited to {max} vertices, got {n}")]
    TooLarge {
        what: &'static str,
        max: usize,
        n: usize,
    },
}

/// A strict partial order; `up[a]` holds the bit of every `b` with `a < b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    n: usize,
    up: Vec<u64>,
}

impl FinitePoset {
    /// Builds the transitive closure of `pairs` (each `(a, b)` meaning
    /// `a < b`), rejecting cycles.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<FinitePoset, PosetError> {
        if n > MAX_VERTICES {
            return Err(PosetError::TooLarge {
                what: "poset storage",
                max: MAX_VERTICES,
                n,
            });
        }
        let mut up = vec![0u64; n];
        for &(a, b) in pairs {
            for v in [a, b] {
                if v >= n {
                    return Err(PosetError::VertexOutOfRange { vertex: v, n });
                }
            }
            up[a] |= 1 << b;
        }
        // Warshall
        for k in 0..n {
            for a in 0..n {
                if up[a] >> k & 1 == 1 {
                    up[a] |= up[k];
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| up[a] >> a & 1 == 1) {
            return Err(PosetError::Cycle(a));
        }
        Ok(FinitePoset { n, up })
    }

    pub fn chain(n: usize) -> FinitePoset {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::new(n, &pairs).expect("chain is acyclic")
    }

    pub fn antichain(n: usize) -> FinitePoset {
        FinitePoset::new(n, &[]).expect("antichain is acyclic")
    }

    /// `chain:n`, `antichain:n`, `diamond`, `vee`, `wedge`, `chain+point`.
    pub fn builtin(name: &str) -> Result<FinitePoset, PosetError> {
        let unknown = || PosetError::UnknownBuiltin(name.to_string());
        if let Some((kind, size)) = name.split_once(':') {
            let n: usize = size.trim().parse().map_err(|_| unknown())?;
            return match kind.trim() {
                "chain" => Ok(FinitePoset::chain(n)),
                "antichain" => Ok(FinitePoset::antichain(n)),
                _ => Err(unknown()),
            };
        }
        let pairs: &[(usize, usize)] = match name.trim() {
            "diamond" => &[(0, 1), (0, 2), (1, 3), (2, 3)],
            "vee" => &[(0, 1), (0, 2)],
            "wedge" => &[(0, 2), (1, 2)],
            "chain+point" => &[(0, 1)],
            _ => return Err(unknown()),
        };
        let n = if name.trim() == "diamond" { 4 } else { 3 };
        FinitePoset::new(n, pairs)
    }

    /// Parses the text format: the first non-comment line is `n`, then one
    /// `i < j` per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<FinitePoset, PosetError> {
        let mut n = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| PosetError::Parse { line: line_no, msg };
            match n {
                None => {
                    n = Some(
                        line.parse::<usize>()
                            .map_err(|_| err(format!("expected vertex count, found {line:?}")))?,
                    );
                }
                Some(count) => {
                    let (a, b) = line
                        .split_once('<')
                        .ok_or_else(|| err(format!("expected `i < j`, found {line:?}")))?;
                    let parse_vertex = |s: &str| {
                        s.trim()
                            .parse::<usize>()
                            .map_err(|_| err(format!("bad vertex {:?}", s.trim())))
                    };
                    let (a, b) = (parse_vertex(a)?, parse_vertex(b)?);
                    for v in [a, b] {
                        if v >= count {
                            return Err(err(format!("vertex {v} out of range (n = {count})")));
                        }
                    }
                    pairs.push((a, b));
                }
            }
        }
        let n = n.ok_or(PosetError::Parse {
            line: 0,
            msg: "missing vertex count".into(),
        })?;
        FinitePoset::new(n, &pairs)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `a <_P b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    /// Bitmask of the elements strictly above `a`.
    pub fn above_mask(&self, a: usize) -> u64 {
        self.up[a]
    }

    /// Bitmask of the elements strictly below `a`.
    pub fn below_mask(&self, a: usize) -> u64 {
        (0..self.n)
            .filter(|&b| self.less(b, a))
            .fold(0, |m, b| m | 1 << b)
    }

    pub fn comparable_pairs(&self) -> usize {
        self.up.iter().map(|m| m.count_ones() as usize).sum()
    }

    /// All pairs `(a, b)` with `a < b`, sorted.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| {
                (0..self.n)
                    .filter(move |&b| self.less(a, b))
                    .map(move |b| (a, b))
            })
            .collect()
    }

    /// The poset obtained by renaming vertex `a` to `perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> FinitePoset {
        let pairs: Vec<_> = self
            .relation_pairs()
            .into_iter()
            .map(|(a, b)| (perm[a], perm[b]))
            .collect();
        FinitePoset::new(self.n, &pairs).expect("relabeling preserves acyclicity")
    }

    /// Induced subposet on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> FinitePoset {
        let mut pairs = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate() {
                if self.less(a, b) {
                    pairs.push((i, j));
                }
            }
        }
        FinitePoset::new(vertices.len(), &pairs).expect("induced order is acyclic")
    }

    /// Relation bits over ordered pairs `(a, b)`, `a ≠ b`, row-major.
    fn relation_code(&self, perm: &[usize]) -> u128 {
        // bit set when perm^{-1}-labelled a < b; read with (0,1) as the most
        // significant pair.
        let mut inv = vec![0; self.n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        let mut code = 0u128;
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b {
                    code = code << 1 | self.less(inv[a], inv[b]) as u128;
                }
            }
        }
        code
    }

    fn is_transitively_closed_order(n: usize, up: &[u64]) -> bool {
        (0..n).all(|a| {
            up[a] >> a & 1 == 0
                && (0..n)
                    .filter(|&b| up[a] >> b & 1 == 1)
                    .all(|b| up[b] & !up[a] == 0)
        })
    }
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinitePoset({}; {:?})", self.n, self.relation_pairs())
    }
}

impl fmt::Display for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (a, b) in self.relation_pairs() {
            writeln!(f, "{a} < {b}")?;
        }
        Ok(())
    }
}

/// A builtin name or the text format.
pub fn load_poset(text: &str) -> Result<FinitePoset, PosetError> {
    match FinitePoset::builtin(text) {
        Ok(p) => Ok(p),
        Err(PosetError::UnknownBuiltin(_))
            if text.contains('\n') || text.trim().parse::<usize>().is_ok() =>
        {
            FinitePoset::parse(text)
        }
        Err(e) => Err(e),
    }
}

/// Visits every isomorphism `p → q` (as a vector `map[v_p] = v_q`) until the
/// visitor returns `false`.
fn for_each_isomorphism(p: &FinitePoset, q: &FinitePoset, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if p.n != q.n || p.comparable_pairs() != q.comparable_pairs() {
        return;
    }
    let sig =
        |x: &FinitePoset, v: usize| (x.below_mask(v).count_ones(), x.above_mask(v).count_ones());
    let p_sig: Vec<_> = (0..p.n).map(|v| sig(p, v)).collect();
    let q_sig: Vec<_> = (0..q.n).map(|v| sig(q, v)).collect();
    {
        let mut a = p_sig.clone();
        let mut b = q_sig.clone();
        a.sort();
        b.sort();
        if a != b {
            return;
        }
    }
    let mut map = vec![usize::MAX; p.n];
    let mut used = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn extend(
        v: usize,
        p: &FinitePoset,
        q: &FinitePoset,
        p_sig: &[(u32, u32)],
        q_sig: &[(u32, u32)],
        map: &mut Vec<usize>,
        used: &mut u64,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if v == p.n {
            return visit(map);
        }
        for t in 0..q.n {
            if *used >> t & 1 == 1 || p_sig[v] != q_sig[t] {
                continue;
            }
            let consistent = (0..v)
                .all(|u| p.less(u, v) == q.less(map[u], t) && p.less(v, u) == q.less(t, map[u]));
            if !consistent {
                continue;
            }
            map[v] = t;
            *used |= 1 << t;
            let go_on = extend(v + 1, p, q, p_sig, q_sig, map, used, visit);
            *used &= !(1 << t);
            map[v] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }

    extend(0, p, q, &p_sig, &q_sig, &mut map, &mut used, visit);
}

/// An order isomorphism `p → q`, if one exists.
pub fn is_isomorphic(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_isomorphism(p, q, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

/// All isomorphisms `p → q`.
pub fn isomorphisms(p: &FinitePoset, q: &FinitePoset) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_isomorphism(p, q, &mut |m| {
        out.push(m.to_vec());
        true
    });
    out
}

pub fn automorphism_count(p: &FinitePoset) -> Result<u64, PosetError> {
    if p.n > MAX_AUT_VERTICES {
        return Err(PosetError::TooLarge {
            what: "automorphism counting",
            max: MAX_AUT_VERTICES,
            n: p.n,
        });
    }
    let mut count = 0u64;
    for_each_isomorphism(p, p, &mut |_| {
        count += 1;
        true
    });
    Ok(count)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(perm.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, out);
            if k.is_multiple_of(2) {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut perm, &mut out);
    out
}

/// The canonical form: the relabeling whose relation code is maximal, with
/// the code itself. Chains come out as `0 < 1 < … < n-1`.
pub fn canonical_form(p: &FinitePoset) -> (FinitePoset, u128) {
    let (code, perm) = permutations(p.n)
        .into_iter()
        .map(|perm| (p.relation_code(&perm), perm))
        .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)))
        .expect("at least one permutation");
    (p.relabel(&perm), code)
}

/// One representative per isomorphism class of posets on `n` points, in
/// canonical form, sorted by (comparable pairs, canonical code).
pub fn enumerate_posets(n: usize) -> Result<Vec<FinitePoset>, PosetError> {
    if n > MAX_CATALOG_VERTICES {
        return Err(PosetError::TooLarge {
            what: "poset catalog",
            max: MAX_CATALOG_VERTICES,
            n,
        });
    }
    // Every poset has a natural labeling (a linear extension), so it is
    // enough to scan relations contained in `<` on integers.
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut classes = std::collections::BTreeMap::new();
    for mask in 0u32..1 << slots.len() {
        let mut up = vec![0u64; n];
        for (i, &(a, b)) in slots.iter().enumerate() {
            if mask >> i & 1 == 1 {
                up[a] |= 1 << b;
            }
        }
        if !FinitePoset::is_transitively_closed_order(n, &up) {
            continue;
        }
        let p = FinitePoset { n, up };
        let (canon, code) = canonical_form(&p);
        classes
            .entry((canon.comparable_pairs(), code))
            .or_insert(canon);
    }
    Ok(classes.into_values().collect())
}

/// The poset `(S, ⪯)`: vertex `i` is the `i`-th word of `S` in lex order.
pub fn word_poset<'a, I>(words: I) -> (FinitePoset, Vec<Word>)
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut sorted: Vec<Word> = words.into_iter().cloned().collect();
    sorted.sort();
    sorted.dedup();
    let mut pairs = Vec::new();
    for (i, u) in sorted.iter().enumerate() {
        for (j, v) in sorted.iter().enumerate() {
            if precedes(u, v).is_some() {
                pairs.push((i, j));
            }
        }
    }
    let poset = FinitePoset::new(sorted.len(), &pairs).expect("⪯ is a partial order");
    (poset, sorted)
}
