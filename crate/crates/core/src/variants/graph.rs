//! Finite simple graphs for the triangle-free variant.

use std::fmt;

use thiserror::Error;

/// Largest graph accepted by the exhaustive isomorphism routines.
pub const MAX_GRAPH_VERTICES: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("the graph contains the triangle {0}, {1}, {2}")]
    Triangle(usize, usize, usize),
    #[error("unknown builtin graph {0:?}")]
    UnknownBuiltin(String),
    #[error("graphs are limited to {max} vertices, got {n}")]
    TooLarge { max: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGraph {
    n: usize,
    adj: Vec<u64>,
}

impl FiniteGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<FiniteGraph, GraphError> {
        if n > 64 {
            return Err(GraphError::TooLarge { max: 64, n });
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(FiniteGraph { n, adj })
    }

    /// `K1`, `K2`, `empty:n`, `path:n` or `cycle:n`.
    pub fn builtin(name: &str) -> Result<FiniteGraph, GraphError> {
        let unknown = || GraphError::UnknownBuiltin(name.to_string());
        match name {
            "K1" => return FiniteGraph::new(1, &[]),
            "K2" => return FiniteGraph::new(2, &[(0, 1)]),
            _ => {}
        }
        let (kind, n) = name.split_once(':').ok_or_else(unknown)?;
        let n: usize = n.parse().map_err(|_| unknown())?;
        let edges: Vec<(usize, usize)> = match kind {
            "empty" => Vec::new(),
            "path" => (1..n).map(|i| (i - 1, i)).collect(),
            "cycle" if n >= 3 => (0..n).map(|i| (i, (i + 1) % n)).collect(),
            _ => return Err(unknown()),
        };
        FiniteGraph::new(n, &edges)
    }

    /// First non-comment line `n`, then one `i - j` line per edge.
    pub fn parse(text: &str) -> Result<FiniteGraph, GraphError> {
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| GraphError::Parse { line: idx + 1, msg };
            match n {
                None => {
                    n = Some(
                        line.parse::<usize>()
                            .map_err(|_| err(format!("expected a vertex count, got {line:?}")))?,
                    )
                }
                Some(_) => {
                    let (a, b) = line
                        .split_once('-')
                        .ok_or_else(|| err(format!("expected `i - j`, got {line:?}")))?;
                    let a = a
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| err(format!("bad vertex {:?}", a.trim())))?;
                    let b = b
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| err(format!("bad vertex {:?}", b.trim())))?;
                    edges.push((a, b));
                }
            }
        }
        let n = n.ok_or(GraphError::Parse {
            line: 1,
            msg: "missing vertex count".into(),
        })?;
        FiniteGraph::new(n, &edges)
    }

    /// A builtin name or the file format.
    pub fn load(text: &str) -> Result<FiniteGraph, GraphError> {
        match FiniteGraph::builtin(text.trim()) {
            Ok(g) => Ok(g),
            Err(GraphError::UnknownBuiltin(_)) => FiniteGraph::parse(text),
            Err(e) => Err(e),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| {
                (a + 1..self.n)
                    .filter(move |&b| self.adjacent(a, b))
                    .map(move |b| (a, b))
            })
            .collect()
    }

    pub fn find_triangle(&self) -> Option<(usize, usize, usize)> {
        for (a, b) in self.edges() {
            let common = self.adj[a] & self.adj[b];
            if common != 0 {
                let mut t = [a, b, common.trailing_zeros() as usize];
                t.sort_unstable();
                return Some((t[0], t[1], t[2]));
            }
        }
        None
    }

    pub fn check_triangle_free(&self) -> Result<(), GraphError> {
        match self.find_triangle() {
            Some((a, b, c)) => Err(GraphError::Triangle(a, b, c)),
            None => Ok(()),
        }
    }

    fn degree(&self, a: usize) -> u32 {
        self.adj[a].count_ones()
    }

    /// Number of adjacency-preserving permutations.
    pub fn automorphism_count(&self) -> Result<u64, GraphError> {
        if self.n > MAX_GRAPH_VERTICES {
            return Err(GraphError::TooLarge {
                max: MAX_GRAPH_VERTICES,
                n: self.n,
            });
        }
        let mut count = 0;
        for_each_isomorphism(self, self, &mut |_| {
            count += 1;
            true
        });
        Ok(count)
    }
}

impl fmt::Display for FiniteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (a, b) in self.edges() {
            writeln!(f, "{a} - {b}")?;
        }
        Ok(())
    }
}

/// Backtracking over degree-compatible assignments; `f` returns `false` to
/// stop early.
fn for_each_isomorphism(g: &FiniteGraph, h: &FiniteGraph, f: &mut dyn FnMut(&[usize]) -> bool) {
    if g.n != h.n || g.edges().len() != h.edges().len() {
        return;
    }
    fn go(
        g: &FiniteGraph,
        h: &FiniteGraph,
        map: &mut Vec<usize>,
        used: u64,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let a = map.len();
        if a == g.n {
            return f(map);
        }
        for b in 0..h.n {
            if used >> b & 1 == 1 || g.degree(a) != h.degree(b) {
                continue;
            }
            if (0..a).all(|x| g.adjacent(x, a) == h.adjacent(map[x], b)) {
                map.push(b);
                let keep_going = go(g, h, map, used | 1 << b, f);
                map.pop();
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
    go(g, h, &mut Vec::with_capacity(g.n), 0, f);
}

/// A vertex bijection `g → h` preserving adjacency both ways, if any.
pub fn is_isomorphic_graph(g: &FiniteGraph, h: &FiniteGraph) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_isomorphism(g, h, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_builtins() {
        let g = FiniteGraph::parse("# an edge\n2\n0 - 1\n").unwrap();
        assert_eq!(g, FiniteGraph::builtin("K2").unwrap());
        assert!(matches!(
            FiniteGraph::parse("2\n0 < 1"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            FiniteGraph::parse("2\n0 - 0"),
            Err(GraphError::SelfLoop(0))
        ));
        assert_eq!(
            FiniteGraph::load("path:3").unwrap().edges(),
            vec![(0, 1), (1, 2)]
        );
        assert_eq!(FiniteGraph::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn triangles_and_isomorphism() {
        assert_eq!(
            FiniteGraph::builtin("cycle:3").unwrap().find_triangle(),
            Some((0, 1, 2))
        );
        assert!(FiniteGraph::builtin("cycle:4")
            .unwrap()
            .check_triangle_free()
            .is_ok());
        let p = FiniteGraph::new(3, &[(0, 2), (2, 1)]).unwrap();
        let map = is_isomorphic_graph(&FiniteGraph::builtin("path:3").unwrap(), &p).unwrap();
        assert_eq!(map[1], 2);
        assert!(is_isomorphic_graph(&FiniteGraph::builtin("empty:3").unwrap(), &p).is_none());
        assert_eq!(
            FiniteGraph::builtin("cycle:4")
                .unwrap()
                .automorphism_count(),
            Ok(8)
        );
        assert_eq!(
            FiniteGraph::builtin("K2").unwrap().automorphism_count(),
            Ok(2)
        );
    }
}
