//! Properties of the Devlin and triangle-free variants.

mod common;

use std::collections::BTreeSet;

use common::*;
use poset_diary::variants::{
    devlin_enumerate, devlin_validate, leaf_graph, tri_adjacent, tri_enumerate, tri_perp,
    tri_validate, BinaryWord, FiniteGraph,
};
use proptest::prelude::*;

fn bits(max: usize) -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), 0..=max)
}

/// Every prefix-antichain of binary words of length at most `depth`.
fn binary_antichains(depth: usize) -> Vec<Vec<Vec<bool>>> {
    fn below(prefix: Vec<bool>, depth: usize) -> Vec<Vec<Vec<bool>>> {
        let mut out = vec![Vec::new(), vec![prefix.clone()]];
        if prefix.len() < depth {
            let mut l = prefix.clone();
            l.push(false);
            let mut r = prefix;
            r.push(true);
            let right = below(r, depth);
            for a in below(l, depth) {
                for b in &right {
                    if !a.is_empty() || !b.is_empty() {
                        out.push(a.iter().chain(b).cloned().collect());
                    }
                }
            }
        }
        out
    }
    below(Vec::new(), depth)
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn perp_is_symmetric_and_adjacency_matches(u in bits(8), v in bits(8)) {
        let (uw, vw) = (BinaryWord::new(u.clone()), BinaryWord::new(v.clone()));
        prop_assert_eq!(tri_perp(&uw, &vw), tri_perp(&vw, &uw));
        if u.len() == v.len() {
            prop_assert!(tri_adjacent(&uw, &vw).is_err());
        } else {
            let adj = tri_adjacent(&uw, &vw).unwrap();
            prop_assert_eq!(adj, o_tri_adjacent(&u, &v));
            prop_assert_eq!(adj, tri_adjacent(&vw, &uw).unwrap());
            // Adjacent words with a 1 each below the shorter length are not ⊥.
            let (s, t) = if u.len() < v.len() { (&u, &v) } else { (&v, &u) };
            if adj && s.contains(&true) && t[..s.len()].contains(&true) {
                prop_assert!(!tri_perp(&uw, &vw));
            }
        }
    }
}

#[test]
fn devlin_paths_agree() {
    for (n, want) in [(1, 1), (2, 2), (3, 16), (4, 272)] {
        let listed: BTreeSet<Vec<Vec<bool>>> = devlin_enumerate(n)
            .unwrap()
            .iter()
            .map(|s| s.iter().map(|w| w.bits().to_vec()).collect())
            .collect();
        assert_eq!(listed, naive_devlin(n), "n = {n}");
        assert_eq!(listed.len(), want);
        for s in &listed {
            let words: Vec<BinaryWord> = s.iter().map(|b| BinaryWord::new(b.clone())).collect();
            assert_eq!(
                devlin_validate(&words).unwrap().len(),
                s.iter().map(Vec::len).max().unwrap()
            );
        }
    }
}

#[test]
fn validator_and_enumerator_agree() {
    let mut valid = 0;
    for s in binary_antichains(3) {
        let mut words: Vec<BinaryWord> = s.iter().map(|b| BinaryWord::new(b.clone())).collect();
        words.sort();
        if tri_validate(&words).is_err() {
            continue;
        }
        valid += 1;
        let h = leaf_graph(&words);
        assert!(h.find_triangle().is_none());
        assert!(tri_enumerate(&h, 3).unwrap().contains(&words), "{s:?}");
    }
    assert!(valid > 0);
    for name in ["K1", "K2", "empty:2", "empty:3", "path:3"] {
        let h = FiniteGraph::builtin(name).unwrap();
        for s in tri_enumerate(&h, 4).unwrap() {
            assert!(tri_validate(&s).is_ok());
            assert!(leaf_graph(&s).find_triangle().is_none());
            let k = s.len();
            let b: Vec<Vec<bool>> = s.iter().map(|w| w.bits().to_vec()).collect();
            let iso = permutations(k).into_iter().any(|p| {
                (0..k).all(|x| {
                    (0..k).all(|y| x == y || h.adjacent(x, y) == o_tri_adjacent(&b[p[x]], &b[p[y]]))
                })
            });
            assert!(iso, "{name}");
        }
    }
}
