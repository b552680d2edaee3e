//! Oracles and generators shared by the integration tests. Nothing here
//! calls into the enumerator or the distance code under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use wpolar_core::{CanonicalCode, ChemicalTree, Tree};

/// Decodes a Prüfer sequence over `0..n` into an edge list.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Canonical codes of every unlabeled chemical tree on `n` vertices, found
/// by running through all labeled trees. Feasible up to n = 9.
pub fn prufer_chemical_codes(n: usize) -> BTreeSet<CanonicalCode> {
    let mut codes = BTreeSet::new();
    if n <= 2 {
        let edges: Vec<(usize, usize)> = if n == 2 { vec![(0, 1)] } else { vec![] };
        codes.insert(Tree::from_edges(n, &edges).unwrap().canonical_form());
        return codes;
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut count = vec![0usize; n];
    count[0] = len;
    loop {
        // A label appearing c times has degree c + 1.
        if count.iter().all(|&c| c <= 3) {
            let edges = prufer_decode(n, &seq);
            codes.insert(Tree::from_edges(n, &edges).unwrap().canonical_form());
        }
        let mut i = 0;
        loop {
            if i == len {
                return codes;
            }
            count[seq[i]] -= 1;
            seq[i] += 1;
            if seq[i] == n {
                seq[i] = 0;
                count[0] += 1;
                i += 1;
            } else {
                count[seq[i]] += 1;
                break;
            }
        }
    }
}

/// Unordered pairs at distance exactly 3, by Floyd-Warshall.
pub fn distance_three_pairs(tree: &Tree) -> u64 {
    let n = tree.order();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for (u, v) in tree.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let mut pairs = 0;
    for i in 0..n {
        for j in i + 1..n {
            if d[i][j] == 3 {
                pairs += 1;
            }
        }
    }
    pairs
}

/// Random chemical tree: each new vertex attaches to an earlier vertex that
/// still has degree below 4.
pub fn grow(n: usize, seeds: &[u32]) -> ChemicalTree {
    let mut degree = vec![0usize; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| degree[u] < 4).collect();
        let u = open[seeds[v] as usize % open.len()];
        degree[u] += 1;
        degree[v] += 1;
        edges.push((u, v));
    }
    ChemicalTree::from_edges(n, &edges).unwrap()
}

pub fn arb_chemical_tree(min_n: usize, max_n: usize) -> impl Strategy<Value = ChemicalTree> {
    (min_n..=max_n)
        .prop_flat_map(|n| prop::collection::vec(any::<u32>(), n))
        .prop_map(|seeds| grow(seeds.len(), &seeds))
}

/// A tree together with a permutation of its vertex labels.
pub fn arb_relabeled(min_n: usize, max_n: usize) -> impl Strategy<Value = (ChemicalTree, Vec<usize>)> {
    arb_chemical_tree(min_n, max_n).prop_flat_map(|t| {
        let perm: Vec<usize> = (0..t.order()).collect();
        (Just(t), Just(perm).prop_shuffle())
    })
}

pub fn relabel(tree: &Tree, perm: &[usize]) -> ChemicalTree {
    let edges: Vec<(usize, usize)> = tree
        .edges()
        .map(|(u, v)| {
            let (a, b) = (perm[u], perm[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    ChemicalTree::from_edges(tree.order(), &edges).unwrap()
}
